"""Hecke algebra: relations, idempotents, involutions, characters,
filtration eigencharacters."""

import random

import pytest

from prophecke.errors import GroupMismatchError, TheoremViolationError
from prophecke.hecke import AffineCharacter
from prophecke.propweyl import basis_elements

from conftest import get_context


def test_tau_unit_and_braid(sl2_q3):
    H, G = sl2_q3.hecke, sl2_q3.group
    x = H.tau(G.lift_s(0))
    assert H.one() * x == x == x * H.one()
    # lengths add: single-term product
    w = G.lift_w(G.weyl.translation((1,)))
    s = G.lift_s(0)
    if (s.w * w.w).length() == w.w.length() + 1:
        assert H.tau(s) * H.tau(w) == H.tau(G.mul(s, w))
    # torus basis elements invert
    t = G.torus_elt((1,))
    assert H.tau(t) * H.tau(G.inv(t)) == H.one()


def test_theta_examples(sl2_q3, pgl2_q3):
    H, G = sl2_q3.hecke, sl2_q3.group
    th = H.theta(0)
    image, mu = G.coroot_image(G.weyl.s_aff[0].root)
    assert mu == 1 and len(image) == 2
    two = H.field.from_int(-1 * mu)  # -1 = 2 in F_3
    assert th.terms == {G.torus_elt(t): two for t in image}
    assert th * th == th

    Hp = pgl2_q3.hecke
    # |mu| = 2, trivial image: theta = -2 tau_1 = tau_1
    assert Hp.theta(0) == Hp.one()
    assert Hp.theta(0) * Hp.theta(0) == Hp.theta(0)


def test_quadratic_relation_worked_example(sl2_q3):
    H, G = sl2_q3.hecke, sl2_q3.group
    ns = G.lift_s(0)
    sq = H.tau(ns) * H.tau(ns)
    tbar = G.torus_elt((1,))
    assert sq == H.tau(ns) + H.tau(G.mul(tbar, ns))
    # no n_s^2 coset: its coefficient q vanishes in characteristic p
    assert G.mul(ns, ns) not in sq.terms


@pytest.mark.parametrize(
    "name,p,f,m",
    [("SL2", 2, 1, 1), ("SL2", 3, 1, 1), ("SL2", 5, 1, 1), ("PGL2", 3, 1, 1),
     ("SL3", 3, 1, 1), ("Sp4", 3, 1, 1), ("SL2", 3, 2, 2)],
)
def test_quadratic_relations_everywhere(name, p, f, m):
    ctx = get_context(name, p, f, m)
    H, G = ctx.hecke, ctx.group
    for s in range(len(G.weyl.s_aff)):
        t, th = H.tau(G.lift_s(s)), H.theta(s)
        assert (t * t + th * t).is_zero()
        assert (t * t + t * th).is_zero()
        assert th * th == th


@pytest.mark.parametrize("p,f,m", [(2, 2, 2), (5, 1, 1), (3, 2, 2)])
def test_assoc_random_other_residue_sizes(p, f, m):
    # q = 4, 5, 9: seeded random triples at length <= 6
    from prophecke.verify import suite_assoc

    ctx = get_context("SL2", p, f, m)
    report = suite_assoc(ctx, max_len=6, samples=1000)
    assert report["failures"] == []
    assert report["cases"] >= 1000


def test_e_lambda_family(sl2_q3):
    H, G = sl2_q3.hecke, sl2_q3.group
    es = {c.lam: H.e_lambda(c.lam) for c in H.torus_characters()}
    total = H.zero()
    for e in es.values():
        total = total + e
    assert total == H.one()
    for la, ea in es.items():
        for lb, eb in es.items():
            assert ea * eb == (ea if la == lb else H.zero())
    # eigenvalue rule on torus elements
    for la, e in es.items():
        for t in G.torus_elements():
            tt = H.tau(G.torus_elt(t))
            val = H.chi_lambda(la, t)
            assert e * tt == e.scale(val) == tt * e
    # theta rule
    for la, e in es.items():
        trivial = H._lam_trivial_on_image(la, G.weyl.s_aff[0].root)
        assert e * H.theta(0) == (e if trivial else H.zero())


def test_conjugation_rule(sl3_q3):
    H, G = sl3_q3.hecke, sl3_q3.group
    lams = [c.lam for c in H.torus_characters()]
    for w in G.weyl.elements_up_to_length(2):
        tw = H.tau(G.lift_w(w))
        for la in lams:
            assert tw * H.e_lambda(la) == H.e_lambda(H.conj_char(w, la)) * tw


def test_e_gamma_central(sl3_q3):
    H, G = sl3_q3.hecke, sl3_q3.group
    gens = [H.tau(G.lift_s(s)) for s in range(len(G.weyl.s_aff))]
    gens += [H.tau(b) for b in basis_elements(G, 2)[:10]]
    for la in [(0, 0), (1, 0), (1, 1)]:
        eg = H.e_gamma(la)
        for x in gens:
            assert eg * x == x * eg


def test_iota(sl2_q3):
    H, G = sl2_q3.hecke, sl2_q3.group
    t = H.tau(G.torus_elt((1,)))
    assert H.iota(t) == t
    ns = H.tau(G.lift_s(0))
    assert H.iota(ns) == ns.scale(-1) - H.theta(0)
    assert H.iota(H.iota(ns)) == ns
    rng = random.Random(3)
    els = basis_elements(G, 3)
    for _ in range(50):
        x, y = H.tau(rng.choice(els)), H.tau(rng.choice(els))
        assert H.iota(x * y) == H.iota(x) * H.iota(y)


def test_J(sl2_q3):
    H, G = sl2_q3.hecke, sl2_q3.group
    assert H.J(H.one()) == H.one()
    ns = G.lift_s(0)
    assert H.J(H.tau(ns)) == H.tau(G.inv(ns))
    assert H.J(H.tau(ns)) == H.tau(G.mul(G.torus_elt((1,)), ns))
    rng = random.Random(4)
    els = basis_elements(G, 3)
    for _ in range(50):
        x, y = H.tau(rng.choice(els)), H.tau(rng.choice(els))
        assert H.J(x * y) == H.J(y) * H.J(x)
        assert H.J(H.J(x)) == x
        assert H.iota(H.J(x)) == H.J(H.iota(x))


def test_characters(sl2_q3):
    H, G = sl2_q3.hecke, sl2_q3.group
    one = H.field.one()
    for w in G.weyl.elements_up_to_length(4):
        x = H.tau(G.lift_w(w))
        if w.length() > 0:
            assert H.chi_eval("triv", x).is_zero()
        else:
            assert H.chi_eval("triv", x) == one
    assert H.chi_eval("sign", H.tau(G.lift_s(0))) == H.field.from_int(-1)
    e1 = H.e_lambda((0,))
    assert H.chi_eval("triv", e1) == one
    assert H.chi_eval("sign", e1) == one
    # multiplicativity, sampled
    rng = random.Random(5)
    els = basis_elements(G, 4)
    for _ in range(80):
        x, y = H.tau(rng.choice(els)), H.tau(rng.choice(els))
        for which in ("triv", "sign"):
            assert H.chi_eval(which, x * y) == H.chi_eval(which, x) * H.chi_eval(
                which, y
            )
    for a in els:
        x = H.tau(a)
        assert H.chi_eval("sign", x) == H.chi_eval("triv", H.iota(x))


def test_classify_character(sl2_q3):
    H = sl2_q3.hecke
    triv = H.classify_character(AffineCharacter(H, (0,), (0, 0)))
    assert triv.twisted_trivial == (True,) and not triv.is_supersingular
    sign = H.classify_character(AffineCharacter(H, (0,), (-1, -1)))
    assert sign.twisted_sign == (True,) and not sign.is_supersingular
    ss = H.classify_character(AffineCharacter(H, (1,), (0, 0)))
    assert ss.is_supersingular


def test_affine_character_invariant():
    H = get_context("SL2", 3).hecke
    # eps = -1 with lambda nontrivial on the coroot image is inconsistent
    with pytest.raises(ValueError):
        AffineCharacter(H, (1,), (-1, 0))


def test_classify_per_component():
    ctx = get_context("SL2xSL2", 3)
    H = ctx.hecke
    # sign on the first factor, trivial on the second: not supersingular
    cls = H.classify_character(AffineCharacter(H, (0, 0), (-1, 0, -1, 0)))
    assert cls.twisted_sign == (True, False)
    assert cls.twisted_trivial == (False, True)
    assert not cls.is_supersingular
    # nontrivial torus character on both factors, eps = 0: supersingular
    cls2 = H.classify_character(AffineCharacter(H, (1, 1), (0, 0, 0, 0)))
    assert cls2.is_supersingular


def test_filtration_project(sl2_q3):
    H, G = sl2_q3.hecke, sl2_q3.group
    x = H.one() + H.tau(G.lift_s(0)) + H.tau(G.lift_w(G.weyl.translation((1,))))
    assert set(g.w.length() for g in H.filtration_project(x, 1).terms) == {1, 2}
    assert set(g.w.length() for g in H.filtration_project(x, 2).terms) == {2}
    assert H.filtration_project(x, 3).is_zero()


def test_graded_support_char_examples(sl2_q3):
    H, G = sl2_q3.hecke, sl2_q3.group
    s0 = G.lift_s(0)
    # trivial character, length 1: eps = -1 exactly at the descent
    ch = H.graded_support_char((0,), s0, "left")
    assert ch.eps == (-1, 0)
    # nontrivial character: no -1 anywhere (image nontrivial at q=3)
    ch2 = H.graded_support_char((1,), s0, "left")
    assert ch2.eps == (0, 0)
    # grade 0 with nontrivial character: torus values lambda, eps = 0
    ch3 = H.graded_support_char((1,), G.identity(), "right")
    assert ch3.eps == (0, 0) and ch3.lam == (1,)
    for ch_ in (ch, ch2, ch3):
        assert H.classify_character(ch_).is_supersingular


def test_graded_support_char_sides_mirror(sl3_q3):
    H, G = sl3_q3.hecke, sl3_q3.group
    for w in G.weyl.elements_of_length(2):
        lift = G.lift_w(w)
        chl = H.graded_support_char((0, 0), lift, "left")
        chr_ = H.graded_support_char((0, 0), lift, "right")
        assert [i for i, e in enumerate(chl.eps) if e == -1] == w.descents("left")
        assert [i for i, e in enumerate(chr_.eps) if e == -1] == w.descents("right")


def test_support_containment_and_length_bounds(sl2_q3):
    from prophecke import cosets

    H, G = sl2_q3.hecke, sl2_q3.group
    basis = basis_elements(G, 3)
    for v in basis:
        for w in basis:
            prod = H.basis_mul(v, w)
            sup = cosets.support_mul(v, w)
            assert set(prod).issubset(sup.classes)
            for u in prod:
                assert abs(w.length() - v.length()) <= u.length()
                assert u.length() <= v.length() + w.length()


def test_algebra_mismatch_rejected(sl2_q3, sl3_q3):
    with pytest.raises(GroupMismatchError):
        sl2_q3.hecke.mul(sl2_q3.hecke.one(), sl3_q3.hecke.one())
    with pytest.raises(GroupMismatchError):
        sl2_q3.hecke.tau(sl3_q3.group.identity())


def test_field_group_q_mismatch():
    from prophecke.gf import FieldSpec
    from prophecke.hecke import HeckeAlgebra

    G = get_context("SL2", 3).group
    with pytest.raises(GroupMismatchError):
        HeckeAlgebra(G, FieldSpec(5))
