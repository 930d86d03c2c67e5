"""The pro-p Weyl group: the extension of the extended affine Weyl group
W by the finite torus T_q = X_* (x) F_q^x, with exact multiplication.

Torus elements are exponent vectors in (Z/(q-1))^r with respect to a
fixed generator of F_q^x (plain tuples).  An element of the extension is
a pair (t, w) in normal form

    t . n0(w0) . mu(pi^{-1})        for w = w0 . t_mu,

where n0 is the section of the finite Weyl group built from the standard
rank-one lifts n_alpha along canonical reduced words, and cocharacters
are lifted through mu |-> mu(pi^{-1}), which commutes with T_q and is
normalized so that it projects to the translation by mu.  In these
coordinates multiplication closes with a single torus cocycle on finite
parts:

    (t, (u0,l)) (t', (v0,m)) = (t + u0(t') + c0(u0,v0), (u0,l)(v0,m))

and c0 is computed once from the defining relations of the rank-one
lifts: conjugation n t n^{-1} = s(t), the braid relations, and
n_alpha^2 = alpha-check(-1).

The distinguished lift of the reflection at an affine root (alpha, h) is
the cocharacter lift of h alpha-check times a conjugation-built lift of
the finite reflection at alpha.  When alpha is (minus) a simple root the
torus part vanishes; in higher rank the affine generator attached to the
lowest root picks up a 2-torsion torus correction.  Construction
self-checks that every such lift squares to alpha-check(-1) and
conjugates the torus by the underlying reflection; those two identities,
not the particular coordinates, are what the algebra relations consume.
"""

from __future__ import annotations

from .errors import DataIntegrityError, GroupMismatchError
from .rootdata import AffineRoot, dot
from .weyl import ExtAffWeylElt, WeylGroup, _mat_vec


class ProPWeyl:
    """Group data for the pro-p Weyl group over a fixed residue size q."""

    def __init__(self, weyl: WeylGroup, q: int):
        if q < 2:
            raise ValueError("q must be a prime power >= 2")
        self.weyl = weyl
        self.rd = weyl.rd
        self.rank = weyl.rank
        self.q = q
        self.qm1 = q - 1
        # exponent of -1 in F_q^x (0 when q is even, since then -1 = 1)
        self.neg_one_exp = (q - 1) // 2 if q % 2 == 1 else 0
        self.zero_t = (0,) * self.rank
        self._images = {}  # root index -> (tuple of torus tuples, mu_size)
        self._cocycle = self._build_cocycle()
        self._lift_cache = {}
        self._mrep_cache = {}
        self._aff_lifts = [
            self.lift_affine_reflection(A) for A in self.weyl.s_aff
        ]
        self.section_self_check()

    # -- torus helpers -----------------------------------------------------------

    def torus(self, exps) -> tuple:
        exps = tuple(e % self.qm1 for e in exps)
        if len(exps) != self.rank:
            raise ValueError(f"torus vector must have length {self.rank}")
        return exps

    def torus_elements(self):
        from itertools import product as iproduct

        return list(iproduct(range(self.qm1), repeat=self.rank))

    def torus_action(self, w, t) -> tuple:
        """Finite-part action on T_q; translations act trivially."""
        w0 = w.w0 if isinstance(w, ExtAffWeylElt) else w
        M = self.weyl.elements[w0]
        return tuple(e % self.qm1 for e in _mat_vec(M, t))

    def coroot_torus(self, root_index: int, e: int = 1) -> tuple:
        ac = self.rd.coroots[root_index]
        return tuple((e * c) % self.qm1 for c in ac)

    def coroot_image(self, root_index: int):
        """The subgroup alpha-check(F_q^x) of T_q together with the size of
        the kernel of alpha-check on F_q^x, counted directly."""
        cached = self._images.get(root_index)
        if cached is not None:
            return cached
        seen = []
        mu_size = 0
        for e in range(self.qm1):
            t = self.coroot_torus(root_index, e)
            if not any(t):
                mu_size += 1
            if t not in seen:
                seen.append(t)
        if mu_size not in (1, 2):
            raise DataIntegrityError(
                f"coroot kernel has size {mu_size}; a reduced datum allows only 1 or 2"
            )
        result = (tuple(seen), mu_size)
        self._images[root_index] = result
        return result

    # -- the finite cocycle ---------------------------------------------------------

    def _build_cocycle(self):
        """c0[u][v] = torus part of n0(u) n0(v) relative to n0(uv), computed
        by appending v's canonical word one rank-one lift at a time; each
        descent contributes the conjugate of n_alpha^2 = alpha-check(-1)."""
        wg = self.weyl
        rd = self.rd
        order = wg.order
        e_neg = self.neg_one_exp
        pos = set(rd.positive_roots())
        table = [[None] * order for _ in range(order)]
        for u in range(order):
            for v in range(order):
                t = self.zero_t
                cur = u
                for gi in wg.words0[v]:
                    root = rd.simple[gi]
                    descended = wg.root_perm[cur][root] not in pos
                    cur = wg.mult[cur][wg.gen_index[gi]]
                    if descended:
                        corr = self.coroot_torus(root, e_neg)
                        t = self._t_add(t, self.torus_action(cur, corr))
                table[u][v] = t
                assert cur == wg.mult[u][v]
        return table

    def _t_add(self, a, b):
        return tuple((x + y) % self.qm1 for x, y in zip(a, b))

    def _t_neg(self, a):
        return tuple((-x) % self.qm1 for x in a)

    # -- elements -----------------------------------------------------------------

    def elt(self, t, w: ExtAffWeylElt) -> "ProPElt":
        if w.group is not self.weyl:
            raise GroupMismatchError("Weyl element from a different group")
        return ProPElt(self, self.torus(t), w)

    def identity(self) -> "ProPElt":
        return ProPElt(self, self.zero_t, self.weyl.identity())

    def torus_elt(self, t) -> "ProPElt":
        return ProPElt(self, self.torus(t), self.weyl.identity())

    def reflection_lift(self, root_index: int) -> "ProPElt":
        """Canonical lift of the finite reflection at a root, built from the
        simple rank-one lifts by conjugation down the height recursion.

        For a simple root this is (0, s_alpha).  In general the element
        squares exactly to alpha-check(-1) and is pinned modulo the coroot
        image of alpha, which is all the in-scope relations see."""
        cached = self._mrep_cache.get(root_index)
        if cached is not None:
            return cached
        rd = self.rd
        if not rd.is_positive_root(root_index):
            result = self.reflection_lift(rd.neg_index(root_index))
        elif root_index in rd.simple:
            result = ProPElt(
                self, self.zero_t, self.weyl.affine_reflection(AffineRoot(root_index, 0))
            )
        else:
            alpha = rd.roots[root_index]
            # positive non-simple root: some simple pairs positively, and
            # reflecting there strictly drops the height
            j = next(i for i in rd.simple if dot(rd.coroots[i], alpha) > 0)
            beta_vec = tuple(
                a - dot(rd.coroots[j], alpha) * b
                for a, b in zip(alpha, rd.roots[j])
            )
            beta = rd.root_index(beta_vec)
            nj = ProPElt(
                self, self.zero_t, self.weyl.affine_reflection(AffineRoot(j, 0))
            )
            result = self.mul(self.mul(nj, self.reflection_lift(beta)), self.inv(nj))
        self._mrep_cache[root_index] = result
        return result

    def lift_affine_reflection(self, A: AffineRoot) -> "ProPElt":
        """Lift of the reflection at the affine root (alpha, h): the
        cocharacter lift of h alpha-check times the finite reflection lift."""
        ac = self.rd.coroots[A.root]
        trans = ProPElt(
            self,
            self.zero_t,
            self.weyl.translation(tuple(-A.h * c for c in ac)),
        )
        return self.mul(trans, self.reflection_lift(A.root))

    def lift_s(self, i: int) -> "ProPElt":
        """Lift of the i-th affine simple reflection (indexed along pi_aff)."""
        return self._aff_lifts[i]

    def lift_omega(self, w: ExtAffWeylElt) -> "ProPElt":
        if w.length() != 0:
            raise ValueError("lift_omega expects a length-zero element")
        return ProPElt(self, self.zero_t, w)

    def lift_w(self, w: ExtAffWeylElt) -> "ProPElt":
        """Section along the canonical reduced word: the lift of the
        length-zero prefix times the rank-one lifts of the word letters.
        The torus part of the result records the accumulated n_s^2
        corrections."""
        cached = self._lift_cache.get(w)
        if cached is None:
            omega, word = w.reduced_word()
            cached = self.lift_omega(omega)
            for i in word:
                cached = self.mul(cached, self.lift_s(i))
            self._lift_cache[w] = cached
        return cached

    # -- group law ---------------------------------------------------------------

    def mul(self, x: "ProPElt", y: "ProPElt") -> "ProPElt":
        if x.group is not self or y.group is not self:
            raise GroupMismatchError("pro-p elements from different groups")
        t = self._t_add(
            self._t_add(x.t, self.torus_action(x.w.w0, y.t)),
            self._cocycle[x.w.w0][y.w.w0],
        )
        return ProPElt(self, t, x.w * y.w)

    def inv(self, x: "ProPElt") -> "ProPElt":
        w0 = x.w.w0
        w0inv = self.weyl.inv0[w0]
        t = self._t_neg(
            self.torus_action(
                w0inv, self._t_add(x.t, self._cocycle[w0][w0inv])
            )
        )
        return ProPElt(self, t, x.w.inv())

    def length(self, x: "ProPElt") -> int:
        return x.w.length()

    # -- construction-time verification ----------------------------------------------

    def section_self_check(self):
        """The affine simple reflection lifts must square to alpha-check(-1)
        and conjugate the torus by the underlying reflection; this pins the
        section used for the normal form up to coroot-image translates,
        which is exactly the ambiguity the relations tolerate."""
        for i, A in enumerate(self.weyl.s_aff):
            ns = self.lift_s(i)
            if ns.w != self.weyl.aff_gen(i):
                raise AssertionError("affine reflection lift projects wrongly")
            sq = self.mul(ns, ns)
            expected = self.torus_elt(self.coroot_torus(A.root, self.neg_one_exp))
            if sq != expected:
                raise AssertionError("n_s^2 != alpha-check(-1) in the model")
            for t in ([self.zero_t] + [self.coroot_torus(j) for j in self.rd.simple]):
                lhs = self.mul(self.mul(ns, self.torus_elt(t)), self.inv(ns))
                rhs = self.torus_elt(self.torus_action(ns.w.w0, t))
                if lhs != rhs:
                    raise AssertionError("torus conjugation relation fails")

    def __repr__(self):
        tag = self.rd.name or f"rank{self.rank}"
        return f"ProPWeyl({tag}, q={self.q})"


class ProPElt:
    """Normal-form element t . n(w) of the pro-p Weyl group."""

    __slots__ = ("group", "t", "w", "_hash")

    def __init__(self, group: ProPWeyl, t: tuple, w: ExtAffWeylElt):
        self.group = group
        self.t = t
        self.w = w
        self._hash = hash((t, w.w0, w.mu))

    def __eq__(self, other):
        return (
            isinstance(other, ProPElt)
            and self.group is other.group
            and self.t == other.t
            and self.w0 == other.w0
            and self.mu == other.mu
        )

    def __hash__(self):
        return self._hash

    @property
    def w0(self):
        return self.w.w0

    @property
    def mu(self):
        return self.w.mu

    def __mul__(self, other):
        return self.group.mul(self, other)

    def inv(self):
        return self.group.inv(self)

    def length(self) -> int:
        return self.w.length()

    def is_identity(self) -> bool:
        return not any(self.t) and self.w.is_identity()

    def is_affine(self) -> bool:
        """Whether tau of this element lies in the affine subalgebra; the
        torus sits inside it, so only the Weyl part matters."""
        return self.w.is_affine()

    def sort_key(self):
        return (self.w.length(), self.w.w0, self.w.mu, self.t)

    def to_json(self):
        return {"torus": list(self.t), "w": self.w.to_json()}

    @classmethod
    def from_json(cls, group: ProPWeyl, data) -> "ProPElt":
        w = ExtAffWeylElt.from_json(group.weyl, data["w"])
        return group.elt(data.get("torus", group.zero_t), w)

    def __repr__(self):
        return f"g[t={list(self.t)}, {self.w!r}]"


# -- module-level wrappers matching the operation names -------------------------------


def torus_action(w: ExtAffWeylElt, t, group: ProPWeyl) -> tuple:
    return group.torus_action(w, t)


def mul(x: ProPElt, y: ProPElt) -> ProPElt:
    return x * y


def inv(x: ProPElt) -> ProPElt:
    return x.inv()


def coroot_image(group: ProPWeyl, root_index: int):
    return group.coroot_image(root_index)


def lift_s(group: ProPWeyl, i: int) -> ProPElt:
    return group.lift_s(i)


def lift_w(group: ProPWeyl, w: ExtAffWeylElt) -> ProPElt:
    return group.lift_w(w)


def basis_elements(group: ProPWeyl, max_len: int, omega_window: int = 2):
    """All (t, w) with length(w) <= max_len, in a canonical order."""
    ws = group.weyl.elements_up_to_length(max_len, omega_window)
    out = [
        ProPElt(group, t, w)
        for w in ws
        for t in group.torus_elements()
    ]
    out.sort(key=ProPElt.sort_key)
    return out
