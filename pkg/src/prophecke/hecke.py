"""The pro-p Iwahori-Hecke algebra over k.

H has k-basis tau_g indexed by pro-p Weyl group elements g.  Products
are computed from the two defining families of relations: tau_v tau_w =
tau_vw whenever lengths add, and, for the distinguished lift n_s of an
affine simple reflection s attached to the root alpha,

    tau_{n_s}^2 = -theta_s tau_{n_s} = -tau_{n_s} theta_s,
    theta_s = -|mu_alpha| sum_{t in alpha-check(F_q^x)} tau_t,

the characteristic-p degeneration (q = 0 in k) of the classical
quadratic relation.  The product recursion peels rank-one factors off
the left factor's canonical reduced word; independence of that choice is
property-tested, not assumed.

This module also carries the torus idempotents e_lambda and their
central orbit sums, the involution iota, the inversion anti-involution,
the trivial and sign characters, the length filtration, and the
classifier for characters of the affine subalgebra (twisted trivial,
twisted sign, supersingular).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import GroupMismatchError, TheoremViolationError
from .gf import FieldElt, FieldSpec
from .propweyl import ProPElt, ProPWeyl
from .rootdata import dot
from .weyl import ExtAffWeylElt


class HeckeElt:
    """Finitely supported k-linear combination of basis symbols tau_g."""

    __slots__ = ("algebra", "terms")

    def __init__(self, algebra: "HeckeAlgebra", terms: dict):
        self.algebra = algebra
        self.terms = {g: c for g, c in terms.items() if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def support(self):
        return set(self.terms)

    def coeff(self, g: ProPElt) -> FieldElt:
        return self.terms.get(g, self.algebra.field.zero())

    def __add__(self, other: "HeckeElt") -> "HeckeElt":
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            prev = out.get(g)
            out[g] = c if prev is None else prev + c
        return HeckeElt(self.algebra, out)

    def __sub__(self, other: "HeckeElt") -> "HeckeElt":
        return self + (-other)

    def __neg__(self) -> "HeckeElt":
        return HeckeElt(self.algebra, {g: -c for g, c in self.terms.items()})

    def scale(self, c) -> "HeckeElt":
        c = self.algebra._scalar(c)
        return HeckeElt(self.algebra, {g: c * d for g, d in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, HeckeElt):
            return self.algebra.mul(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other):
        return (
            isinstance(other, HeckeElt)
            and self.algebra is other.algebra
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _check(self, other):
        if other.algebra is not self.algebra:
            raise GroupMismatchError("elements of different Hecke algebras")

    def to_json(self):
        items = sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())
        return {
            "terms": [
                {"coeff": list(c.coeffs), "elt": g.to_json()} for g, c in items
            ]
        }

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = [
            f"{c!r}*tau[{g!r}]"
            for g, c in sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())
        ]
        return " + ".join(bits)


class HeckeAlgebra:
    """H for a fixed pro-p Weyl group and coefficient field.

    The field's q must equal the group's q: the residue size enters both
    the torus quotient and, reduced to k, the coefficients of the
    quadratic relations.
    """

    def __init__(self, group: ProPWeyl, field: FieldSpec, word_tie: str = "min"):
        if field.q != group.q:
            raise GroupMismatchError(
                f"field has q = {field.q} but the group was built with q = {group.q}"
            )
        self.group = group
        self.field = field
        self.word_tie = word_tie
        self._mul_cache: dict = {}
        self._iota_cache: dict = {}
        zq1 = field.zeta_q()
        self._zeta_pow = [field.one()]
        for _ in range(max(group.qm1 - 1, 0)):
            self._zeta_pow.append(self._zeta_pow[-1] * zq1)

    # -- scalars and element constructors ---------------------------------------

    def _scalar(self, c) -> FieldElt:
        if isinstance(c, FieldElt):
            if c.field is not self.field:
                raise GroupMismatchError("scalar from a different field")
            return c
        if isinstance(c, int):
            return self.field.from_int(c)
        raise TypeError(f"cannot use {c!r} as a scalar")

    def zero(self) -> HeckeElt:
        return HeckeElt(self, {})

    def elt(self, terms: dict) -> HeckeElt:
        return HeckeElt(self, {g: self._scalar(c) for g, c in terms.items()})

    def tau(self, x: ProPElt) -> HeckeElt:
        if x.group is not self.group:
            raise GroupMismatchError("group element from different group data")
        return HeckeElt(self, {x: self.field.one()})

    def one(self) -> HeckeElt:
        return self.tau(self.group.identity())

    def tau_w(self, w: ExtAffWeylElt) -> HeckeElt:
        return self.tau(self.group.lift_w(w))

    # -- structural generators -----------------------------------------------------

    def theta(self, s: int) -> HeckeElt:
        """The idempotent -|mu| sum of tau over the coroot image of the
        root underlying the s-th affine simple reflection."""
        A = self.group.weyl.s_aff[s]
        image, mu_size = self.group.coroot_image(A.root)
        c = self.field.from_int(-mu_size)
        return HeckeElt(self, {self.group.torus_elt(t): c for t in image})

    # -- multiplication ---------------------------------------------------------

    def _one_gen_mul(self, s: int, y: ProPElt) -> dict:
        """tau_{n_s} tau_y on basis elements: braid step on ascent,
        quadratic expansion |mu| sum_t tau_{t y} on descent."""
        g = self.group
        ns = g.lift_s(s)
        if (ns.w * y.w).length() == y.w.length() + 1:
            return {g.mul(ns, y): self.field.one()}
        A = g.weyl.s_aff[s]
        image, mu_size = g.coroot_image(A.root)
        c = self.field.from_int(mu_size)
        return {g.mul(g.torus_elt(t), y): c for t in image}

    def basis_mul(self, x: ProPElt, y: ProPElt) -> dict:
        key = (x, y)
        cached = self._mul_cache.get(key)
        if cached is not None:
            return cached
        g = self.group
        if x.w.length() == 0:
            result = {g.mul(x, y): self.field.one()}
        else:
            _, word = x.w.reduced_word(self.word_tie)
            s = word[-1]
            xp = g.mul(x, g.inv(g.lift_s(s)))
            result = {}
            for u, c in self._one_gen_mul(s, y).items():
                for v, d in self.basis_mul(xp, u).items():
                    cd = c * d
                    prev = result.get(v)
                    acc = cd if prev is None else prev + cd
                    if acc.is_zero():
                        result.pop(v, None)
                    else:
                        result[v] = acc
        self._mul_cache[key] = result
        return result

    def mul(self, x: HeckeElt, y: HeckeElt) -> HeckeElt:
        if x.algebra is not self or y.algebra is not self:
            raise GroupMismatchError("elements of different Hecke algebras")
        out: dict = {}
        for gx, cx in x.terms.items():
            for gy, cy in y.terms.items():
                c = cx * cy
                for u, d in self.basis_mul(gx, gy).items():
                    cd = c * d
                    prev = out.get(u)
                    acc = cd if prev is None else prev + cd
                    if acc.is_zero():
                        out.pop(u, None)
                    else:
                        out[u] = acc
        return HeckeElt(self, out)

    # -- torus characters and idempotents ----------------------------------------

    def torus_char_values(self, lam) -> "TorusCharacter":
        return TorusCharacter(self, tuple(e % max(self.group.qm1, 1) for e in lam))

    def torus_characters(self):
        from itertools import product as iproduct

        qm1 = self.group.qm1
        return [
            TorusCharacter(self, lam)
            for lam in iproduct(range(qm1), repeat=self.group.rank)
        ]

    def chi_lambda(self, lam, t) -> FieldElt:
        """Value of the torus character with exponent vector lam at t."""
        e = dot(lam, t) % max(self.group.qm1, 1)
        return self._zeta_pow[e]

    def e_lambda(self, lam) -> HeckeElt:
        """Torus idempotent attached to a character of T_q.

        Normalized by the inverse of |T_q| in k, which is (-1)^rank; for
        odd rank this is the classical minus sign in front of the sum.
        Needs F_q inside k, which FieldSpec guarantees via f | m."""
        g = self.group
        lam = tuple(e % max(g.qm1, 1) for e in lam)
        sign = self.field.from_int((-1) ** g.rank)
        terms = {}
        for t in g.torus_elements():
            tinv = tuple((-e) % g.qm1 for e in t)
            terms[g.torus_elt(t)] = sign * self.chi_lambda(lam, tinv)
        return HeckeElt(self, terms)

    def char_orbit(self, lam):
        """Orbit of a torus character exponent vector under the finite Weyl
        group (acting by lambda |-> lambda o w^{-1})."""
        g = self.group
        wg = g.weyl
        qm1 = max(g.qm1, 1)
        lam = tuple(e % qm1 for e in lam)
        seen = {lam}
        frontier = [lam]
        while frontier:
            nxt = []
            for l in frontier:
                for w0 in wg.gen_index:
                    Minv = wg.elements[wg.inv0[w0]]
                    img = tuple(
                        sum(Minv[i][j] * l[i] for i in range(g.rank)) % qm1
                        for j in range(g.rank)
                    )
                    if img not in seen:
                        seen.add(img)
                        nxt.append(img)
            frontier = nxt
        return sorted(seen)

    def conj_char(self, w: ExtAffWeylElt, lam):
        """Exponent vector of the conjugated character lambda o w^{-1}."""
        g = self.group
        qm1 = max(g.qm1, 1)
        Minv = g.weyl.elements[g.weyl.inv0[w.w0]]
        return tuple(
            sum(Minv[i][j] * lam[i] for i in range(g.rank)) % qm1
            for j in range(g.rank)
        )

    def e_gamma(self, lam) -> HeckeElt:
        out = self.zero()
        for l in self.char_orbit(lam):
            out = out + self.e_lambda(l)
        return out

    # -- involutions -----------------------------------------------------------

    def iota(self, x: HeckeElt) -> HeckeElt:
        """The involutive algebra automorphism fixing all length-zero basis
        elements and sending tau_{n_s} to -tau_{n_s} - theta_s."""
        out = self.zero()
        for g, c in x.terms.items():
            out = out + self._iota_basis(g).scale(c)
        return out

    def _iota_basis(self, g: ProPElt) -> HeckeElt:
        cached = self._iota_cache.get(g)
        if cached is not None:
            return cached
        grp = self.group
        _, word = g.w.reduced_word(self.word_tie)
        # peel the whole word off the right to find the length-zero prefix
        prefix = g
        lifts = [grp.lift_s(s) for s in word]
        for ns in reversed(lifts):
            prefix = grp.mul(prefix, grp.inv(ns))
        result = self.tau(prefix)
        for s, ns in zip(word, lifts):
            factor = self.tau(ns).scale(-1) - self.theta(s)
            result = self.mul(result, factor)
        self._iota_cache[g] = result
        return result

    def J(self, x: HeckeElt) -> HeckeElt:
        """The anti-involution tau_g |-> tau_{g^{-1}}."""
        return HeckeElt(self, {g.inv(): c for g, c in x.terms.items()})

    # -- characters of H ----------------------------------------------------------

    def chi_eval(self, which: str, x: HeckeElt) -> FieldElt:
        """Evaluate the trivial or sign character of H.

        On a length-l basis element the trivial character is 0 unless
        l = 0, and the sign character is (-1)^l; both send every
        length-zero tau to 1."""
        total = self.field.zero()
        if which == "triv":
            for g, c in x.terms.items():
                if g.w.length() == 0:
                    total = total + c
        elif which == "sign":
            minus_one = self.field.from_int(-1)
            for g, c in x.terms.items():
                total = total + c * (minus_one ** g.w.length())
        else:
            raise ValueError("which must be 'triv' or 'sign'")
        return total

    # -- filtration by length and graded eigencharacters -----------------------------

    def filtration_project(self, x: HeckeElt, n: int) -> HeckeElt:
        """Projection killing all terms of length < n."""
        return HeckeElt(
            self, {g: c for g, c in x.terms.items() if g.w.length() >= n}
        )

    def grade_part(self, x: HeckeElt, n: int) -> HeckeElt:
        return HeckeElt(
            self, {g: c for g, c in x.terms.items() if g.w.length() == n}
        )

    def graded_support_char(self, lam, w: ProPElt, side: str) -> "AffineCharacter":
        """Eigencharacter of the graded class of e_lambda tau_w (left side)
        or tau_w e_lambda (right side) in the length filtration.

        The character sends tau_t to lambda(t) and tau_{n_s} to -1 exactly
        when s shortens w on the given side and lambda is trivial on the
        coroot image of s, else to 0.  The claim is verified numerically
        against the actual graded action of every generator before the
        character is returned."""
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        g = self.group
        qm1 = max(g.qm1, 1)
        lam = tuple(e % qm1 for e in lam)
        m = w.w.length()
        descent_side = "left" if side == "left" else "right"
        descents = set(w.w.descents(descent_side))
        eps = []
        for i, A in enumerate(g.weyl.s_aff):
            trivial = self._lam_trivial_on_image(lam, A.root)
            eps.append(-1 if (i in descents and trivial) else 0)
        char = AffineCharacter(self, lam, tuple(eps))

        ew = self.mul(self.e_lambda(lam), self.tau(w)) if side == "left" else self.mul(
            self.tau(w), self.e_lambda(lam)
        )
        if ew.is_zero():
            raise TheoremViolationError("e_lambda tau_w vanished; basis claim broken")

        def act(h):
            return self.mul(h, ew) if side == "left" else self.mul(ew, h)

        for t in g.torus_elements():
            got = self.grade_part(act(self.tau(g.torus_elt(t))), m)
            want = ew.scale(self.chi_lambda(lam, t))
            if got != want:
                raise TheoremViolationError(
                    f"graded torus eigenvalue fails at t={t}, lam={lam}, w={w!r}"
                )
        for i in range(len(g.weyl.s_aff)):
            got = self.grade_part(act(self.tau(g.lift_s(i))), m)
            want = ew.scale(self.field.from_int(eps[i]))
            if got != want:
                raise TheoremViolationError(
                    f"graded reflection eigenvalue fails at s={i}, lam={lam}, w={w!r}"
                )
        return char

    def _lam_trivial_on_image(self, lam, root_index: int) -> bool:
        qm1 = max(self.group.qm1, 1)
        return dot(lam, self.group.rd.coroots[root_index]) % qm1 == 0

    @property
    def rd(self):
        return self.group.rd

    # -- classification of affine characters ----------------------------------------

    def classify_character(self, char: "AffineCharacter") -> "CharacterClass":
        """Per irreducible component: is the restriction the twisted sign
        character, the twisted trivial character, or neither; supersingular
        means neither, on every component."""
        char.validate()
        g = self.group
        rd = g.rd
        ncomp = rd.ncomp
        s_comp = [rd.component_of[A.root] for A in g.weyl.s_aff]
        twisted_sign = []
        twisted_trivial = []
        for comp in range(ncomp):
            idxs = [i for i, c in enumerate(s_comp) if c == comp]
            sign_c = all(char.eps[i] == -1 for i in idxs)
            triv_c = all(char.eps[i] == 0 for i in idxs) and all(
                self._lam_trivial_on_image(char.lam, j)
                for j in rd.simple
                if rd.component_of[j] == comp
            )
            twisted_sign.append(sign_c)
            twisted_trivial.append(triv_c)
        ss = all(
            not twisted_sign[c] and not twisted_trivial[c] for c in range(ncomp)
        )
        return CharacterClass(tuple(twisted_sign), tuple(twisted_trivial), ss)


class TorusCharacter:
    """Character of T_q with values in k, given by an exponent vector
    against the fixed order-(q-1) generator of k^x."""

    __slots__ = ("algebra", "lam")

    def __init__(self, algebra: HeckeAlgebra, lam: tuple):
        self.algebra = algebra
        self.lam = lam

    def __call__(self, t) -> FieldElt:
        return self.algebra.chi_lambda(self.lam, t)

    def is_trivial(self) -> bool:
        return not any(self.lam)

    def __repr__(self):
        return f"chi{list(self.lam)}"


class AffineCharacter:
    """Character datum of the affine subalgebra: a torus character plus a
    value in {0, -1} at each affine simple reflection."""

    __slots__ = ("algebra", "lam", "eps")

    def __init__(self, algebra: HeckeAlgebra, lam, eps):
        qm1 = max(algebra.group.qm1, 1)
        self.algebra = algebra
        self.lam = tuple(e % qm1 for e in lam)
        self.eps = tuple(eps)
        self.validate()

    def validate(self):
        g = self.algebra.group
        if len(self.eps) != len(g.weyl.s_aff):
            raise ValueError("eps must assign a value to every affine reflection")
        for i, v in enumerate(self.eps):
            if v not in (0, -1):
                raise ValueError("character values at tau_{n_s} must be 0 or -1")
            if v == -1 and not self.algebra._lam_trivial_on_image(
                self.lam, g.weyl.s_aff[i].root
            ):
                raise ValueError(
                    "eps = -1 forces the torus character to be trivial on the "
                    "coroot image (quadratic relation consistency)"
                )

    def to_json(self):
        return {"lambda": list(self.lam), "eps": list(self.eps)}

    def __eq__(self, other):
        return (
            isinstance(other, AffineCharacter)
            and self.algebra is other.algebra
            and self.lam == other.lam
            and self.eps == other.eps
        )

    def __hash__(self):
        return hash((self.lam, self.eps))

    def __repr__(self):
        return f"AffChar(lam={list(self.lam)}, eps={list(self.eps)})"


@dataclass(frozen=True)
class CharacterClass:
    twisted_sign: tuple
    twisted_trivial: tuple
    is_supersingular: bool

    def to_json(self):
        return {
            "twisted_sign": list(self.twisted_sign),
            "twisted_trivial": list(self.twisted_trivial),
            "supersingular": self.is_supersingular,
        }
