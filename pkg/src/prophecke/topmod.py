"""The top dual module of H: the bimodule spanned by the dual basis
phi_g of tau_g, with the explicit generator actions

    phi_w . tau_omega = phi_{w omega},          tau_omega . phi_w = phi_{omega w},
    phi_w . tau_{n_s} = 0                                 if s lengthens w,
    phi_w . tau_{n_s} = phi_{w s} + |mu| sum_t phi_{w t}  if s shortens w,

(and mirrored on the left), the coordinate-sum trace whose kernel
complements the one-dimensional trivial line when the length-zero
subgroup is finite of invertible order, the inversion twist, the duality
pairing against H, and the supersingularity audit of the trace kernel
driven by the graded eigencharacters of the length filtration.
"""

from __future__ import annotations

from .errors import (
    DecompositionUnavailableError,
    GroupMismatchError,
    TheoremViolationError,
)
from .gf import FieldElt
from .hecke import HeckeAlgebra, HeckeElt
from .propweyl import ProPElt


class TopElt:
    """Finitely supported k-linear combination of basis symbols phi_g."""

    __slots__ = ("module", "terms")

    def __init__(self, module: "TopModule", terms: dict):
        self.module = module
        self.terms = {g: c for g, c in terms.items() if not c.is_zero()}

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, g: ProPElt) -> FieldElt:
        return self.terms.get(g, self.module.field.zero())

    def __add__(self, other: "TopElt") -> "TopElt":
        self._check(other)
        out = dict(self.terms)
        for g, c in other.terms.items():
            prev = out.get(g)
            out[g] = c if prev is None else prev + c
        return TopElt(self.module, out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return TopElt(self.module, {g: -c for g, c in self.terms.items()})

    def scale(self, c) -> "TopElt":
        c = self.module.hecke._scalar(c)
        return TopElt(self.module, {g: c * d for g, d in self.terms.items()})

    def __eq__(self, other):
        return (
            isinstance(other, TopElt)
            and self.module is other.module
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def _check(self, other):
        if other.module is not self.module:
            raise GroupMismatchError("elements of different top modules")

    def to_json(self):
        items = sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())
        return {
            "basis": "phi",
            "terms": [
                {"coeff": list(c.coeffs), "elt": g.to_json()} for g, c in items
            ],
        }

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = [
            f"{c!r}*phi[{g!r}]"
            for g, c in sorted(self.terms.items(), key=lambda kv: kv[0].sort_key())
        ]
        return " + ".join(bits)


class TopModule:
    """H-bimodule structure on the span of the phi basis."""

    def __init__(self, algebra: HeckeAlgebra):
        self.hecke = algebra
        self.group = algebra.group
        self.field = algebra.field
        self._act_cache = {}
        self._triv_line = None

    def phi(self, x: ProPElt) -> TopElt:
        if x.group is not self.group:
            raise GroupMismatchError("group element from different group data")
        return TopElt(self, {x: self.field.one()})

    def zero(self) -> TopElt:
        return TopElt(self, {})

    def elt(self, terms: dict) -> TopElt:
        return TopElt(self, {g: self.hecke._scalar(c) for g, c in terms.items()})

    # -- generator actions -------------------------------------------------------

    def _apply_len0(self, y: ProPElt, terms: dict, side: str) -> dict:
        g = self.group
        if side == "left":
            return {g.mul(y, u): c for u, c in terms.items()}
        return {g.mul(u, y): c for u, c in terms.items()}

    def _apply_gen(self, s: int, terms: dict, side: str) -> dict:
        """One rank-one generator acting on a phi-combination: descent
        branches into the reflection translate plus the coroot-image
        translates; ascent annihilates."""
        g = self.group
        ns = g.lift_s(s)
        A = g.weyl.s_aff[s]
        image, mu_size = g.coroot_image(A.root)
        mu_c = self.field.from_int(mu_size)
        out: dict = {}

        def add(key, val):
            prev = out.get(key)
            acc = val if prev is None else prev + val
            if acc.is_zero():
                out.pop(key, None)
            else:
                out[key] = acc

        for u, c in terms.items():
            lu = u.w.length()
            if side == "left":
                moved = g.mul(ns, u)
            else:
                moved = g.mul(u, ns)
            if moved.w.length() == lu + 1:
                continue
            add(moved, c)
            cm = c * mu_c
            for t in image:
                tt = g.torus_elt(t)
                key = g.mul(tt, u) if side == "left" else g.mul(u, tt)
                add(key, cm)
        return out

    def _act_basis(self, y: ProPElt, u: ProPElt, side: str) -> dict:
        key = (y, u, side)
        cached = self._act_cache.get(key)
        if cached is not None:
            return cached
        g = self.group
        _, word = y.w.reduced_word(self.hecke.word_tie)
        lifts = [g.lift_s(s) for s in word]
        prefix = y
        for ns in reversed(lifts):
            prefix = g.mul(prefix, g.inv(ns))
        terms = {u: self.field.one()}
        if side == "left":
            # tau_y = tau_prefix tau_{s_1} ... tau_{s_l}: innermost factor first
            for s in reversed(word):
                terms = self._apply_gen(s, terms, "left")
                if not terms:
                    break
            if terms:
                terms = self._apply_len0(prefix, terms, "left")
        else:
            terms = self._apply_len0(prefix, terms, "right")
            for s in word:
                terms = self._apply_gen(s, terms, "right")
                if not terms:
                    break
        self._act_cache[key] = terms
        return terms

    def act(self, tau: HeckeElt, x: TopElt, side: str) -> TopElt:
        """Bilinear extension of the generator formulas along canonical
        reduced words of each Hecke basis element."""
        if side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        if tau.algebra is not self.hecke:
            raise GroupMismatchError("Hecke element from a different algebra")
        if x.module is not self:
            raise GroupMismatchError("top element from a different module")
        out: dict = {}
        for y, cy in tau.terms.items():
            for u, cu in x.terms.items():
                c = cy * cu
                for v, d in self._act_basis(y, u, side).items():
                    cd = c * d
                    prev = out.get(v)
                    acc = cd if prev is None else prev + cd
                    if acc.is_zero():
                        out.pop(v, None)
                    else:
                        out[v] = acc
        return TopElt(self, out)

    # -- dualities ----------------------------------------------------------------

    def J_top(self, x: TopElt) -> TopElt:
        """Inversion relabeling phi_g |-> phi_{g^{-1}}."""
        return TopElt(self, {g.inv(): c for g, c in x.terms.items()})

    def pairing(self, x: TopElt, h: HeckeElt) -> FieldElt:
        """Dual-basis pairing sum_g x_g h_g."""
        total = self.field.zero()
        small, big = (
            (x.terms, h.terms) if len(x.terms) <= len(h.terms) else (h.terms, x.terms)
        )
        for g, c in small.items():
            d = big.get(g)
            if d is not None:
                total = total + c * d
        return total

    def S_d(self, x: TopElt) -> FieldElt:
        """Coordinate-sum trace; both H-actions push through it by the
        trivial character."""
        total = self.field.zero()
        for c in x.terms.values():
            total = total + c
        return total

    # -- the trivial line and its complement -----------------------------------------

    def omega_tilde(self):
        """All length-zero pro-p elements (finite Omega only)."""
        om = self.group.weyl.omega()
        if not om.finite:
            raise DecompositionUnavailableError("Omega is infinite")
        g = self.group
        return [
            g.elt(t, w) for w in om.elements for t in g.torus_elements()
        ]

    def triv_line(self) -> TopElt:
        if self._triv_line is None:
            terms = {x: self.field.one() for x in self.omega_tilde()}
            self._triv_line = TopElt(self, terms)
        return self._triv_line

    def decompose(self, x: TopElt):
        """Split x = triv + kernel along the trace: triv is the multiple of
        the sum of phi over length-zero elements carrying the trivial
        character, and the kernel part has vanishing trace.  Available only
        when Omega is finite and the count of length-zero elements is
        nonzero in k, i.e. p does not divide |Omega|."""
        line = self.triv_line()
        c = self.S_d(line)
        if c.is_zero():
            raise DecompositionUnavailableError(
                "|Omega| is divisible by p; no splitting over k"
            )
        triv = line.scale(self.S_d(x) / c)
        return triv, x - triv

    # -- supersingularity audit -------------------------------------------------------

    def audit_supersingular_kernel(self, max_len: int) -> "AuditReport":
        """For every grade 1..max_len, every torus character, and every
        length-m class (plus grade 0 with nontrivial characters), verify
        the graded eigencharacter on both sides and classify it; every
        verdict must be supersingular for the report to pass.

        Requires a semisimple simply connected group with irreducible root
        system, where the trace kernel is exhausted by these classes."""
        g = self.group
        rd = g.rd
        om = g.weyl.omega()
        if rd.ncomp != 1 or not om.finite or om.order != 1:
            raise ValueError(
                "audit requires a simply connected group with irreducible root system"
            )
        H = self.hecke
        entries = []
        failures = []
        chars = [c.lam for c in H.torus_characters()]
        for m in range(0, max_len + 1):
            ws = g.weyl.elements_of_length(m)
            for w in ws:
                lift = g.lift_w(w)
                for lam in chars:
                    if m == 0 and not any(lam):
                        continue  # the trivial-character line, split off separately
                    for side in ("left", "right"):
                        entry = {
                            "m": m,
                            "lambda": list(lam),
                            "w": w.to_json(),
                            "side": side,
                        }
                        try:
                            char = H.graded_support_char(lam, lift, side)
                            cls = H.classify_character(char)
                            entry["eps"] = list(char.eps)
                            entry["verdict"] = (
                                "supersingular"
                                if cls.is_supersingular
                                else "NOT-supersingular"
                            )
                            if not cls.is_supersingular:
                                failures.append(entry)
                        except TheoremViolationError as exc:
                            entry["verdict"] = f"eigencheck-failed: {exc}"
                            failures.append(entry)
                        entries.append(entry)
        return AuditReport(entries, failures)


class AuditReport:
    def __init__(self, entries, failures):
        self.entries = entries
        self.failures = failures

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def cases(self) -> int:
        return len(self.entries)

    def to_json(self):
        return {
            "cases": self.cases,
            "ok": self.ok,
            "failures": self.failures,
            "entries": self.entries,
        }
