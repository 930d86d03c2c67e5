"""Based root data of split reductive groups, affine roots, and presets.

Roots live in X^* and are stored as integer coordinate vectors relative
to the chosen basis of the cocharacter lattice X_* = Z^r, so that the
canonical pairing <x, xi> is the plain dot product.  Coroots live in X_*
itself.  The isogeny type is carried entirely by the coroot coordinates
(SL2 and PGL2 share their root, not their coroot).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DataIntegrityError

PRESET_NAMES = ("SL2", "PGL2", "GL2", "SL3", "GL3", "Sp4", "G2sc", "SL2xSL2")


def dot(x, y) -> int:
    return sum(a * b for a, b in zip(x, y))


@dataclass(frozen=True)
class AffineRoot:
    """The affine function alpha(.) + h on the standard apartment."""

    root: int  # index into RootDatum.roots
    h: int

    def __repr__(self):
        return f"A({self.root},{self.h})"


def _solve_expansion(simple_vectors, target):
    """Coefficients of target in the linearly independent simple_vectors,
    exact over Q; returns None if target is outside their span."""
    rows = [list(map(Fraction, col)) for col in zip(*simple_vectors)]
    rhs = [Fraction(t) for t in target]
    ncols = len(simple_vectors)
    sol = [Fraction(0)] * ncols
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rhs[r], rhs[piv] = rhs[piv], rhs[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        rhs[r] *= inv
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
                rhs[i] -= f * rhs[r]
        pivots.append(c)
        r += 1
    for i in range(r, len(rows)):
        if rhs[i] != 0:
            return None
    for i, c in enumerate(pivots):
        sol[c] = rhs[i]
    return sol


class RootDatum:
    """Reduced based root datum with explicit root/coroot coordinates."""

    def __init__(self, rank, roots, coroots, simple_indices, name=None):
        self.rank = rank
        self.roots = [tuple(v) for v in roots]
        self.coroots = [tuple(v) for v in coroots]
        self.simple = list(simple_indices)
        self.name = name
        if len(self.roots) != len(self.coroots):
            raise ValueError("roots and coroots must come in pairs")
        self._index = {v: i for i, v in enumerate(self.roots)}
        if len(self._index) != len(self.roots):
            raise ValueError("duplicate roots")
        self._validate_pairing()
        self._compute_expansions()
        self._compute_components()
        self._validate_reflections()

    # -- construction-time checks --------------------------------------------

    def _validate_pairing(self):
        for a, ac in zip(self.roots, self.coroots):
            if dot(ac, a) != 2:
                raise ValueError(f"<coroot,root> = {dot(ac, a)} != 2 for {a}")
        for a in self.roots:
            if tuple(2 * c for c in a) in self._index:
                raise ValueError("root system is not reduced")

    def _compute_expansions(self):
        simple_vecs = [self.roots[i] for i in self.simple]
        exps = []
        for v in self.roots:
            sol = _solve_expansion(simple_vecs, v)
            if sol is None or any(x.denominator != 1 for x in sol):
                raise ValueError(f"root {v} is not an integral combination of the base")
            coeffs = tuple(int(x) for x in sol)
            if not (all(c >= 0 for c in coeffs) or all(c <= 0 for c in coeffs)):
                raise ValueError(f"root {v} has mixed-sign expansion {coeffs}")
            exps.append(coeffs)
        self.expansions = exps

    def _compute_components(self):
        ns = len(self.simple)
        adj = {i: set() for i in range(ns)}
        for i in range(ns):
            for j in range(ns):
                if i != j and dot(self.coroots[self.simple[i]], self.roots[self.simple[j]]) != 0:
                    adj[i].add(j)
        comp_of_simple = [-1] * ns
        comp = 0
        for i in range(ns):
            if comp_of_simple[i] >= 0:
                continue
            stack = [i]
            while stack:
                a = stack.pop()
                if comp_of_simple[a] >= 0:
                    continue
                comp_of_simple[a] = comp
                stack.extend(adj[a])
            comp += 1
        self.ncomp = comp
        component_of = []
        for exp in self.expansions:
            comps = {comp_of_simple[i] for i, c in enumerate(exp) if c != 0}
            if len(comps) != 1:
                raise DataIntegrityError("root supported on several components")
            component_of.append(comps.pop())
        self.component_of = component_of
        self.simple_component = comp_of_simple

    def _validate_reflections(self):
        for a, ac in zip(self.roots, self.coroots):
            for b in self.roots:
                img = tuple(x - dot(ac, b) * y for x, y in zip(b, a))
                if img not in self._index:
                    raise ValueError("reflections do not permute the root set")

    # -- queries ---------------------------------------------------------------

    def root_index(self, vector) -> int:
        return self._index[tuple(vector)]

    def neg_index(self, i: int) -> int:
        return self._index[tuple(-c for c in self.roots[i])]

    def is_positive_root(self, i: int) -> bool:
        exp = self.expansions[i]
        return any(c > 0 for c in exp)

    def positive_roots(self):
        return [i for i in range(len(self.roots)) if self.is_positive_root(i)]

    def cartan_matrix(self):
        return [
            [dot(self.coroots[i], self.roots[j]) for j in self.simple]
            for i in self.simple
        ]

    def height(self, i: int) -> int:
        return sum(self.expansions[i])

    def minimal_roots(self):
        """Per component, the unique root m with m <= beta for every root
        beta of that component (the negative of the highest root), found by
        exhaustive comparison of simple-root expansions."""
        out = []
        for c in range(self.ncomp):
            members = [i for i in range(len(self.roots)) if self.component_of[i] == c]
            minimal = [
                i
                for i in members
                if all(
                    all(x >= 0 for x in self._diff(j, i))
                    for j in members
                )
            ]
            if len(minimal) != 1:
                raise DataIntegrityError(f"component {c} has {len(minimal)} minimal roots")
            out.append(minimal[0])
        return out

    def _diff(self, j, i):
        return tuple(a - b for a, b in zip(self.expansions[j], self.expansions[i]))

    # -- affine layer ------------------------------------------------------------

    def is_positive_affine(self, A: AffineRoot) -> bool:
        """Nonnegative on the fundamental chamber: h > 0, or h = 0 and the
        linear part is a positive root."""
        if A.h != 0:
            return A.h > 0
        return self.is_positive_root(A.root)

    def neg_affine(self, A: AffineRoot) -> AffineRoot:
        return AffineRoot(self.neg_index(A.root), -A.h)

    def pi_aff(self):
        """Affine base: the finite base, then (m_c, 1) for the minimal root
        m_c of each irreducible component, in component order."""
        out = [AffineRoot(i, 0) for i in self.simple]
        out.extend(AffineRoot(i, 1) for i in self.minimal_roots())
        return out

    def to_json(self):
        if self.name:
            return {"preset": self.name}
        return {
            "rank": self.rank,
            "roots": [list(v) for v in self.roots],
            "coroots": [list(v) for v in self.coroots],
            "simple": list(self.simple),
        }

    @classmethod
    def from_json(cls, data) -> "RootDatum":
        if isinstance(data, str):
            return preset(data)
        if "preset" in data:
            return preset(data["preset"])
        return cls(data["rank"], data["roots"], data["coroots"], data["simple"])

    def __repr__(self):
        tag = self.name or f"rank{self.rank}"
        return f"RootDatum({tag}, {len(self.roots)} roots)"


def _generate(rank, simple_roots, simple_coroots, name):
    """Close the base under all simple reflections, producing the full
    (root, coroot) list; simple roots come first, in the given order."""
    simple_roots = [tuple(v) for v in simple_roots]
    simple_coroots = [tuple(v) for v in simple_coroots]
    pairs = list(zip(simple_roots, simple_coroots))
    seen = set(pairs)
    frontier = list(pairs)
    while frontier:
        nxt = []
        for a, ac in frontier:
            for b, bc in zip(simple_roots, simple_coroots):
                n = dot(bc, a)
                img = tuple(x - n * y for x, y in zip(a, b))
                img_c = tuple(x - dot(ac, b) * y for x, y in zip(ac, bc))
                if (img, img_c) not in seen:
                    seen.add((img, img_c))
                    nxt.append((img, img_c))
        pairs.extend(nxt)
        frontier = nxt
    rest = sorted(p for p in pairs if p not in set(zip(simple_roots, simple_coroots)))
    ordered = list(zip(simple_roots, simple_coroots)) + rest
    roots = [p[0] for p in ordered]
    coroots = [p[1] for p in ordered]
    return RootDatum(rank, roots, coroots, list(range(len(simple_roots))), name=name)


_PRESET_DATA = {
    # name: (rank, simple roots, simple coroots)
    "SL2": (1, [(2,)], [(1,)]),
    "PGL2": (1, [(1,)], [(2,)]),
    "GL2": (2, [(1, -1)], [(1, -1)]),
    "SL3": (2, [(2, -1), (-1, 2)], [(1, 0), (0, 1)]),
    "GL3": (3, [(1, -1, 0), (0, 1, -1)], [(1, -1, 0), (0, 1, -1)]),
    "Sp4": (2, [(1, -1), (0, 2)], [(1, -1), (0, 1)]),
    "G2sc": (2, [(2, -3), (-1, 2)], [(1, 0), (0, 1)]),
    "SL2xSL2": (2, [(2, 0), (0, 2)], [(1, 0), (0, 1)]),
}


def preset(name: str) -> RootDatum:
    """Standard based root datum of a named split group."""
    if name not in _PRESET_DATA:
        raise ValueError(f"unknown preset {name!r}; choose from {PRESET_NAMES}")
    rank, sr, sc = _PRESET_DATA[name]
    return _generate(rank, sr, sc, name)


def is_positive_affine(rd: RootDatum, A: AffineRoot) -> bool:
    return rd.is_positive_affine(A)


def pi_aff(rd: RootDatum):
    return rd.pi_aff()
