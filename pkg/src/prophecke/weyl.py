"""The extended affine Weyl group W = W_0 x| Lambda of a based root datum.

An element is a pair (w0, mu) standing for the transformation
x |-> w0(x + mu) of the standard apartment: translation by mu in the
cocharacter lattice first, then the finite part.  Products, the action
on affine roots, the length function, reduced words over the affine
simple reflections, the length-zero subgroup Omega, and the parity
invariant coupling negation-stable root orbits to length all live here.

The length of (w0, mu) is computed per root alpha by counting the
integers h for which (alpha, h) is a positive affine root sent negative;
the closed form is validated against a brute-force scan at construction
time and again, much harder, by the length_oracle test suite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .rootdata import AffineRoot, RootDatum, dot


def _mat_vec(M, v):
    return tuple(sum(M[i][j] * v[j] for j in range(len(v))) for i in range(len(M)))


def _mat_mul(A, B):
    n = len(A)
    return tuple(
        tuple(sum(A[i][k] * B[k][j] for k in range(n)) for j in range(n))
        for i in range(n)
    )


def _identity_matrix(n):
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


class WeylGroup:
    """Finite Weyl group table plus the affine machinery built on it.

    For each element we store its matrix on X_* (used on translation
    parts and on the torus quotient later), the induced permutation of
    the root list, a canonical reduced word in the finite generators,
    inverses, and the finite length.
    """

    def __init__(self, rd: RootDatum):
        self.rd = rd
        self.rank = rd.rank
        n = rd.rank
        gens = []
        for i in rd.simple:
            a, ac = rd.roots[i], rd.coroots[i]
            M = tuple(
                tuple((1 if r == c else 0) - ac[r] * a[c] for c in range(n))
                for r in range(n)
            )
            gens.append(M)
        self.gen_matrices = gens
        ident = _identity_matrix(n)
        elements = [ident]
        index = {ident: 0}
        words = {0: ()}
        frontier = [0]
        while frontier:
            nxt = []
            for ei in frontier:
                for gi, g in enumerate(gens):
                    M = _mat_mul(elements[ei], g)  # right multiplication
                    if M not in index:
                        index[M] = len(elements)
                        elements.append(M)
                        words[index[M]] = words[ei] + (gi,)
                        nxt.append(index[M])
            frontier = nxt
        self.elements = elements
        self.index = index
        self.order = len(elements)
        self.id_index = 0
        self.gen_index = [index[g] for g in gens]

        # Root permutations: the root paired with the image coroot
        # M(coroot_j) is w(root_j), since the root/coroot correspondence
        # is equivariant; this avoids inverting M for the X^* action.
        nroots = len(rd.roots)
        cor_index = {v: i for i, v in enumerate(rd.coroots)}
        self.root_perm = [
            tuple(cor_index[_mat_vec(M, rd.coroots[j])] for j in range(nroots))
            for M in elements
        ]

        self.mult = [
            [index[_mat_mul(A, B)] for B in elements] for A in elements
        ]
        self.inv0 = [0] * self.order
        for i in range(self.order):
            for j in range(self.order):
                if self.mult[i][j] == 0:
                    self.inv0[i] = j
                    break
        pos = set(rd.positive_roots())
        self.length0 = [
            sum(1 for j in pos if perm[j] not in pos) for perm in self.root_perm
        ]
        # canonical finite reduced words by smallest-descent stripping
        self.words0 = [self._canonical_word0(i) for i in range(self.order)]

        self.s_aff = rd.pi_aff()
        self._aff_gen = [self.affine_reflection(A) for A in self.s_aff]
        self._len_cache = {}
        self._word_cache = {}
        self._omega = None
        self._sanity_check_length()

    # -- finite words ---------------------------------------------------------

    def _canonical_word0(self, ei):
        word = []
        pos = set(self.rd.positive_roots())
        cur = ei
        while self.length0[cur] > 0:
            for gi, si in enumerate(self.gen_index):
                # right descent: cur sends alpha_gi negative
                root = self.rd.simple[gi]
                if self.root_perm[cur][root] not in pos:
                    word.insert(0, gi)
                    cur = self.mult[cur][si]
                    break
            else:
                raise AssertionError("positive finite length without a descent")
        return tuple(word)

    def _sanity_check_length(self):
        box = [-2, -1, 0, 1, 2] if self.rank <= 2 else [-1, 0, 1]
        from itertools import product as iproduct

        for w0 in range(self.order):
            for mu in iproduct(box, repeat=self.rank):
                w = self.elt(w0, mu)
                if w.length() != length_bruteforce(w):
                    raise AssertionError(
                        f"closed-form length disagrees with scan at {w}"
                    )

    # -- element constructors ---------------------------------------------------

    def elt(self, w0: int = 0, mu=None) -> "ExtAffWeylElt":
        if mu is None:
            mu = (0,) * self.rank
        return ExtAffWeylElt(self, w0, tuple(mu))

    def identity(self) -> "ExtAffWeylElt":
        return self.elt()

    def simple_reflection(self, i: int) -> "ExtAffWeylElt":
        """Finite simple reflection s_i as an extended affine element."""
        return self.elt(self.gen_index[i])

    def translation(self, mu) -> "ExtAffWeylElt":
        return self.elt(0, tuple(mu))

    def affine_reflection(self, A: AffineRoot) -> "ExtAffWeylElt":
        """s_(alpha,h) = s_alpha composed with translation by h alpha-check."""
        rd = self.rd
        a, ac = rd.roots[A.root], rd.coroots[A.root]
        n = self.rank
        M = tuple(
            tuple((1 if r == c else 0) - ac[r] * a[c] for c in range(n))
            for r in range(n)
        )
        return self.elt(self.index[M], tuple(A.h * c for c in ac))

    def aff_gen(self, i: int) -> "ExtAffWeylElt":
        """The i-th affine simple reflection, indexed along pi_aff."""
        return self._aff_gen[i]

    def from_word(self, w0_word, mu=None) -> "ExtAffWeylElt":
        w0 = 0
        for i in w0_word:
            w0 = self.mult[w0][self.gen_index[i]]
        return self.elt(w0, mu)

    # -- element enumeration ------------------------------------------------------

    def omega(self) -> "OmegaGroup":
        if self._omega is None:
            self._omega = omega_group(self)
        return self._omega

    def elements_of_length(self, n: int, omega_window: int = 2):
        """All w with length exactly n.  For infinite Omega only the
        window |coefficients| <= omega_window of length-zero prefixes is
        used, so the result is a finite slice of each length stratum."""
        return self._strata(n, omega_window)[n]

    def elements_up_to_length(self, n: int, omega_window: int = 2):
        strata = self._strata(n, omega_window)
        out = []
        for lst in strata:
            out.extend(lst)
        return out

    def _strata(self, n: int, omega_window: int):
        om = self.omega()
        if om.finite:
            zero = list(om.elements)
        else:
            zero = om.window(omega_window)
        strata = [zero]
        seen = set(zero)
        for ln in range(1, n + 1):
            nxt = []
            for w in strata[ln - 1]:
                for g in self._aff_gen:
                    v = w * g
                    if v not in seen and v.length() == ln:
                        seen.add(v)
                        nxt.append(v)
            strata.append(nxt)
        return strata


class ExtAffWeylElt:
    """Element w0 . t_mu of the extended affine Weyl group."""

    __slots__ = ("group", "w0", "mu", "_hash")

    def __init__(self, group: WeylGroup, w0: int, mu: tuple):
        self.group = group
        self.w0 = w0
        self.mu = mu
        self._hash = hash((w0, mu))

    def __eq__(self, other):
        return (
            isinstance(other, ExtAffWeylElt)
            and self.group is other.group
            and self.w0 == other.w0
            and self.mu == other.mu
        )

    def __hash__(self):
        return self._hash

    def __mul__(self, other: "ExtAffWeylElt") -> "ExtAffWeylElt":
        g = self.group
        if other.group is not g:
            raise ValueError("elements of different Weyl groups")
        B = g.elements[other.w0]
        binv = g.inv0[other.w0]
        mu = tuple(
            a + b
            for a, b in zip(_mat_vec(g.elements[binv], self.mu), other.mu)
        )
        return ExtAffWeylElt(g, g.mult[self.w0][other.w0], mu)

    def inv(self) -> "ExtAffWeylElt":
        g = self.group
        winv = g.inv0[self.w0]
        mu = tuple(-c for c in _mat_vec(g.elements[self.w0], self.mu))
        return ExtAffWeylElt(g, winv, mu)

    def is_identity(self) -> bool:
        return self.w0 == 0 and not any(self.mu)

    def is_affine(self) -> bool:
        """Whether the element lies in the affine Weyl group, i.e. its
        length-zero prefix is trivial."""
        omega, _ = self.reduced_word()
        return omega.is_identity()

    def act_affine(self, A: AffineRoot) -> AffineRoot:
        """(alpha, h) |-> (w0(alpha), h - <mu, alpha>)."""
        g = self.group
        return AffineRoot(
            g.root_perm[self.w0][A.root],
            A.h - dot(self.mu, g.rd.roots[A.root]),
        )

    def act_coweight(self, x):
        """Apply the transformation w0 . t_mu to a cocharacter vector."""
        g = self.group
        return _mat_vec(g.elements[self.w0], tuple(a + b for a, b in zip(x, self.mu)))

    def length(self) -> int:
        g = self.group
        key = (self.w0, self.mu)
        cached = g._len_cache.get(key)
        if cached is not None:
            return cached
        rd = g.rd
        perm = g.root_perm[self.w0]
        total = 0
        for i in range(len(rd.roots)):
            delta_src = 0 if rd.is_positive_root(i) else 1
            delta_img = 0 if rd.is_positive_root(perm[i]) else 1
            total += max(0, delta_img - delta_src + dot(self.mu, rd.roots[i]))
        g._len_cache[key] = total
        return total

    def descents(self, side: str = "right"):
        """Indices into pi_aff of the affine simple reflections shortening
        this element on the given side."""
        if side == "left":
            return self.inv().descents("right")
        if side != "right":
            raise ValueError("side must be 'left' or 'right'")
        g = self.group
        out = []
        for i, A in enumerate(g.s_aff):
            if not g.rd.is_positive_affine(self.act_affine(A)):
                out.append(i)
        return out

    def reduced_word(self, tie: str = "min"):
        """Canonical decomposition (omega, [i_1..i_l]) with
        w = omega . s_{i_1} ... s_{i_l}, l = length(w), length(omega) = 0.

        The word is built right to left by stripping, at every step, the
        smallest-index right descent (largest for tie='max'; any tie rule
        yields a reduced word, by the exchange condition)."""
        g = self.group
        key = (self.w0, self.mu, tie)
        cached = g._word_cache.get(key)
        if cached is not None:
            return cached
        word = []
        cur = self
        while True:
            ds = cur.descents("right")
            if not ds:
                break
            i = ds[0] if tie == "min" else ds[-1]
            word.insert(0, i)
            cur = cur * g._aff_gen[i]
        assert len(word) == self.length()
        result = (cur, tuple(word))
        g._word_cache[key] = result
        return result

    def all_reduced_words(self):
        """Every reduced word of the affine part (same omega prefix)."""
        if self.length() == 0:
            return [()]
        g = self.group
        out = []
        for i in self.descents("right"):
            shorter = self * g._aff_gen[i]
            out.extend(w + (i,) for w in shorter.all_reduced_words())
        return out

    def to_json(self):
        return {"w0_word": list(self.group.words0[self.w0]), "mu": list(self.mu)}

    @classmethod
    def from_json(cls, group: WeylGroup, data) -> "ExtAffWeylElt":
        return group.from_word(data.get("w0_word", []), data.get("mu"))

    def __repr__(self):
        return f"w[{'.'.join(map(str, self.group.words0[self.w0])) or 'e'}; {list(self.mu)}]"


# -- module-level operation wrappers ---------------------------------------------


def act_affine(w: ExtAffWeylElt, A: AffineRoot) -> AffineRoot:
    return w.act_affine(A)


def length(w: ExtAffWeylElt) -> int:
    return w.length()


def length_bruteforce(w: ExtAffWeylElt) -> int:
    """Independent oracle: scan all (alpha, h) with |h| <= max|<mu,alpha>| + 1
    and count positive affine roots sent negative."""
    g = w.group
    rd = g.rd
    bound = max((abs(dot(w.mu, a)) for a in rd.roots), default=0) + 1
    count = 0
    for i in range(len(rd.roots)):
        for h in range(-bound, bound + 1):
            A = AffineRoot(i, h)
            if rd.is_positive_affine(A) and not rd.is_positive_affine(w.act_affine(A)):
                count += 1
    return count


def descents(w: ExtAffWeylElt, side: str):
    return w.descents(side)


def reduced_word(w: ExtAffWeylElt):
    return w.reduced_word()


@dataclass
class OmegaGroup:
    """The abelian subgroup of length-zero elements, W = Omega x| W_aff.

    For semisimple data the full element list is found by solving
    length(w0 t_mu) = 0 over a coset box of Lambda modulo the coroot
    lattice; otherwise generators of the free part are returned together
    with finite=False.
    """

    group: WeylGroup
    finite: bool
    invariants: tuple  # Smith normal form diagonal of Lambda/coroot-lattice
    elements: list  # full list when finite
    generators: list  # length-zero generators of Lambda/Q-check

    @property
    def order(self):
        if not self.finite:
            return None
        return len(self.elements)

    def window(self, width: int):
        """Finite slice of Omega: products of generators with exponents in
        [-width, width]; equals the full group when finite."""
        if self.finite:
            return list(self.elements)
        from itertools import product as iproduct

        out = []
        seen = set()
        base = [g for g in self.generators]
        for exps in iproduct(range(-width, width + 1), repeat=len(base)):
            w = self.group.identity()
            for g, e in zip(base, exps):
                step = g if e >= 0 else g.inv()
                for _ in range(abs(e)):
                    w = w * step
            if w not in seen:
                seen.add(w)
                out.append(w)
        return out


def _smith_normal_form(mat):
    """Diagonal of an integer elimination of mat (list of rows), plus the
    rank.  Row/column operations are unimodular, so the product of the
    diagonal is the index of the column lattice and rank < #rows detects
    an infinite quotient.  Fine at rank <= 3."""
    A = [row[:] for row in mat]
    if not A or not A[0]:
        return [], 0
    rows, cols = len(A), len(A[0])

    def find_pivot(r, c):
        piv, best = None, None
        for i in range(r, rows):
            for j in range(c, cols):
                if A[i][j] != 0 and (best is None or abs(A[i][j]) < best):
                    piv, best = (i, j), abs(A[i][j])
        return piv

    diag = []
    r = c = 0
    while r < rows and c < cols:
        piv = find_pivot(r, c)
        if piv is None:
            break
        while True:
            i, j = piv
            A[r], A[i] = A[i], A[r]
            for row in A:
                row[c], row[j] = row[j], row[c]
            p = A[r][c]
            clean = True
            for i in range(r + 1, rows):
                if A[i][c]:
                    q = A[i][c] // p
                    A[i] = [x - q * y for x, y in zip(A[i], A[r])]
                    if A[i][c]:
                        clean = False
            for j in range(c + 1, cols):
                if A[r][j]:
                    q = A[r][j] // p
                    for i in range(rows):
                        A[i][j] -= q * A[i][c]
                    if A[r][j]:
                        clean = False
            if clean:
                break
            piv = find_pivot(r, c)
        diag.append(abs(A[r][c]))
        r += 1
        c += 1
    return diag, len(diag)


def omega_group(weyl: WeylGroup) -> OmegaGroup:
    rd = weyl.rd
    rank = weyl.rank
    cols = [rd.coroots[i] for i in rd.simple]
    mat = [[cols[j][i] for j in range(len(cols))] for i in range(rank)]
    diag, rk = _smith_normal_form(mat)
    finite = rk == rank
    invariants = tuple(diag) + (0,) * (rank - rk)
    order = 1
    for d in diag:
        order *= d
    if finite:
        for width in (2, 3, 4, 6):
            found = _zero_length_box(weyl, width)
            if len(found) == order:
                elements = sorted(found, key=lambda w: (w.w0, w.mu))
                gens = [w for w in elements if not w.is_identity()]
                return OmegaGroup(weyl, True, invariants, elements, gens)
        raise AssertionError("could not enumerate Omega; box too small")
    # infinite case: pick length-zero elements whose Lambda/Q-check classes
    # generate the quotient (free part plus any torsion)
    found = _zero_length_box(weyl, 2)
    gens = _spanning_subset(weyl, found)
    return OmegaGroup(weyl, False, invariants, [], gens)


def _zero_length_box(weyl: WeylGroup, width: int):
    from itertools import product as iproduct

    out = []
    for w0 in range(weyl.order):
        for mu in iproduct(range(-width, width + 1), repeat=weyl.rank):
            w = weyl.elt(w0, mu)
            if w.length() == 0:
                out.append(w)
    return out


def _spanning_subset(weyl: WeylGroup, zero_elements):
    """Greedy generators of the group of length-zero elements: add an
    element whenever it enlarges the subgroup generated so far inside a
    bounded window of translation parts."""
    gens = []
    span = {weyl.identity()}

    def grow(limit=2000):
        frontier = list(span)
        while frontier and len(span) < limit:
            nxt = []
            for w in frontier:
                for g in gens:
                    for v in (w * g, w * g.inv()):
                        if v not in span and max(
                            (abs(c) for c in v.mu), default=0
                        ) <= 4:
                            span.add(v)
                            nxt.append(v)
            frontier = nxt

    for w in sorted(zero_elements, key=lambda w: (sum(abs(c) for c in w.mu), w.w0, w.mu)):
        if w not in span and not w.is_identity():
            gens.append(w)
            grow()
    return gens


def lemma_even(w: ExtAffWeylElt):
    """Count orbits of the cyclic group generated by the finite part of w
    on the root set that are stable under negation, and report whether
    that count plus the length of w is even."""
    g = w.group
    perm = g.root_perm[w.w0]
    rd = g.rd
    n = len(rd.roots)
    seen = [False] * n
    N = 0
    for start in range(n):
        if seen[start]:
            continue
        orbit = []
        cur = start
        while not seen[cur]:
            seen[cur] = True
            orbit.append(cur)
            cur = perm[cur]
        oset = set(orbit)
        if {rd.neg_index(i) for i in oset} == oset:
            N += 1
    return N, (N + w.length()) % 2 == 0
