"""Exact arithmetic in small finite fields k = GF(p^m).

An element is stored as an integer index 0 <= i < p^m whose base-p
digits (least significant first) are the coordinates in the power basis
of the reduction polynomial.  All field operations are table lookups;
the tables are built once per FieldSpec, which keeps the desk-scale
algebra kernels cheap.

Alongside the field itself we fix the distinguished subfield F_q
(q = p^f with f | m) and the element zeta of exact multiplicative order
q - 1 used as the value generator for torus characters.
"""

from __future__ import annotations

from itertools import product as _iproduct

from .errors import UnsupportedFieldError

# Tables are quadratic in the field size; this library targets desk scale.
_MAX_ORDER = 4096


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _poly_trim(c):
    c = list(c)
    while c and c[-1] == 0:
        c.pop()
    return c


def _poly_mod(a, b, p):
    """Remainder of a by monic b, coefficients mod p, low degree first."""
    a = [x % p for x in a]
    db = len(_poly_trim(b)) - 1
    a = _poly_trim(a)
    while len(a) - 1 >= db:
        lead = a[-1]
        shift = len(a) - 1 - db
        for i in range(db + 1):
            a[shift + i] = (a[shift + i] - lead * b[i]) % p
        a = _poly_trim(a)
    return a


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1) if a and b else []
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def is_irreducible(poly, p: int) -> bool:
    """Exhaustive trial division by every monic polynomial of degree
    1..deg/2 over GF(p).  Only sensible for the small degrees used here."""
    poly = [c % p for c in poly]
    deg = len(_poly_trim(poly)) - 1
    if deg <= 0:
        return False
    if poly[-1] % p == 0:
        return False
    for d in range(1, deg // 2 + 1):
        for tail in _iproduct(range(p), repeat=d):
            divisor = list(tail) + [1]
            if not _poly_mod(poly, divisor, p):
                return False
    return True


def default_reduction_poly(p: int, m: int):
    """Lexicographically smallest irreducible monic polynomial of degree m.

    Coefficient tuples (c_0, ..., c_{m-1}) of x^m + sum c_i x^i are
    scanned in lexicographic order, so the choice is deterministic and
    reproducible across runs.
    """
    for tail in _iproduct(range(p), repeat=m):
        poly = list(tail) + [1]
        if is_irreducible(poly, p):
            return tuple(poly)
    raise ValueError(f"no irreducible polynomial of degree {m} over GF({p})")


class FieldElt:
    """Element of a FieldSpec; interned per field, value semantics."""

    __slots__ = ("field", "i")

    def __init__(self, field: "FieldSpec", i: int):
        self.field = field
        self.i = i

    @property
    def coeffs(self):
        """Coordinates in the power basis, low degree first, length m."""
        p, m, i = self.field.p, self.field.m, self.i
        out = []
        for _ in range(m):
            out.append(i % p)
            i //= p
        return tuple(out)

    def is_zero(self) -> bool:
        return self.i == 0

    def __add__(self, other):
        return self.field._elts[self.field._add[self.i][other.i]]

    def __sub__(self, other):
        return self.field._elts[self.field._add[self.i][self.field._neg[other.i]]]

    def __neg__(self):
        return self.field._elts[self.field._neg[self.i]]

    def __mul__(self, other):
        return self.field._elts[self.field._mul[self.i][other.i]]

    def __truediv__(self, other):
        if other.i == 0:
            raise ZeroDivisionError("division by zero in GF(p^m)")
        return self.field._elts[self.field._mul[self.i][self.field._inv[other.i]]]

    def __pow__(self, n: int):
        f = self.field
        if n < 0:
            if self.i == 0:
                raise ZeroDivisionError("0 has no inverse")
            base, n = f._elts[f._inv[self.i]], -n
        else:
            base = self
        acc = f.one()
        while n:
            if n & 1:
                acc = acc * base
            base = base * base
            n >>= 1
        return acc

    def __eq__(self, other):
        return (
            isinstance(other, FieldElt)
            and self.i == other.i
            and (self.field is other.field or self.field == other.field)
        )

    def __hash__(self):
        return hash((self.field._key, self.i))

    def __repr__(self):
        cs = self.coeffs
        if self.field.m == 1:
            return str(cs[0])
        return "(" + ",".join(map(str, cs)) + ")"


class FieldSpec:
    """k = GF(p^m) containing F_q, q = p^f, with f | m.

    The reduction polynomial defaults to the lexicographically smallest
    irreducible monic of degree m over GF(p); whatever is used is kept on
    the spec and echoed into every JSON export.
    """

    def __init__(self, p: int, f: int = 1, m: int | None = None, reduction_poly=None):
        if not is_prime(p):
            raise ValueError(f"p = {p} is not prime")
        if f < 1:
            raise ValueError("f must be >= 1")
        if m is None:
            m = f
        if m < 1 or m % f != 0:
            raise UnsupportedFieldError(
                f"f = {f} must divide m = {m} so that F_q embeds in GF(p^m)"
            )
        self.p, self.f, self.m = p, f, m
        self.q = p**f
        self.order = p**m
        if self.order > _MAX_ORDER:
            raise ValueError(f"field of order {self.order} exceeds desk scale")
        if reduction_poly is None:
            poly = default_reduction_poly(p, m)
        else:
            poly = tuple(c % p for c in reduction_poly)
            if len(poly) != m + 1 or poly[-1] != 1:
                raise ValueError("reduction polynomial must be monic of degree m")
            if not is_irreducible(poly, p):
                raise ValueError(f"reduction polynomial {list(poly)} is reducible over GF({p})")
        self.poly = poly
        self._key = (p, f, m, poly)
        self._build_tables()
        self._zeta = None

    def _build_tables(self):
        p, m, n = self.p, self.m, self.order

        def idx(coeffs):
            v = 0
            for c in reversed(coeffs):
                v = v * p + c
            return v

        def coeffs(i):
            out = []
            for _ in range(m):
                out.append(i % p)
                i //= p
            return out

        self._elts = [FieldElt(self, i) for i in range(n)]
        self._neg = [idx([(-c) % p for c in coeffs(i)]) for i in range(n)]
        self._add = [
            [idx([(a + b) % p for a, b in zip(coeffs(i), coeffs(j))]) for j in range(n)]
            for i in range(n)
        ]
        poly = list(self.poly)
        mul = []
        for i in range(n):
            ci = coeffs(i)
            row = []
            for j in range(n):
                prod = _poly_mul(ci, coeffs(j), p)
                rem = _poly_mod(prod, poly, p)
                rem += [0] * (m - len(rem))
                row.append(idx(rem))
            mul.append(row)
        self._mul = mul
        inv = [0] * n
        for i in range(1, n):
            row = mul[i]
            for j in range(1, n):
                if row[j] == 1:
                    inv[i] = j
                    break
        self._inv = inv

    # -- element constructors ------------------------------------------------

    def elt(self, coeffs) -> FieldElt:
        if isinstance(coeffs, FieldElt):
            if coeffs.field is not self:
                raise ValueError("element belongs to a different field")
            return coeffs
        if isinstance(coeffs, int):
            return self.from_int(coeffs)
        cs = list(coeffs)
        if len(cs) > self.m:
            raise ValueError("too many coefficients")
        cs += [0] * (self.m - len(cs))
        v = 0
        for c in reversed(cs):
            v = v * self.p + (c % self.p)
        return self._elts[v]

    def from_int(self, a: int) -> FieldElt:
        """Image of the integer a under Z -> GF(p) -> k."""
        return self._elts[a % self.p]

    def zero(self) -> FieldElt:
        return self._elts[0]

    def one(self) -> FieldElt:
        return self._elts[1]

    def elements(self):
        return iter(self._elts)

    # -- the distinguished subgroup of order q - 1 ---------------------------

    def multiplicative_order(self, x: FieldElt) -> int:
        if x.i == 0:
            raise ZeroDivisionError("0 has no multiplicative order")
        n, acc = 1, x
        while acc.i != 1:
            acc = acc * x
            n += 1
        return n

    def generator(self) -> FieldElt:
        """Smallest element (by coefficient tuple, lexicographically) of
        multiplicative order p^m - 1."""
        target = self.order - 1
        for x in sorted(self._elts[1:], key=lambda e: e.coeffs):
            if self.multiplicative_order(x) == target:
                return x
        raise AssertionError("k^x is cyclic; unreachable")

    def zeta_q(self) -> FieldElt:
        """Fixed embedding of a generator of F_q^x into k^x: an element of
        exact multiplicative order q - 1."""
        if self._zeta is None:
            g = self.generator()
            self._zeta = g ** ((self.order - 1) // (self.q - 1))
        return self._zeta

    # -- misc ----------------------------------------------------------------

    def to_json(self):
        return {"p": self.p, "f": self.f, "m": self.m, "poly": list(self.poly)}

    @classmethod
    def from_json(cls, data) -> "FieldSpec":
        return cls(
            data["p"],
            data.get("f", 1),
            data.get("m"),
            data.get("poly"),
        )

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return f"GF({self.p}^{self.m}; q={self.q})"


def field_arith(a: FieldElt, b, op: str) -> FieldElt:
    """Dispatch a single binary field operation by name; pow takes an
    integer exponent for b."""
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    if op == "pow":
        if not isinstance(b, int):
            raise ValueError("pow takes an integer exponent")
        return a**b
    raise ValueError(f"unknown op {op!r}")


def zeta_q(spec: FieldSpec) -> FieldElt:
    return spec.zeta_q()
