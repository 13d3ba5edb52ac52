"""Arithmetic in GF(q) and row reduction over it.

Elements of GF(p^e) are encoded as integers 0..q-1: the coefficient of
x^i of the polynomial representative is the i-th base-p digit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Sequence

MAX_ORDER = 2 ** 16
MAX_DEGREE = 4
_FULL_TABLE_LIMIT = 256


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    if p % 2 == 0:
        return p == 2
    d = 3
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


def prime_power(q: int) -> tuple[int, int]:
    """Split q = p**e; raises ValueError if q is not a prime power."""
    if q < 2:
        raise ValueError(f"{q} is not a prime power")
    p = 2
    while q % p:
        p += 1
    e, rest = 0, q
    while rest % p == 0:
        rest //= p
        e += 1
    if rest != 1:
        raise ValueError(f"{q} is not a prime power")
    return p, e


# -- polynomials over GF(p), coefficient lists low degree first --------------

def _poly_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _poly_mod(a: Sequence[int], b: Sequence[int], p: int) -> list[int]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = pow(b[-1], p - 2, p)
    while len(a) >= len(b):
        c = a[-1] * inv_lead % p
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = (a[shift + i] - c * bi) % p
        _poly_trim(a)
    return a


def _monic_polys(degree: int, p: int):
    """Monic polynomials of the given degree in increasing encoding order."""
    for low in product(range(p), repeat=degree):
        yield list(reversed(low)) + [1]


def is_irreducible_mod_p(poly: Sequence[int], p: int) -> bool:
    """Trial division by every monic polynomial of degree <= deg/2."""
    deg = len(poly) - 1
    if deg < 1:
        return False
    for d in range(1, deg // 2 + 1):
        for f in _monic_polys(d, p):
            if not _poly_mod(poly, f, p):
                return False
    return True


@dataclass(frozen=True, eq=False)
class FieldSpec:
    """GF(p^e) with a fixed modulus and log/antilog tables."""

    p: int
    e: int
    q: int
    modulus: tuple[int, ...]
    exp: tuple[int, ...] = field(repr=False)
    log: tuple[int, ...] = field(repr=False)
    add_table: tuple[tuple[int, ...], ...] | None = field(repr=False, default=None)
    mul_table: tuple[tuple[int, ...], ...] | None = field(repr=False, default=None)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and (self.p, self.e, self.modulus) == (
            other.p, other.e, other.modulus)

    def __hash__(self):
        return hash((self.p, self.e, self.modulus))

    @property
    def elements(self) -> range:
        return range(self.q)

    def _digits(self, a: int) -> list[int]:
        out = []
        for _ in range(self.e):
            a, d = divmod(a, self.p)
            out.append(d)
        return out

    def _pack(self, digits: Sequence[int]) -> int:
        v = 0
        for d in reversed(digits):
            v = v * self.p + d
        return v

    def add(self, a: int, b: int) -> int:
        if self.e == 1:
            return (a + b) % self.p
        if self.p == 2:
            return a ^ b
        if self.add_table is not None:
            return self.add_table[a][b]
        return self._pack([(x + y) % self.p for x, y in zip(self._digits(a), self._digits(b))])

    def neg(self, a: int) -> int:
        if self.e == 1:
            return -a % self.p
        if self.p == 2:
            return a
        return self._pack([-x % self.p for x in self._digits(a)])

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if a == 0 or b == 0:
            return 0
        if self.e == 1:
            return a * b % self.p
        return self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero in GF(%d)" % self.q)
        if self.e == 1:
            return pow(a, self.p - 2, self.p)
        return self.exp[(-self.log[a]) % (self.q - 1)]

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def power(self, a: int, k: int) -> int:
        if a == 0:
            return 0 if k > 0 else 1
        return self.exp[(self.log[a] * k) % (self.q - 1)]

    def __repr__(self):
        return f"GF({self.q})"


def _mul_poly_elements(a: int, b: int, p: int, e: int, modulus: Sequence[int]) -> int:
    da = [(a // p ** i) % p for i in range(e)]
    db = [(b // p ** i) % p for i in range(e)]
    prod = [0] * (2 * e - 1)
    for i, x in enumerate(da):
        if x:
            for j, y in enumerate(db):
                prod[i + j] = (prod[i + j] + x * y) % p
    rem = _poly_mod(prod, modulus, p) if e > 1 else [prod[0] % p]
    rem += [0] * (e - len(rem))
    return sum(c * p ** i for i, c in enumerate(rem))


@lru_cache(maxsize=None)
def field_make(p: int, e: int = 1) -> FieldSpec:
    """Build GF(p^e) using the smallest monic irreducible modulus."""
    if not is_prime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if e < 1 or e > MAX_DEGREE:
        raise ValueError(f"extension degree {e} outside 1..{MAX_DEGREE}")
    q = p ** e
    if q > MAX_ORDER:
        raise ValueError(f"field order {q} exceeds {MAX_ORDER}")

    if e == 1:
        modulus: tuple[int, ...] = ()
        mul = lambda a, b: a * b % p  # noqa: E731
    else:
        modulus = ()
        for poly in _monic_polys(e, p):
            if is_irreducible_mod_p(poly, p):
                modulus = tuple(poly)
                break
        mul = lambda a, b: _mul_poly_elements(a, b, p, e, modulus)  # noqa: E731

    # primitive element: smallest generator of the multiplicative group
    exp_table: list[int] = []
    for g in range(1, q):
        seq, x = [], 1
        for _ in range(q - 1):
            seq.append(x)
            x = mul(x, g)
            if x == 1:
                break
        if len(seq) == q - 1:
            exp_table = seq
            break
    log_table = [0] * q
    for i, x in enumerate(exp_table):
        log_table[x] = i

    add_table = mul_table = None
    if q <= _FULL_TABLE_LIMIT:
        spec = FieldSpec(p, e, q, modulus, tuple(exp_table), tuple(log_table))
        add_table = tuple(tuple(spec.add(a, b) for b in range(q)) for a in range(q))
        mul_table = tuple(tuple(spec.mul(a, b) for b in range(q)) for a in range(q))
    return FieldSpec(p, e, q, modulus, tuple(exp_table), tuple(log_table),
                     add_table, mul_table)


def field_of_order(q: int) -> FieldSpec:
    return field_make(*prime_power(q))


# -- matrices ----------------------------------------------------------------

@dataclass(frozen=True)
class Matrix:
    """Dense matrix over a finite field, rows stored as tuples."""

    field: FieldSpec
    rows: tuple[tuple[int, ...], ...]
    cols: int

    @classmethod
    def from_rows(cls, F: FieldSpec, rows: Sequence[Sequence[int]], cols: int | None = None) -> "Matrix":
        rows = tuple(tuple(int(x) for x in r) for r in rows)
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged matrix")
            for x in r:
                if not 0 <= x < F.q:
                    raise ValueError(f"{x} is not an element of GF({F.q})")
        return cls(F, rows, cols)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def stack(self, other: "Matrix") -> "Matrix":
        if other.cols != self.cols or other.field != self.field:
            raise ValueError("cannot stack matrices of different shape or field")
        return Matrix(self.field, self.rows + other.rows, self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        F = self.field
        if self.cols != other.nrows:
            raise ValueError("shape mismatch")
        out = []
        for r in self.rows:
            row = []
            for j in range(other.cols):
                acc = 0
                for i, a in enumerate(r):
                    if a:
                        acc = F.add(acc, F.mul(a, other.rows[i][j]))
                row.append(acc)
            out.append(tuple(row))
        return Matrix(F, tuple(out), other.cols)


def rref_rows(F: FieldSpec, rows: Sequence[Sequence[int]], cols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form of ``rows``; returns (nonzero rows, pivot columns)."""
    m = [list(r) for r in rows]
    pivots: list[int] = []
    top = 0
    for c in range(cols):
        if top == len(m):
            break
        piv = next((i for i in range(top, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[top], m[piv] = m[piv], m[top]
        inv = F.inv(m[top][c])
        if inv != 1:
            m[top] = [F.mul(inv, x) for x in m[top]]
        prow = m[top]
        for i in range(len(m)):
            if i != top and m[i][c]:
                f = F.neg(m[i][c])
                m[i] = [F.add(x, F.mul(f, y)) for x, y in zip(m[i], prow)]
        pivots.append(c)
        top += 1
    return m[:top], pivots


def rref(M: Matrix) -> tuple[Matrix, int]:
    """Return (RREF of M, rank). Zero rows are kept at the bottom."""
    reduced, pivots = rref_rows(M.field, M.rows, M.cols)
    rank = len(pivots)
    zero = tuple([0] * M.cols)
    rows = tuple(tuple(r) for r in reduced) + (zero,) * (M.nrows - rank)
    return Matrix(M.field, rows, M.cols), rank


def rank(M: Matrix) -> int:
    return rref(M)[1]


def row_span(M: Matrix) -> set[tuple[int, ...]]:
    """All vectors in the row span, by enumerating coefficient vectors."""
    F = M.field
    out = set()
    for coeffs in product(range(F.q), repeat=M.nrows):
        v = [0] * M.cols
        for c, r in zip(coeffs, M.rows):
            if c:
                v = [F.add(x, F.mul(c, y)) for x, y in zip(v, r)]
        out.add(tuple(v))
    return out


# -- polynomials and matrix fields over GF(q) --------------------------------

def poly_mod_field(F: FieldSpec, a: Sequence[int], b: Sequence[int]) -> list[int]:
    a = _poly_trim(list(a))
    b = _poly_trim(list(b))
    inv_lead = F.inv(b[-1])
    while len(a) >= len(b):
        c = F.mul(a[-1], inv_lead)
        shift = len(a) - len(b)
        for i, bi in enumerate(b):
            a[shift + i] = F.sub(a[shift + i], F.mul(c, bi))
        _poly_trim(a)
    return a


def irreducible_over(F: FieldSpec, degree: int) -> tuple[int, ...]:
    """Smallest monic irreducible polynomial of ``degree`` over GF(q)."""
    def monic(d):
        for low in product(range(F.q), repeat=d):
            yield list(reversed(low)) + [1]

    for poly in monic(degree):
        if degree == 1 or all(poly_mod_field(F, poly, f)
                              for d in range(1, degree // 2 + 1) for f in monic(d)):
            return tuple(poly)
    raise AssertionError("no irreducible polynomial found")  # pragma: no cover


def companion(F: FieldSpec, poly: Sequence[int]) -> Matrix:
    """Companion matrix acting on row vectors: e_i -> e_{i+1}, e_{d-1} -> -poly."""
    d = len(poly) - 1
    rows = []
    for i in range(d - 1):
        r = [0] * d
        r[i + 1] = 1
        rows.append(r)
    rows.append([F.neg(c) for c in poly[:d]])
    return Matrix.from_rows(F, rows, d)


def matrix_field(F: FieldSpec, d: int) -> list[Matrix]:
    """All q^d elements of GF(q^d) as d x d matrices over GF(q).

    Elements are polynomials in a companion matrix of an irreducible
    polynomial; the difference of two distinct elements is invertible.
    """
    C = companion(F, irreducible_over(F, d))
    ident = Matrix.from_rows(F, [[int(i == j) for j in range(d)] for i in range(d)])
    powers = [ident]
    for _ in range(d - 1):
        powers.append(powers[-1] @ C)
    out = []
    for coeffs in product(range(F.q), repeat=d):
        acc = [[0] * d for _ in range(d)]
        for c, Pm in zip(coeffs, powers):
            if c:
                for i in range(d):
                    for j in range(d):
                        acc[i][j] = F.add(acc[i][j], F.mul(c, Pm.rows[i][j]))
        out.append(Matrix.from_rows(F, acc, d))
    return out
