"""Exact q-numbers, Gaussian coefficients and the standard bounds on them."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache


def q_number(a: int, q: int) -> int:
    """[a]_q = (q^a - 1)/(q - 1) = 1 + q + ... + q^(a-1)."""
    if a < 0:
        raise ValueError("q_number needs a >= 0")
    if q < 2:
        raise ValueError("q_number needs q >= 2")
    return (q ** a - 1) // (q - 1)


@lru_cache(maxsize=65536)
def gauss(a: int, b: int, q: int) -> int:
    """Gaussian binomial coefficient [a choose b]_q; zero outside 0 <= b <= a."""
    if b < 0 or a < 0 or b > a:
        return 0
    b = min(b, a - b)
    num = den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (b - i) - 1
    return num // den


@dataclass(frozen=True)
class QReal:
    value: float
    overflow: bool = False


def q_number_real(a: float, q: float) -> QReal:
    """(q^a - 1)/(q - 1) in floating point, stable for q close to 1."""
    if q <= 1:
        raise ValueError("q_number_real needs q > 1")
    lq = math.log(q)
    try:
        # expm1/log1p keep precision when q -> 1
        value = math.expm1(a * lq) / math.expm1(lq)
    except OverflowError:
        return QReal(math.inf, True)
    return QReal(value, math.isinf(value))


def rho(q: int) -> Fraction:
    """Upper-bound factor for Gaussian coefficients: 1+5/q if q < 4, else 1+2/q."""
    return 1 + Fraction(5, q) if q < 4 else 1 + Fraction(2, q)


@dataclass(frozen=True)
class GaussBounds:
    lower: int
    upper: Fraction
    upper_7_2: Fraction
    value: int

    @property
    def holds(self) -> bool:
        return self.lower <= self.value <= self.upper <= self.upper_7_2


def gauss_bounds(a: int, b: int, q: int) -> GaussBounds:
    """q^{b(a-b)} <= [a choose b] <= rho q^{b(a-b)} <= 7/2 q^{b(a-b)}."""
    if not (a >= b >= 0 and q >= 2):
        raise ValueError("gauss_bounds needs a >= b >= 0 and q >= 2")
    base = q ** (b * (a - b))
    return GaussBounds(base, rho(q) * base, Fraction(7, 2) * base, gauss(a, b, q))


@dataclass(frozen=True)
class CancellationGap:
    gap: int
    bound: Fraction
    bound_12: Fraction
    bound_3_2: Fraction | None  # only stated for q >= 7

    @property
    def holds(self) -> bool:
        ok = self.gap <= self.bound <= self.bound_12
        if self.bound_3_2 is not None:
            ok = ok and self.bound <= self.bound_3_2
        return ok


def cancellation_gap(a: int, b: int, x: int, q: int) -> CancellationGap:
    """Gap [a,b] - q^{bx}[a-x,b] and its bounds rho(1+1/(q-1)) q^{x+(b-1)(a-b)-1}.

    The bound exponent can be negative for small a, so all bounds are
    exact fractions.
    """
    if not (a >= x >= 1 and a >= b >= 2 and q >= 2):
        raise ValueError("cancellation_gap needs a >= x >= 1, a >= b >= 2, q >= 2")
    gap = gauss(a, b, q) - q ** (b * x) * gauss(a - x, b, q)
    power = Fraction(q) ** (x + (b - 1) * (a - b) - 1)
    bound = rho(q) * (1 + Fraction(1, q - 1)) * power
    bound_12 = (1 + Fraction(12, q)) * power
    bound_3_2 = Fraction(3, 2) * power if q >= 7 else None
    return CancellationGap(gap, bound, bound_12, bound_3_2)


def pascal_holds(a: int, b: int, q: int) -> bool:
    """Both q-Pascal recurrences for 1 <= b <= a."""
    g = gauss(a, b, q)
    first = q ** b * gauss(a - 1, b, q) + gauss(a - 1, b - 1, q)
    second = q ** (a - b) * gauss(a - 1, b - 1, q) + gauss(a - 1, b, q)
    return g == first == second


def q_number_bound_holds(a: int, q: int) -> bool:
    """[a] <= q/(q-1) q^{a-1} <= 2 q^{a-1} for a >= 1."""
    mid = Fraction(q, q - 1) * q ** (a - 1)
    return q_number(a, q) <= mid <= 2 * q ** (a - 1)


def leading_coefficient(a: int, b: int) -> int:
    """Leading coefficient of [a choose b] as a polynomial in q (it is 1)."""
    # coefficients via the q-Pascal recurrence on integer polynomials
    table: dict[tuple[int, int], list[int]] = {}

    def poly(x: int, y: int) -> list[int]:
        if y < 0 or y > x:
            return [0]
        if y == 0 or y == x:
            return [1]
        if (x, y) not in table:
            left = [0] * y + poly(x - 1, y)
            right = poly(x - 1, y - 1)
            out = [0] * max(len(left), len(right))
            for i, c in enumerate(left):
                out[i] += c
            for i, c in enumerate(right):
                out[i] += c
            table[(x, y)] = out
        return table[(x, y)]

    coeffs = poly(a, b)
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs[-1]
