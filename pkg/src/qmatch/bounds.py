"""Derived parameters for (n, k, q, s) and exact evaluation of theorem conditions.

Every comparison of the form ``a <= q^(e/d)`` is decided as ``a^d <= q^e``
over exact rationals; nothing here uses floating point.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from math import floor
from numbers import Rational

from .geometry import z_value
from .qcomb import gauss, q_number


def _frac(s) -> Fraction:
    if isinstance(s, str):
        return Fraction(s)
    if isinstance(s, (int, Rational)):
        return Fraction(s)
    raise TypeError("s must be an integer, Fraction or rational string")


def _qpow(q: int, e: int) -> Fraction:
    return Fraction(q) ** e


@dataclass(frozen=True)
class Comparison:
    """``lhs <= q^(exponent/root)`` decided as ``lhs^root <= q^exponent``."""

    lhs: Fraction
    exponent: int
    root: int
    q: int

    @property
    def holds(self) -> bool:
        return self.lhs ** self.root <= _qpow(self.q, self.exponent)

    @property
    def margin(self) -> Fraction:
        """lhs^root - q^exponent; nonpositive iff the inequality holds."""
        return self.lhs ** self.root - _qpow(self.q, self.exponent)

    def as_dict(self) -> dict:
        return {"exponent": f"{self.exponent}/{self.root}", "holds": self.holds,
                "margin": str(self.margin)}


@dataclass(frozen=True)
class ParamSet:
    n: int
    k: int
    q: int
    s: Fraction
    m: int
    r: int
    m_tilde: int
    r_tilde: int
    ell: int
    tau: int
    z: int
    y: Fraction
    trivial_em: Fraction
    trivial_bilinear: Fraction

    def as_dict(self) -> dict:
        d = asdict(self)
        for key in ("s", "y", "trivial_em", "trivial_bilinear"):
            d[key] = str(d[key])
        return d


def derive(n: int, k: int, q: int, s) -> ParamSet:
    """All derived quantities for the tuple (n, k, q, s); s may be rational."""
    s = _frac(s)
    if not (k >= 1 and n >= 2 * k):
        raise ValueError("need n >= 2k >= 2")
    if q < 2:
        raise ValueError("need q >= 2")
    if s <= 0:
        raise ValueError("need s > 0")
    m, r = divmod(n, k)
    m_tilde = -(-n // k)
    r_tilde = m_tilde * k - n
    ell = 1
    while q_number(ell, q) < s:
        ell += 1
    tau = 1 if ell >= r + 2 else q ** (r - ell + 2)
    g1 = gauss(n - 1, k - 1, q)
    g2 = gauss(n - 2, k - 2, q)
    return ParamSet(
        n=n, k=k, q=q, s=s, m=m, r=r, m_tilde=m_tilde, r_tilde=r_tilde,
        ell=ell, tau=tau, z=z_value(n, k, q),
        y=s * (g1 - q_number(ell - 1, q) * g2),
        trivial_em=s * g1,
        trivial_bilinear=s * (g1 - g2),
    )


@dataclass(frozen=True)
class ConditionReport:
    holds: bool
    parts: dict[str, Comparison]
    notes: tuple[str, ...] = ()
    extra: dict | None = None

    @property
    def margins(self) -> dict[str, Fraction]:
        return {name: c.margin for name, c in self.parts.items()}

    def as_dict(self) -> dict:
        out = {"holds": self.holds, "parts": {k: v.as_dict() for k, v in self.parts.items()},
               "notes": list(self.notes)}
        if self.extra:
            out.update(self.extra)
        return out


def thm_main_condition(ps: ParamSet) -> ConditionReport:
    """16s <= min{q^((n-k-l+2)/3), q^((n-k-r)/3), q^(n/2-k+1)}, plus the
    simplified form 16s <= min{q^((n-k)/4), q^((n-2k+1)/3)}."""
    n, k, q, lhs = ps.n, ps.k, ps.q, 16 * ps.s
    parts = {
        "(n-k-l+2)/3": Comparison(lhs, n - k - ps.ell + 2, 3, q),
        "(n-k-r)/3": Comparison(lhs, n - k - ps.r, 3, q),
        "n/2-k+1": Comparison(lhs, n - 2 * k + 2, 2, q),
    }
    simple = {
        "(n-k)/4": Comparison(lhs, n - k, 4, q),
        "(n-2k+1)/3": Comparison(lhs, n - 2 * k + 1, 3, q),
    }
    simple_holds = all(c.holds for c in simple.values())
    holds = all(c.holds for c in parts.values())
    return ConditionReport(holds, parts, extra={
        "simplified": {"holds": simple_holds, "parts": {k_: v.as_dict() for k_, v in simple.items()}},
    })


def cl_empty_range(n: int, k: int) -> bool:
    """2k < n < 5k/2, where the Cameron-Liebler condition admits no s >= 1."""
    return 2 * k < n and 2 * n < 5 * k


def thm_cl_condition(ps: ParamSet) -> ConditionReport:
    """16s <= min{q^((n-k-l+2)/3), q^((n-2k-r~+1)/3)} for Cameron-Liebler classes."""
    n, k, q, lhs = ps.n, ps.k, ps.q, 16 * ps.s
    parts = {
        "(n-k-l+2)/3": Comparison(lhs, n - k - ps.ell + 2, 3, q),
        "(n-2k-r~+1)/3": Comparison(lhs, n - 2 * k - ps.r_tilde + 1, 3, q),
    }
    notes = []
    extra: dict = {}
    if n == 2 * k:
        # n = 2k is covered by the separate criterion 5|Y| <= q [n-1, k-1]
        notes.append("n = 2k: delegated to the criterion 5|Y| <= q[n-1 choose k-1]")
        extra["delegated"] = True
        extra["delegated_holds"] = 5 * ps.s <= q
    else:
        extra["delegated"] = False
    # no s >= 1 works iff the smallest case s = 1 (l = 1) fails
    unit = [Comparison(Fraction(16), n - k + 1, 3, q),
            Comparison(Fraction(16), n - 2 * k - ps.r_tilde + 1, 3, q)]
    extra["no_s_satisfies"] = not all(c.holds for c in unit)
    extra["empty_range"] = cl_empty_range(n, k)
    if extra["empty_range"]:
        notes.append("2k < n < 5k/2: statement is empty")
    holds = all(c.holds for c in parts.values())
    return ConditionReport(holds, parts, tuple(notes), extra)


@dataclass(frozen=True)
class DisjointBoundReport:
    holds: bool
    sufficient: bool
    sufficient_divisibility: bool
    slack: Fraction
    slack_lower: Fraction

    def as_dict(self) -> dict:
        return {"holds": self.holds, "sufficient": self.sufficient,
                "sufficient_divisibility": self.sufficient_divisibility,
                "slack": str(self.slack), "slack_lower": str(self.slack_lower)}


def fix_joz_condition(n: int, k: int, q: int, s) -> DisjointBoundReport:
    """Condition s^3 <= q^(n-2k-r~+1) under which a Cameron-Liebler class of
    size s[n-1, k-1] has at most s pairwise disjoint members (n >= 2k+1, q >= 7).

    Also evaluates 8(floor(s)-s+1) q^(n-2k+1) > 6 s^3 with the actual slack
    floor(s)-s+1 and with its lower bound (q-1) q^(-r~-1).
    """
    s = _frac(s)
    if n < 2 * k + 1:
        raise ValueError("need n >= 2k + 1")
    if q < 7:
        raise ValueError("need q >= 7")
    if s <= 0:
        raise ValueError("need s > 0")
    m_tilde = -(-n // k)
    r_tilde = m_tilde * k - n
    holds = s ** 3 <= _qpow(q, n - 2 * k - r_tilde + 1)
    slack = floor(s) - s + 1
    slack_lower = Fraction(q - 1) * _qpow(q, -r_tilde - 1)
    rhs = 6 * s ** 3
    sufficient = 8 * slack * _qpow(q, n - 2 * k + 1) > rhs
    sufficient_div = 8 * slack_lower * _qpow(q, n - 2 * k + 1) > rhs
    return DisjointBoundReport(holds, sufficient, sufficient_div, slack, slack_lower)


def table_row(n: int, k: int, q: int, s) -> dict:
    """Flat record used by the bounds table."""
    ps = derive(n, k, q, s)
    main = thm_main_condition(ps)
    cl = thm_cl_condition(ps)
    row = {
        "n": n, "k": k, "q": q, "s": str(ps.s),
        "m": ps.m, "r": ps.r, "m_tilde": ps.m_tilde, "r_tilde": ps.r_tilde,
        "ell": ps.ell, "tau": ps.tau, "z": ps.z, "y": str(ps.y),
        "trivial_em": str(ps.trivial_em), "trivial_bilinear": str(ps.trivial_bilinear),
        "main_holds": main.holds,
        "main_simplified_holds": main.extra["simplified"]["holds"],
        "cl_holds": cl.holds,
        "cl_empty_range": cl.extra["empty_range"],
        "cl_delegated": cl.extra["delegated"],
    }
    for name, c in main.parts.items():
        row[f"main_margin[{name}]"] = str(c.margin)
    for name, c in cl.parts.items():
        row[f"cl_margin[{name}]"] = str(c.margin)
    if n >= 2 * k + 1 and q >= 7:
        fj = fix_joz_condition(n, k, q, ps.s)
        row["disjoint_bound_holds"] = fj.holds
        row["disjoint_bound_sufficient"] = fj.sufficient_divisibility
    else:
        row["disjoint_bound_holds"] = None
        row["disjoint_bound_sufficient"] = None
    return row
