#!/usr/bin/env python3
"""Regenerate src/qmatch/data/bounds_golden.json.

Deliberately standalone: no qmatch import. Gaussian coefficients come from
the product formula, the q-number from its closed form, and every
comparison a <= q^(e/d) is done as a^d <= q^e on exact rationals.
"""
import json
import sys
from fractions import Fraction
from math import floor
from pathlib import Path

PINNED = [
    (4, 2, 2, "2"), (4, 2, 3, "1"), (4, 2, 32, "2"), (5, 2, 2, "3"),
    (5, 2, 7, "1"), (6, 2, 3, "7/3"), (6, 3, 2, "1"), (8, 2, 2, "1/2"),
    (9, 4, 2, "1"), (9, 2, 8, "9/2"), (10, 3, 8, "5"), (11, 3, 9, "3"),
    (12, 3, 7, "2"), (13, 4, 7, "15/7"), (16, 4, 2, "1"), (18, 3, 2, "2"),
    (20, 2, 2, "2"), (30, 2, 2, "4"), (40, 3, 3, "10"), (64, 2, 2, "64"),
]


def qnum(a, q):
    return (q ** a - 1) // (q - 1)


def gauss(a, b, q):
    if b < 0 or b > a:
        return 0
    num = den = 1
    for i in range(b):
        num *= q ** (a - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def cmp(lhs, e, d, q):
    """(holds, margin) for lhs <= q^(e/d)."""
    left = lhs ** d
    right = Fraction(q) ** e
    return left <= right, left - right


def row(n, k, q, s):
    s = Fraction(s)
    m, r = n // k, n % k
    mt = -(-n // k)
    rt = mt * k - n
    ell = 1
    while qnum(ell, q) < s:
        ell += 1
    tau = 1 if ell >= r + 2 else q ** (r - ell + 2)
    z = (q ** n - q ** (k + r)) // (q ** k - 1) + 1
    g1, g2 = gauss(n - 1, k - 1, q), gauss(n - 2, k - 2, q)
    out = {
        "n": n, "k": k, "q": q, "s": str(s), "m": m, "r": r,
        "m_tilde": mt, "r_tilde": rt, "ell": ell, "tau": tau, "z": z,
        "y": str(s * (g1 - qnum(ell - 1, q) * g2)),
        "trivial_em": str(s * g1), "trivial_bilinear": str(s * (g1 - g2)),
    }
    L = 16 * s
    main = [cmp(L, n - k - ell + 2, 3, q), cmp(L, n - k - r, 3, q), cmp(L, n - 2 * k + 2, 2, q)]
    out["main_holds"] = all(h for h, _ in main)
    out["main_margins"] = [str(mg) for _, mg in main]
    simple = [cmp(L, n - k, 4, q), cmp(L, n - 2 * k + 1, 3, q)]
    out["main_simplified_holds"] = all(h for h, _ in simple)
    cl = [cmp(L, n - k - ell + 2, 3, q), cmp(L, n - 2 * k - rt + 1, 3, q)]
    out["cl_holds"] = all(h for h, _ in cl)
    out["cl_margins"] = [str(mg) for _, mg in cl]
    out["cl_empty_range"] = 4 * k < 2 * n < 5 * k
    out["cl_delegated"] = n == 2 * k
    if n >= 2 * k + 1 and q >= 7:
        out["disjoint_holds"] = s ** 3 <= Fraction(q) ** (n - 2 * k - rt + 1)
        slack = floor(s) - s + 1
        low = Fraction(q - 1, q ** (rt + 1))
        out["disjoint_sufficient"] = 8 * slack * q ** (n - 2 * k + 1) > 6 * s ** 3
        out["disjoint_sufficient_divisibility"] = 8 * low * q ** (n - 2 * k + 1) > 6 * s ** 3
    else:
        out["disjoint_holds"] = None
    return out


def main(path=None):
    path = Path(path or Path(__file__).resolve().parents[1] / "src/qmatch/data/bounds_golden.json")
    rows = [row(*t) for t in PINNED]
    path.write_text(json.dumps(rows, indent=1) + "\n")
    print(f"wrote {len(rows)} rows to {path}")


if __name__ == "__main__":
    main(*sys.argv[1:])
