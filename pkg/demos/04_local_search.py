"""Seeded hill climbing for large s-EM families at q = 3, 4.

Starts from unions of dictators and dual dictators and the mixed pencil
construction of size s(q^2+q)+2, then tries single additions and swaps.
"""
from qmatch.search import SearchConfig, local_search_em

for q, s in [(3, 2), (3, 3), (4, 2)]:
    rep = local_search_em(SearchConfig(4, 2, q, s, mode="local", seed=1, iterations=300, restarts=3))
    b = rep.benchmarks
    print(f"q={q} s={s}: found {rep.size}, s(q^2+q)+2 = {b['mixed_union']}, "
          f"trivial {b['trivial_em']}, matching certificate {rep.certificate.value}")
