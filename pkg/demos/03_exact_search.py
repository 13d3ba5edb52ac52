"""Largest s-EM families of lines in PG(3, 2), certified.

For each s the branch and bound proves the optimum, the result is checked
to have no s+1 pairwise disjoint lines, and the audit asks whether it is a
union of s intersecting families or the complement of one.
"""
from qmatch.search import SearchConfig, conjecture_audit, exact_max_em

for s in range(1, 6):
    rep = exact_max_em(SearchConfig(4, 2, 2, s))
    audit = conjecture_audit(rep.family, s)
    print(f"s={s}: max |Y| = {rep.size:2d} (trivial bound {rep.benchmarks['trivial_em']}), "
          f"optimal={rep.optimal}, {rep.nodes} nodes, cover number {rep.cover.value}")
    print(f"     audit: {audit.verdict}; {audit.reasons[0]}")
