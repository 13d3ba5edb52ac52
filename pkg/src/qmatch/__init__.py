"""Exact tools for Erdos-Matching type problems on subspaces of F_q^n.

Finite fields, q-binomials, subspace catalogs, partial spreads, families
of k-spaces with certified matching and cover numbers, a degree-1
(Cameron-Liebler) verifier, theorem-condition evaluation and small
exact/heuristic searches.
"""

from .gf import field_of_order, field_make, Matrix, rref, rank
from .qcomb import gauss, q_number, gauss_bounds, cancellation_gap
from .geometry import (Catalog, ProjectiveSpace, Subspace, space, z_value,
                       enumerate_subspaces, beutelspacher_spread, spread_census,
                       count_disjoint_to, elliptic_quadric)
from .families import (Family, dictator, dual_dictator, pencil_union, secant_family,
                       footnote_construction, bilinear_family, is_intersecting,
                       matching_number, is_sEM, cover_number)
from .bounds import derive, thm_main_condition, thm_cl_condition, fix_joz_condition
from .cl import is_degree_one, spread_constant_check, classify_trivial, cl_report
from .search import SearchConfig, exact_max_em, local_search_em, conjecture_audit

__version__ = "0.1.0"
