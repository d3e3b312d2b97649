"""Numerical laboratory for weighted backward shifts on directed trees."""

from .errors import (DegenerateExponents, InvalidArgument, MalformedAddress, NeedsLargerN,
                     NotAnAncestor, TreeShiftError, Unsupported)
from .trees import (INF, ROOT, TreeSpec, VertexAddr, children_n, count_descendants, dyadic,
                    find_fertile, generation, menthe, menthe_vertex, nadic, parent,
                    spine_tree, staircase, staircase_vertex, table_tree)
from .vectors import C0, L1, SparseVector, SpaceTag, cw_product, indicator, lp, norm, power
from .weights import (WeightFamily, make_bilateral_rolewicz, make_dyadic_counterexample,
                      make_fertile_no_algebra, make_menthe, make_menthe_geometric,
                      make_rolewicz, make_symmetric, make_table, operator_norm,
                      path_product, theta)
from .shift import apply, orbit_norms
from .criteria import (assemble_verdict, crit_left, crit_ratio, crit_sum, crit_sup)
from .witnesses import (build_rooted, build_unrooted_algebra, build_unrooted_power,
                        keylemma_optimal, right_inverse, solve_exponents)

__version__ = "0.1.0"

__all__ = [
    "DegenerateExponents", "InvalidArgument", "MalformedAddress", "NeedsLargerN",
    "NotAnAncestor", "TreeShiftError", "Unsupported", "INF", "ROOT", "TreeSpec",
    "VertexAddr", "children_n", "count_descendants", "dyadic", "find_fertile", "generation",
    "menthe", "menthe_vertex", "nadic", "parent", "spine_tree", "staircase",
    "staircase_vertex", "table_tree", "C0", "L1", "SparseVector", "SpaceTag", "cw_product",
    "indicator", "lp", "norm", "power", "WeightFamily", "make_bilateral_rolewicz",
    "make_dyadic_counterexample", "make_fertile_no_algebra", "make_menthe",
    "make_menthe_geometric", "make_rolewicz", "make_symmetric", "make_table",
    "operator_norm", "path_product", "theta", "apply", "orbit_norms", "assemble_verdict",
    "crit_left", "crit_ratio", "crit_sum", "crit_sup", "build_rooted",
    "build_unrooted_algebra", "build_unrooted_power", "keylemma_optimal", "right_inverse",
    "solve_exponents",
]
