"""Exact tools for f-matchings, the f-matching polytope and the fractional
f-chromatic index of weighted multigraphs."""

from .graph_core import (
    CapExceededError, GraphFormatError, Multigraph, WeightedGraph, boundary, cut_edges,
    degree, f_sum, format_graph, induced_edges, parse_graph,
)
from .matching import FMatching, enumerate_all, enumerate_maximal, indicator, is_f_matching
from .parameters import (
    ParameterReport, delta, delta_star, density, density_star, gamma, gamma_star,
    lemma5_holds, parameter_report,
)
from .polytope import (
    ConstraintViolation, Member, NonMember, QSystemVariant, check_system, membership,
    separating_check,
)
from .chromatic import (
    BoundsReport, FractionalColouring, bounds_report, exact_index, frac_index_formula,
    frac_index_lp,
)

__version__ = "0.1.0"
