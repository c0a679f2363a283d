"""Colored polynomial partitioning and its Dickson-polynomial obstruction."""

from .errors import (BoundViolation, BudgetExceeded, DimensionMismatch, GenericPositionViolated,
                     NoCandidate, ParseError, SearchFailed)
from .f2dickson import F2Poly, MonomialIdeal, dickson_product, dickson_symmetric, obstruction_check
from .hamsandwich import Hyperplane, SearchConfig, bisect, bisect_exact, bisect_search, certify
from .partition import (CellTable, PartitionResult, choose_subspace, count_cells, partition_families,
                        partition_points, verify_bounds)
from .phimap import PhiValue, TupleY, act, act_codomain, check_equivariance, phi, search_phi_zero
from .polyring import (Polynomial, Sign, evaluate, evaluate_many, monomial_basis, multiply,
                       sign_region, veronese_lift)
from .schedule import DegreeSchedule, PartitionParams, cell_bound_constant, compute_delta, compute_schedule
from .varieties import Family, Kind, Variety, crossing_count, indicator, witness_points

__version__ = "0.1.0"

__all__ = [
    "act", "act_codomain", "bisect", "bisect_exact", "bisect_search", "BoundViolation",
    "BudgetExceeded", "cell_bound_constant", "CellTable", "certify", "check_equivariance",
    "choose_subspace", "compute_delta", "compute_schedule", "count_cells", "crossing_count",
    "DegreeSchedule", "dickson_product", "dickson_symmetric", "DimensionMismatch", "evaluate",
    "evaluate_many", "F2Poly", "Family", "GenericPositionViolated", "Hyperplane", "indicator",
    "Kind", "monomial_basis", "MonomialIdeal", "multiply", "NoCandidate", "obstruction_check",
    "ParseError", "partition_families", "partition_points", "PartitionParams", "PartitionResult",
    "phi", "PhiValue", "Polynomial", "search_phi_zero", "SearchConfig", "SearchFailed", "Sign",
    "sign_region", "TupleY", "Variety", "verify_bounds", "veronese_lift", "witness_points",
]
