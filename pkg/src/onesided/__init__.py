"""Exact construction and verification of one-sided weak approximants for
convex sets."""
from .chains import (ChainFamily, IntervalChain, build_family, complete_family,
                     family_stab_fraction, stabs, verify_family)
from .discrepancy import (DiscrepancyReport, WeightedPointSet, eps_net_check,
                          one_sided_discrepancy_exact, proposition_witness,
                          sampled_discrepancy, two_sided_discrepancy_exact)
from .estimator import OneSidedApproximator, check_points
from .exceptions import ApproxError
from .generators import GeneratorSpec, generate
from .geometry import (PointSequence, common_point, hulls_intersect,
                       in_convex_hull, is_general_position, orient)
from .homogeneous import (is_orientation_homogeneous,
                          longest_homogeneous_subsequence, parity_same_side)
from .pipeline import (PipelineParams, PipelineTrace, compute_params,
                       construct_approximant, construct_homogeneous_fast,
                       perturb_and_construct)
from .regularity import (Hypergraph, Partition, check_partition,
                         equalize_parts, heuristic_partition, independent_set)
from .tverberg import point_selection_check, radon_point, tverberg_point

__version__ = "0.1.0"

__all__ = [
    "ApproxError", "ChainFamily", "DiscrepancyReport", "GeneratorSpec", "Hypergraph",
    "IntervalChain", "OneSidedApproximator", "Partition", "PipelineParams", "PipelineTrace",
    "PointSequence", "WeightedPointSet", "build_family", "check_partition", "check_points",
    "common_point", "complete_family", "compute_params", "construct_approximant",
    "construct_homogeneous_fast", "eps_net_check", "equalize_parts", "family_stab_fraction",
    "generate", "heuristic_partition", "hulls_intersect", "in_convex_hull", "independent_set",
    "is_general_position", "is_orientation_homogeneous", "longest_homogeneous_subsequence",
    "one_sided_discrepancy_exact", "orient", "parity_same_side", "perturb_and_construct",
    "point_selection_check", "proposition_witness", "radon_point", "sampled_discrepancy",
    "stabs", "tverberg_point", "two_sided_discrepancy_exact", "verify_family",
]
