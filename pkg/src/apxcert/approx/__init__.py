"""Approximation algorithms with declared ratio guarantees."""

from .base import ApproxOutcome, RoundingParams, trial_rng
from .congestion import (DecompositionError, alpha, build_congestion_lp, congestion_round,
                         make_acyclic, path_decompose, rationalize_flow, sample_path,
                         solve_fractional_routing)
from .graph import maxcut_derandomized, maxcut_random, vertexcover_matching
from .sat import max3sat_two_assignments
from .setcover import rounding_rounds, setcover_greedy, setcover_lp, setcover_lp_rounding
from .tsp import euler_circuit, minimum_spanning_tree, tsp_christofides, tsp_double_tree

__all__ = [
    "ApproxOutcome", "RoundingParams", "trial_rng", "DecompositionError", "alpha",
    "build_congestion_lp", "congestion_round", "make_acyclic", "path_decompose",
    "rationalize_flow", "sample_path", "solve_fractional_routing", "maxcut_derandomized",
    "maxcut_random", "vertexcover_matching", "max3sat_two_assignments", "rounding_rounds",
    "setcover_greedy", "setcover_lp", "setcover_lp_rounding", "euler_circuit",
    "minimum_spanning_tree", "tsp_christofides", "tsp_double_tree",
]
