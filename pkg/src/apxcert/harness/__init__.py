"""Corpus generation, ratio experiments, report emission and the CLI."""

from .experiments import (ALGORITHMS, CongestionReport, RatioReport, approximation_ratio,
                          run_congestion_experiment, run_ratio_experiment)
from .generators import (CorpusSpec, gen_random_cnf, gen_random_graph, gen_random_metric,
                         gen_random_network, gen_random_setcover, generate)
from .report import emit_report

__all__ = [
    "ALGORITHMS", "CongestionReport", "RatioReport", "approximation_ratio",
    "run_congestion_experiment", "run_ratio_experiment", "CorpusSpec", "gen_random_cnf",
    "gen_random_graph", "gen_random_metric", "gen_random_network", "gen_random_setcover",
    "generate", "emit_report",
]
