"""Approximate counting of cliques, independent sets and clique covers in G(n, p).

Sequential-embedding Monte Carlo estimators, brute-force exact counters used
as ground truth, and exact rational evaluation of the estimators' moments.
"""

from .analytic import (
    AnalyticContext,
    UndefinedRatioError,
    binomial_moment_closed,
    crr_clique,
    crr_cover_step,
    crr_cover_total,
    f_polynomial,
    falling_factorial,
    nesting_closed,
    stirling_closed,
)
from .estimators import (
    ConfigurationError,
    EmbedTrace,
    EstimateReport,
    SampleConfig,
    embed_clique_once,
    embed_cover_once,
    estimate,
    exact_expectation,
    required_samples,
)
from .graph import GenSpec, Graph, GraphFormatError, common_neighbors, generate_gnp, load_graph, remove_vertices, save_graph
from .oracles import (
    binomial_moment_bruteforce,
    count_clique_covers_exact,
    count_cliques_exact,
    count_independent_sets_exact,
    nesting_bruteforce,
)
from .polynomial import PPolynomial
from .scaled import ZERO, ScaledValue

__version__ = "0.1.0"

__all__ = [
    "AnalyticContext",
    "ConfigurationError",
    "EmbedTrace",
    "EstimateReport",
    "GenSpec",
    "Graph",
    "GraphFormatError",
    "PPolynomial",
    "SampleConfig",
    "ScaledValue",
    "UndefinedRatioError",
    "ZERO",
    "binomial_moment_bruteforce",
    "binomial_moment_closed",
    "common_neighbors",
    "count_clique_covers_exact",
    "count_cliques_exact",
    "count_independent_sets_exact",
    "crr_clique",
    "crr_cover_step",
    "crr_cover_total",
    "embed_clique_once",
    "embed_cover_once",
    "estimate",
    "exact_expectation",
    "f_polynomial",
    "falling_factorial",
    "generate_gnp",
    "load_graph",
    "nesting_bruteforce",
    "nesting_closed",
    "remove_vertices",
    "required_samples",
    "save_graph",
    "stirling_closed",
]
