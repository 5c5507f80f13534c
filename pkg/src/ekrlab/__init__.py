"""Kneser-graph models, container certificates and Monte Carlo measurements
of the largest intersecting family in random k-uniform hypergraphs."""
from .combinatorics import KSubset, binomial, colex_rank, colex_unrank, disjoint
from .errors import ContractViolation, InconsistentFingerprintError, ParameterError, ResourceError
from .graph import ExplicitGraph
from .indep import (
    ISResult,
    degree_greedy_is,
    deletion_lower_bound,
    max_independent_set,
    shearer_bound,
    stability_distance,
    triangle_free_reduce,
)
from .kneser import KneserParams, is_edge, kneser_params, materialize, neighbors, principal_family
from .regimes import RegimePrediction, classify_and_predict, thresholds, transference_bounds
from .sampling import SampleSpec, chernoff_lower, chernoff_upper, induced_subgraph, sample_vertices
from .spectral import SupersatParams, hoffman_lower_bound, kneser_supersat_params, verify_hoffman, verify_supersaturation

__version__ = "0.1.0"
