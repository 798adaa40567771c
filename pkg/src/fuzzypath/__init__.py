"""Fuzzy shortest paths with generalized Gaussian fuzzy edge costs."""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    EmptyInput,
    FuzzyPathError,
    InvalidPath,
    ParseError,
    RejectionExhausted,
    TooLarge,
    Unreachable,
    ValidationError,
)
from .ggfn import Ggfn, Interval, add, alpha_cut, fold_sum, membership, nonneg_feasible, scale
from .network import HeightRegime, Network, generate_instance, parse_edge_list, write_edge_list
from .ranking import RiskParams, r_benefit, r_cost
from .solver import Path, PathLabel, dijkstra_crisp, dijkstra_ranked, enumerate_best, path_aggregate
