"""Succinct encoding of graphs given by boxes in d dimensions, t boxes per vertex."""
from ._backend import available as available_backends
from .bmm import BoolMatrix, build_GA, multiply_BC, multiply_via_neighbors
from .encoding import EncodedGraph, SpaceReport, decode_interval, encode, space_report
from .errors import (
    ArtifactError,
    BudgetExceededError,
    RepresentationError,
    TDGraphError,
    UnsupportedConfigurationError,
)
from .lowerbound import LowerBoundSpec, enumerate_lowerbound_family, gen_lowerbound
from .model import (
    Interval1D,
    NormalizedRepresentation,
    Representation,
    denormalize_vertex,
    format_representation,
    normalize,
    parse_representation,
)
from .oracle import OracleGraph, gen_random, oracle_build
from .query import QueryEngine, QueryStats, adj, deg, neighbor_fast_d1, neighbor_naive

__all__ = [
    "ArtifactError",
    "BoolMatrix",
    "BudgetExceededError",
    "EncodedGraph",
    "Interval1D",
    "LowerBoundSpec",
    "NormalizedRepresentation",
    "OracleGraph",
    "QueryEngine",
    "QueryStats",
    "Representation",
    "RepresentationError",
    "SpaceReport",
    "TDGraphError",
    "UnsupportedConfigurationError",
    "adj",
    "available_backends",
    "build_GA",
    "decode_interval",
    "deg",
    "denormalize_vertex",
    "encode",
    "enumerate_lowerbound_family",
    "format_representation",
    "gen_lowerbound",
    "gen_random",
    "multiply_BC",
    "multiply_via_neighbors",
    "neighbor_fast_d1",
    "neighbor_naive",
    "normalize",
    "oracle_build",
    "parse_representation",
    "space_report",
]
