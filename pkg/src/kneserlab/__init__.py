"""kneserlab: Kneser graphs, random subgraphs, colorings and exact solvers."""

__version__ = "0.1.0"

from .subsets import GroundSet, KSubset, SizeLimitError
from .kneser import KneserParams, SampledGraph, full_graph, restrict, sample_subgraph, schrijver_view

__all__ = [
    "GroundSet",
    "KSubset",
    "SizeLimitError",
    "KneserParams",
    "SampledGraph",
    "full_graph",
    "restrict",
    "sample_subgraph",
    "schrijver_view",
    "__version__",
]
