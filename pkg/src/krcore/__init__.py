"""Maximal and maximum (k,r)-core mining on attributed graphs."""

from .clique import clique_based_enum, maximal_cliques
from .enumeration import EnumResult, advanced_enum, check_maximal, early_termination, naive_enum
from .graph import AttributedGraph, KeywordAttr, PointAttr, connected_components, degree_in, induced_edge_count, k_core
from .maximum import BoundKind, MaxResult, find_maximum, ub_color, ub_kcore, ub_kkcore, ub_naive
from .oracle import brute_force_maximum, brute_force_mkrc
from .ordering import OrderStrategy
from .search import Branch, KrCore, SearchState, preprocess, promote_validated, refine, sf_set
from .similarity import Metric, Threshold, build_similarity_index, is_similar, similarity_graph, similarity_score

__all__ = [
    "AttributedGraph", "BoundKind", "Branch", "EnumResult", "KeywordAttr", "KrCore", "MaxResult", "Metric",
    "OrderStrategy", "PointAttr", "SearchState", "Threshold", "advanced_enum", "brute_force_maximum",
    "brute_force_mkrc", "build_similarity_index", "check_maximal", "clique_based_enum", "connected_components",
    "degree_in", "early_termination", "find_maximum", "induced_edge_count", "is_similar", "k_core",
    "maximal_cliques", "naive_enum", "preprocess", "promote_validated", "refine", "sf_set", "similarity_graph",
    "similarity_score", "ub_color", "ub_kcore", "ub_kkcore", "ub_naive",
]
