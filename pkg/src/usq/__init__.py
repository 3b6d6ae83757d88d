"""Isomorphism testing for unit square graphs."""

from .graph import DiagnosedFailure, Graph, format_graph, parse_graph

__all__ = ["DiagnosedFailure", "Graph", "format_graph", "parse_graph"]
__version__ = "0.1.0"
