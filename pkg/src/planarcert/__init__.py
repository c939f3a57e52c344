"""Certifying planarity toolkit built on construction sequences.

The pipeline reduces planarity to incremental embedding of a 3-connected
construction sequence, maintaining a plane st-graph, and emits either a
rotation-system embedding or a K5/K3,3 subdivision, each independently
checkable.
"""

from .graph import Graph, GraphError, InvalidReferenceError, PreconditionError, dedupe_multiedges

__all__ = [
    "Graph",
    "GraphError",
    "InvalidReferenceError",
    "PreconditionError",
    "dedupe_multiedges",
]
