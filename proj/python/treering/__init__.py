"""Simulator, exhaustive explorer and verification harness for a
self-stabilising tree-to-ring construction protocol."""

from ._treering import (
    Tree,
    TreeParseError,
    TreeValidationError,
    __version__,
    catalan,
    enumerate_topologies,
    explore,
    parse_tree,
    run,
    stats,
    validate_triples_text,
)

__all__ = [
    "Tree",
    "TreeParseError",
    "TreeValidationError",
    "__version__",
    "catalan",
    "enumerate_topologies",
    "explore",
    "parse_tree",
    "run",
    "stats",
    "validate_triples_text",
]
