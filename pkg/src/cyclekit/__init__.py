"""Cycle-length and expander-gadget toolkit for small and medium graphs."""

from .errors import CapacityError, DomainError, NotFound, PreconditionError, Unknown
from .graph import Graph, Path, build_graph, degrees

__all__ = [
    "CapacityError",
    "DomainError",
    "Graph",
    "NotFound",
    "Path",
    "PreconditionError",
    "Unknown",
    "build_graph",
    "degrees",
]
__version__ = "0.1.0"
