"""Recoverable distributed storage codes on graphs: capacity bounds, constructions, verification,
and the bridge to index codes."""

__version__ = "0.1.0"

from .code import Code, bounds_report, capacity_exact, min_distance, verify_rdss
from .config import Limits
from .errors import CapExceeded, FormatError, NotApplicable, RDSSError, VerificationError
from .graph import Graph, parse_graph, serialize_graph

__all__ = [
    "Code",
    "Graph",
    "Limits",
    "CapExceeded",
    "FormatError",
    "NotApplicable",
    "RDSSError",
    "VerificationError",
    "bounds_report",
    "capacity_exact",
    "min_distance",
    "parse_graph",
    "serialize_graph",
    "verify_rdss",
]
