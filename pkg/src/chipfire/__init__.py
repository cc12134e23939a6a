"""Chip-firing on multigraphs: divisors, reduction, ranks and gonality sequences."""

from .burning import BurnTrace, modified_dhar, reduce, reduce_early, semi_reduce
from .divisors import apply_script, enumerate_effective, equivalent
from .errors import DisconnectedGraphError, DomainError, InvariantViolation
from .gonality import gonality, gonality_sequence, has_rank_at_least, is_gon_gt, rank
from .graph import Multigraph, genus, parse_graph, format_graph

__all__ = [
    "BurnTrace", "DisconnectedGraphError", "DomainError", "InvariantViolation",
    "Multigraph", "apply_script", "enumerate_effective", "equivalent", "format_graph",
    "genus", "gonality", "gonality_sequence", "has_rank_at_least", "is_gon_gt",
    "modified_dhar", "parse_graph", "rank", "reduce", "reduce_early", "semi_reduce",
]
