"""Certificates for Linial's inequality pi_k(D) <= alpha_k(D) on spine digraphs."""

from .certificates import (
    Certificate,
    Coloring,
    KPartialColoring,
    KPath,
    PathPartition,
    coloring_k_norm,
    coloring_weight,
    k_norm,
    k_path_weight,
    validate_k_partial_coloring,
    validate_path_partition,
    verify_certificate,
)
from .constructions import FishboneResult, certify, fishbone
from .digraph import Digraph, adjacent, concat, is_path, is_stable_set, make_digraph
from .recognition import (
    LooseWitness,
    SpinePartition,
    ZigzagViolation,
    find_spine_partition,
    find_split_partition,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "Coloring",
    "Digraph",
    "FishboneResult",
    "KPartialColoring",
    "KPath",
    "LooseWitness",
    "PathPartition",
    "SpinePartition",
    "ZigzagViolation",
    "adjacent",
    "certify",
    "coloring_k_norm",
    "coloring_weight",
    "concat",
    "find_spine_partition",
    "find_split_partition",
    "fishbone",
    "is_path",
    "is_stable_set",
    "k_norm",
    "k_path_weight",
    "make_digraph",
    "validate_k_partial_coloring",
    "validate_path_partition",
    "verify_certificate",
]
