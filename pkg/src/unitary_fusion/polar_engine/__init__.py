"""
Positive roots, polar decompositions and the transport identity.
"""

from .polar import (
    PolarPair,
    is_positive_gauge,
    polar_decompose_gauge,
    polar_decompose_matrix,
    transport_check,
)
from .roots import absolute_value, hermitian_sqrt, is_positive, positive_log, positive_nth_root

__all__ = [
    "PolarPair",
    "absolute_value",
    "hermitian_sqrt",
    "is_positive",
    "is_positive_gauge",
    "polar_decompose_gauge",
    "polar_decompose_matrix",
    "positive_log",
    "positive_nth_root",
    "transport_check",
]
