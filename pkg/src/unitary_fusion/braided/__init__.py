"""
Braided fusion data: R-symbols, hexagons and braided unitarization.
"""

from .factorize import (
    braided_compatibility_residual,
    braiding_commutation_residual,
    factorize_braided_equivalence,
    unitarize_braided_equivalence,
)
from .hexagon import verify_braiding_unitary, verify_hexagon
from .rsymbols import RSymbolSet, gauge_rsymbols, relabel_rsymbols, reverse_braiding

__all__ = [
    "RSymbolSet",
    "braided_compatibility_residual",
    "braiding_commutation_residual",
    "factorize_braided_equivalence",
    "gauge_rsymbols",
    "relabel_rsymbols",
    "reverse_braiding",
    "unitarize_braided_equivalence",
    "verify_braiding_unitary",
    "verify_hexagon",
]
