"""
Finite-group cohomology with C^x coefficients in low degree, and the
Vec_G^omega bridge to fusion data.
"""

from .cochain import (
    Cochain,
    CochainTrivialization,
    CocycleUnitarization,
    coboundary,
    coboundary_matrix,
    normalize,
    polar_split_cocycle,
    random_positive_coboundary,
    trivial_cochain,
    trivialize_positive_cocycle,
    unitarize_cocycle,
    verify_cocycle,
)
from .group import FiniteGroup, cyclic_group, direct_product, symmetric_group, verify_group_axioms
from .vecg import build_vecG_category, cocycle_from_fsymbols, gauge_from_cochain

__all__ = [
    "Cochain",
    "CochainTrivialization",
    "CocycleUnitarization",
    "FiniteGroup",
    "build_vecG_category",
    "coboundary",
    "coboundary_matrix",
    "cocycle_from_fsymbols",
    "cyclic_group",
    "direct_product",
    "gauge_from_cochain",
    "normalize",
    "polar_split_cocycle",
    "random_positive_coboundary",
    "symmetric_group",
    "trivial_cochain",
    "trivialize_positive_cocycle",
    "unitarize_cocycle",
    "verify_cocycle",
    "verify_group_axioms",
]
