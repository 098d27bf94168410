"""
Unitarization of monoidal equivalences and natural isomorphisms.
"""

from .equivalence import (
    EquivalenceData,
    compose_equivalences,
    gauged_equivalence,
    identity_equivalence,
    relabeled_target,
    verify_equivalence,
)
from .factorize import (
    Factorization,
    Unitarization,
    complete_unitarization,
    factorize_equivalence,
    require_unitary_presentations,
    unitarize_equivalence,
)
from .natiso import NatIsoUnitarization, monoidality_residual, unitarize_nat_iso
from .search import GaugeSearch, search_unitary_gauge
from .trivialize import Trivialization, trivialize_positive_monoidal

__all__ = [
    "EquivalenceData",
    "Factorization",
    "GaugeSearch",
    "NatIsoUnitarization",
    "Trivialization",
    "Unitarization",
    "complete_unitarization",
    "compose_equivalences",
    "factorize_equivalence",
    "gauged_equivalence",
    "identity_equivalence",
    "monoidality_residual",
    "relabeled_target",
    "require_unitary_presentations",
    "search_unitary_gauge",
    "trivialize_positive_monoidal",
    "unitarize_equivalence",
    "unitarize_nat_iso",
    "verify_equivalence",
]
