"""
Module categories over fusion categories: L-symbols, the module pentagon and
unitarization of module equivalences.
"""

from .equivalence import (
    ModuleEquivalenceData,
    ModuleFactorization,
    ModuleTrivialization,
    ModuleUnitarization,
    factorize_module_equivalence,
    identity_module_equivalence,
    is_module_isomorphism,
    module_coherence_residual,
    module_nat_iso_residual,
    polar_split_module_nat_iso,
    relabel_module,
    trivialize_positive_module,
    unitarize_module_equivalence,
)
from .module import (
    ModuleData,
    ModuleGauge,
    ModuleNatIso,
    action_components,
    apply_module_gauge,
    coboundary_twisted_module_gauge,
    connected_components,
    identity_module_gauge,
    module_coboundary_gauge,
    random_unitary_module_gauge,
    regular_module,
    verify_module_pentagon,
    verify_module_unitary,
)

__all__ = [
    "ModuleData",
    "ModuleEquivalenceData",
    "ModuleFactorization",
    "ModuleGauge",
    "ModuleNatIso",
    "ModuleTrivialization",
    "ModuleUnitarization",
    "action_components",
    "apply_module_gauge",
    "coboundary_twisted_module_gauge",
    "connected_components",
    "factorize_module_equivalence",
    "identity_module_equivalence",
    "identity_module_gauge",
    "is_module_isomorphism",
    "module_coboundary_gauge",
    "module_coherence_residual",
    "module_nat_iso_residual",
    "polar_split_module_nat_iso",
    "random_unitary_module_gauge",
    "regular_module",
    "relabel_module",
    "trivialize_positive_module",
    "unitarize_module_equivalence",
    "verify_module_pentagon",
    "verify_module_unitary",
]
