"""
Skeletal fusion data: fusion rings, F-symbols, gauges and the pentagon.
"""

from .fsymbols import (
    FSymbolSet,
    dimension_report,
    quantum_dimensions,
    relabel_fsymbols,
    singular_blocks,
    unit_normalization_defects,
    unitarity_defect,
    verify_unitary,
)
from .gauge import (
    BlockGauge,
    Gauge,
    NatIso,
    adjoint_gauge,
    apply_gauge,
    coboundary_gauge,
    compose_gauges,
    gauge_distance,
    gauge_unitarity_residual,
    identity_gauge,
    invert_gauge,
    push_gauge,
    relabel_gauge,
)
from .pentagon import pentagon_check, verify_pentagon
from .ring import (
    ActionTable,
    FusionRing,
    cyclic_ring,
    fibonacci_ring,
    fp_dimensions,
    group_ring,
    is_ring_isomorphism,
    ising_ring,
    multiplicity_ring,
    positive_character_space,
    relabel_ring,
    trivial_ring,
    verify_ring_axioms,
)
from .sampling import (
    coboundary_twisted_gauge,
    random_gauge,
    random_invertible,
    random_positive,
    random_positive_nat_iso,
    random_unitary,
)

__all__ = [
    "ActionTable",
    "BlockGauge",
    "FSymbolSet",
    "FusionRing",
    "Gauge",
    "NatIso",
    "adjoint_gauge",
    "apply_gauge",
    "coboundary_gauge",
    "coboundary_twisted_gauge",
    "compose_gauges",
    "cyclic_ring",
    "dimension_report",
    "fibonacci_ring",
    "fp_dimensions",
    "gauge_distance",
    "gauge_unitarity_residual",
    "group_ring",
    "identity_gauge",
    "invert_gauge",
    "is_ring_isomorphism",
    "ising_ring",
    "multiplicity_ring",
    "pentagon_check",
    "positive_character_space",
    "push_gauge",
    "quantum_dimensions",
    "random_gauge",
    "random_invertible",
    "random_positive",
    "random_positive_nat_iso",
    "random_unitary",
    "relabel_fsymbols",
    "relabel_gauge",
    "relabel_ring",
    "singular_blocks",
    "trivial_ring",
    "unit_normalization_defects",
    "unitarity_defect",
    "verify_pentagon",
    "verify_ring_axioms",
    "verify_unitary",
]
