"""
Monoidal natural isomorphisms between equivalences with a common underlying functor.

eta is monoidal when g^{ab}_c eta_c == eta_a eta_b f^{ab}_c on every vertex
(source labels, tensorators pulled back).
"""

import logging
from dataclasses import dataclass
from typing import Optional

import numpy as np

from ..config import UNITARITY_FACTOR
from ..errors import InconsistencyError, InputError, PreconditionError
from ..fusion_core.gauge import NatIso, gauge_unitarity_residual
from ..interface import CheckReport, make_check
from .equivalence import EquivalenceData

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NatIsoUnitarization:
    nat_iso: NatIso  # unit-modulus components
    certificate: float  # max |rho_a - 1| with rho = |eta|


def monoidality_residual(
    eta: NatIso, E1: EquivalenceData, E2: EquivalenceData, tol: Optional[float] = None
) -> CheckReport:
    """
    Residual of g o eta_{x (x) y} == (eta_x (x) eta_y) o f over all vertices.

    Args:
        eta: Components indexed by source simples
        E1: Equivalence carrying f
        E2: Equivalence carrying g, same simple map as E1

    Returns:
        CheckReport named "monoidality"

    Raises:
        InputError: If the equivalences do not share source ring and simple map
    """
    tol = E1.tol if tol is None else tol
    if E1.simple_map != E2.simple_map or E1.source.ring != E2.source.ring:
        raise InputError("natural isomorphisms need equivalences with one underlying functor")
    if eta.ring != E1.source.ring:
        raise InputError("natural isomorphism lives on a different ring")
    _, f = E1.pulled_back()
    _, g = E2.pulled_back()
    x = eta.components
    worst, first_bad = 0.0, ""
    for a, b, c in eta.ring.vertices():
        lhs = g.block(a, b, c) * x[c]
        rhs = x[a] * x[b] * f.block(a, b, c)
        scale = max(np.linalg.norm(lhs), np.linalg.norm(rhs))
        residual = float(np.linalg.norm(lhs - rhs) / scale)
        if residual > tol and not first_bad:
            first_bad = f"monoidality fails at vertex {(a, b, c)}"
        worst = max(worst, residual)
    return make_check("monoidality", worst, tol, first_bad)


def unitarize_nat_iso(
    eta: NatIso, E1: EquivalenceData, E2: EquivalenceData, tol: Optional[float] = None
) -> NatIsoUnitarization:
    """
    Split eta = u rho with rho = |eta| and certify rho == 1.

    rho is a positive character of the fusion ring, and fusion rings have no
    nontrivial positive characters, so a monoidal eta between unitary
    equivalences is already unitary.

    Args:
        eta: Monoidal natural isomorphism E1 => E2
        E1, E2: Equivalences with unitary tensorators
        tol: Threshold (defaults to E1's tolerance)

    Returns:
        NatIsoUnitarization with the unit-modulus part and max |rho_a - 1|

    Raises:
        PreconditionError: If eta is not monoidal or a tensorator is not unitary
        InconsistencyError: If rho is not a trivial positive character
    """
    tol = E1.tol if tol is None else tol
    for name, E in (("first", E1), ("second", E2)):
        defect = gauge_unitarity_residual(E.tensorator)
        if defect > UNITARITY_FACTOR * tol:
            raise PreconditionError(f"{name} tensorator is not unitary (residual {defect:.3e})")
    monoidal = monoidality_residual(eta, E1, E2, tol)
    if not monoidal["passed"]:
        raise PreconditionError(
            f"natural isomorphism is not monoidal (residual {monoidal['residual']:.3e}): "
            f"{monoidal['detail']}"
        )
    rho = np.abs(eta.components)
    for a, b, c in eta.ring.vertices():
        if abs(rho[a] * rho[b] - rho[c]) > tol * rho[c]:
            raise InconsistencyError(f"|eta| is not a character at vertex {(a, b, c)}")
    certificate = float(np.max(np.abs(rho - 1.0)))
    if certificate > tol:
        raise InconsistencyError(f"|eta| is a nontrivial positive character ({certificate:.3e})")
    logger.info("unitarized natural isomorphism, certificate %.3e", certificate)
    return NatIsoUnitarization(
        nat_iso=NatIso(ring=eta.ring, components=eta.components / rho), certificate=certificate
    )
