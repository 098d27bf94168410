"""
Braided equivalences: compatibility with the braidings and the braided
version of the unitarization pipeline.

An equivalence (F, f) is braided when f^{ba}_c R_src^{ab}_c == R_tgt^{ab}_c f^{ab}_c
on every vertex (target data pulled back to source labels). The positive part
p of f then commutes with the target braiding, p^{ba}_c R^{ab}_c == R^{ab}_c p^{ab}_c,
so both factors of f = p u stay braided.
"""

import dataclasses
import logging
from typing import Optional

import numpy as np

from ..config import COHERENCE_FACTOR, UNITARITY_FACTOR
from ..errors import DecompositionError, InputError, PreconditionError
from ..fusion_core.gauge import BlockGauge
from ..interface import CheckReport, make_certificate, make_check
from ..unitarizer.equivalence import EquivalenceData
from ..unitarizer.factorize import (
    Factorization,
    Unitarization,
    complete_unitarization,
    factorize_equivalence,
    require_unitary_presentations,
)
from .rsymbols import RSymbolSet, relabel_rsymbols

logger = logging.getLogger(__name__)


def _relative(lhs: np.ndarray, rhs: np.ndarray) -> float:
    scale = max(np.linalg.norm(lhs), np.linalg.norm(rhs), np.finfo(float).tiny)
    return float(np.linalg.norm(lhs - rhs) / scale)


def braided_compatibility_residual(
    E: EquivalenceData, R_src: RSymbolSet, R_tgt: RSymbolSet, tol: Optional[float] = None
) -> CheckReport:
    """
    Residual of f^{ba}_c R_src^{ab}_c == R_tgt^{ab}_c f^{ab}_c over all vertices.

    Raises:
        InputError: If the R-symbols do not live on the rings of E
    """
    tol = E.tol if tol is None else tol
    if R_src.ring != E.source.ring or R_tgt.ring != E.target.ring:
        raise InputError("R-symbols do not match the rings of the equivalence")
    _, f = E.pulled_back()
    target_R = relabel_rsymbols(R_tgt, E.simple_map, E.source.ring)
    worst, first_bad = 0.0, ""
    for a, b, c in E.source.ring.vertices():
        residual = _relative(
            f.block(b, a, c) @ R_src.block(a, b, c), target_R.block(a, b, c) @ f.block(a, b, c)
        )
        if residual > tol and not first_bad:
            first_bad = f"braided compatibility fails at vertex {(a, b, c)}"
        worst = max(worst, residual)
    return make_check("braided-compatibility", worst, tol, first_bad)


def braiding_commutation_residual(p: BlockGauge, R: RSymbolSet) -> float:
    """max over vertices of |p^{ba}_c R^{ab}_c - R^{ab}_c p^{ab}_c| (relative)."""
    return max(
        (
            _relative(p.block(b, a, c) @ R.block(a, b, c), R.block(a, b, c) @ p.block(a, b, c))
            for a, b, c in R.blocks
        ),
        default=0.0,
    )


def factorize_braided_equivalence(
    E: EquivalenceData, R_src: RSymbolSet, R_tgt: RSymbolSet
) -> Factorization:
    """
    factorize_equivalence for a braided equivalence.

    Adds a "braiding-commutation" certificate (positive part against the target
    braiding, budget 10 * tol) and a "unitary-factor-braided" certificate
    (budget 100 * tol).

    Raises:
        PreconditionError: If E is not braided-compatible with (R_src, R_tgt)
        DecompositionError: If a certificate exceeds its budget
    """
    tol = E.tol
    compatibility = braided_compatibility_residual(E, R_src, R_tgt, tol)
    if not compatibility["passed"]:
        raise PreconditionError(
            f"equivalence is not braided (residual {compatibility['residual']:.3e}): "
            f"{compatibility['detail']}"
        )
    factorization = factorize_equivalence(E)
    unitary_E = factorization.unitary_equivalence
    braided = [
        make_certificate(
            "braiding-commutation",
            braiding_commutation_residual(factorization.positive_part, R_tgt),
            UNITARITY_FACTOR * tol,
        ),
        make_certificate(
            "unitary-factor-braided",
            braided_compatibility_residual(unitary_E, R_src, R_tgt)["residual"],
            COHERENCE_FACTOR * tol,
        ),
    ]
    failed = [c for c in braided if not c["passed"]]
    if failed:
        raise DecompositionError(
            f"{failed[0]['name']} certificate {failed[0]['residual']:.3e} "
            f"exceeds {failed[0]['tolerance']:.1e}"
        )
    logger.info(
        "factorized braided equivalence, commutation %.3e", braided[0]["residual"]
    )
    return dataclasses.replace(
        factorization, certificates=list(factorization.certificates) + braided
    )


def unitarize_braided_equivalence(
    E: EquivalenceData, R_src: RSymbolSet, R_tgt: RSymbolSet
) -> Unitarization:
    """
    Unitary braided equivalence monoidally isomorphic to E.

    Returns:
        Unitarization whose certificates include "output-braided"

    Raises:
        PreconditionError: Unitary presentations, coherence or braided
            compatibility missing on the input
        DecompositionError: If a certificate exceeds its budget
    """
    require_unitary_presentations(E)
    unitarization = complete_unitarization(E, factorize_braided_equivalence(E, R_src, R_tgt))
    budget = COHERENCE_FACTOR * E.tol
    output = make_certificate(
        "output-braided",
        braided_compatibility_residual(unitarization.equivalence, R_src, R_tgt)["residual"],
        budget,
    )
    if not output["passed"]:
        raise DecompositionError(f"output braided certificate {output['residual']:.3e} failed")
    return dataclasses.replace(
        unitarization, certificates=list(unitarization.certificates) + [output]
    )
