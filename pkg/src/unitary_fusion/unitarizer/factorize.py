"""
Unitary x positive factorization of monoidal equivalences, and the full
unitarization pipeline.

With f = p u blockwise (p = sqrt(f f^dagger)), (F, u) is a unitary monoidal
equivalence and (id, p) is a positive monoidal structure on the identity of
the target; p is then a coboundary of positive scalars mu and
eta_x = 1 / mu_{F(x)} is a monoidal natural isomorphism (F, f) => (F, u).
"""

import logging
from dataclasses import dataclass, field
from typing import List

import numpy as np

from ..config import COHERENCE_FACTOR, UNITARITY_FACTOR
from ..errors import DecompositionError, PreconditionError
from ..fusion_core.fsymbols import verify_unitary
from ..fusion_core.gauge import (
    Gauge,
    NatIso,
    compose_gauges,
    frame_matrices,
    gauge_distance,
    gauge_unitarity_residual,
)
from ..interface import CertificateReport, make_certificate
from ..polar_engine.polar import polar_decompose_gauge, transport_check
from ..polar_engine.roots import absolute_value
from .equivalence import EquivalenceData, verify_equivalence
from .natiso import monoidality_residual
from .trivialize import trivialize_positive_monoidal

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Factorization:
    unitary_equivalence: EquivalenceData
    positive_part: Gauge  # over target labels
    certificates: List[CertificateReport] = field(default_factory=list)


@dataclass(frozen=True)
class Unitarization:
    equivalence: EquivalenceData  # unitary tensorator
    nat_iso: NatIso  # input => output, indexed by source simples
    positive_scalars: NatIso  # mu over target labels, p = coboundary(mu)
    certificates: List[CertificateReport] = field(default_factory=list)


def _transport_residual(E: EquivalenceData, tol: float) -> float:
    """
    Positive-part transport through the coherence equation.

    Coherence gives G_R(f) F_src^T = F_tgt^T G_L(f); with unitary F-symbols the
    transport identity yields G_R(p) F_tgt^T = F_tgt^T G_L(p), the coherence of (id, p).
    """
    target, f = E.pulled_back()
    source = E.source
    worst = 0.0
    for key in source.action.admissible():
        left, right = frame_matrices(source.action, key, f.block, f.block)
        report = transport_check(
            right, left, source.block(*key).T, target.block(*key).T, COHERENCE_FACTOR * tol
        )
        worst = max(worst, report["residual"])
    return worst


def _square_root_residual(f: Gauge, p: Gauge) -> float:
    return gauge_distance(p, f.with_blocks({k: absolute_value(m) for k, m in f.blocks.items()}))


def factorize_equivalence(E: EquivalenceData) -> Factorization:
    """
    Split the tensorator of E into a unitary factor and a positive part.

    Args:
        E: Coherent monoidal equivalence between unitary presentations

    Returns:
        Factorization with certificates for recomposition, coherence of both
        factors, the square-root construction and the transport identity

    Raises:
        PreconditionError: If E is not coherent
        DecompositionError: If a certificate exceeds 100 * tol
    """
    tol = E.tol
    coherence = verify_equivalence(E)
    if not coherence["passed"]:
        raise PreconditionError(
            f"equivalence is not coherent (residual {coherence['residual']:.3e})"
        )
    u, p = polar_decompose_gauge(E.tensorator)
    unitary_E = E.with_tensorator(u)
    identity_map = tuple(range(E.target.ring.rank))
    positive_E = EquivalenceData(E.target, E.target, identity_map, p)
    budget = COHERENCE_FACTOR * tol
    residuals = {
        "recomposition": gauge_distance(compose_gauges(p, u), E.tensorator),
        "unitary-factor-coherence": verify_equivalence(unitary_E)["residual"],
        "positive-part-coherence": verify_equivalence(positive_E)["residual"],
        "square-root": _square_root_residual(E.tensorator, p),
        "transport": _transport_residual(E, tol),
    }
    certificates = [make_certificate(name, r, budget) for name, r in residuals.items()]
    failed = [c for c in certificates if not c["passed"]]
    if failed:
        raise DecompositionError(
            f"{failed[0]['name']} certificate {failed[0]['residual']:.3e} exceeds {budget:.1e}; "
            "input is not an equivalence between unitary presentations"
        )
    logger.info("factorized equivalence, worst certificate %.3e", max(residuals.values()))
    return Factorization(unitary_equivalence=unitary_E, positive_part=p, certificates=certificates)


def unitarize_equivalence(E: EquivalenceData) -> Unitarization:
    """
    Replace E by a monoidally isomorphic equivalence with unitary tensorator.

    Pipeline: factorize_equivalence, trivialize the positive part, and fold
    the resulting scalars into the natural isomorphism to the unitary factor.

    Raises:
        PreconditionError: If either F-symbol set is not unitary or E is not coherent
        DecompositionError, InconsistencyError: Propagated from the stages
    """
    require_unitary_presentations(E)
    return complete_unitarization(E, factorize_equivalence(E))


def require_unitary_presentations(E: EquivalenceData):
    """
    Raises:
        PreconditionError: If the source or target F-symbols are not unitary
    """
    for side, F in (("source", E.source), ("target", E.target)):
        report = verify_unitary(F, UNITARITY_FACTOR * E.tol)
        if not report["passed"]:
            raise PreconditionError(
                f"{side} F-symbols are not unitary ({report['residual']:.3e})"
            )


def complete_unitarization(E: EquivalenceData, factorization: Factorization) -> Unitarization:
    """Trivialize the positive part of a factorization of E and certify the result."""
    tol = E.tol
    trivial = trivialize_positive_monoidal(
        factorization.positive_part, E.target.ring, E.target, tol
    )
    output = factorization.unitary_equivalence
    mu = trivial.nat_iso.components
    eta = NatIso(ring=E.source.ring, components=[1.0 / mu[x] for x in E.simple_map])
    budget = COHERENCE_FACTOR * tol
    certificates = list(factorization.certificates) + list(trivial.certificates)
    certificates += [
        make_certificate(
            "output-unitarity", gauge_unitarity_residual(output.tensorator), UNITARITY_FACTOR * tol
        ),
        make_certificate("output-coherence", verify_equivalence(output)["residual"], budget),
        make_certificate(
            "monoidal-nat-iso", monoidality_residual(eta, E, output, budget)["residual"], budget
        ),
    ]
    failed = [c for c in certificates if not c["passed"]]
    if failed:
        worst = failed[0]
        raise DecompositionError(f"{worst['name']} certificate {worst['residual']:.3e} failed")
    logger.info("unitarized equivalence: mu = %s", np.round(mu.real, 12).tolist())
    return Unitarization(
        equivalence=output, nat_iso=eta, positive_scalars=trivial.nat_iso, certificates=certificates
    )
