"""
Trivialization of positive monoidal structures on the identity.

A coherent positive gauge p on a fusion category is a coboundary
p^{ab}_c = (mu_a mu_b / mu_c) I. The scalars are recovered exactly from the
log-linear system x_a + x_b - x_c = log lambda^{ab}_c with x_unit = 0.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

import numpy as np
from scipy import linalg

from ..config import COHERENCE_FACTOR, DEFAULT_TOL
from ..errors import InconsistencyError, PreconditionError
from ..fusion_core.fsymbols import FSymbolSet
from ..fusion_core.gauge import Gauge, NatIso, coboundary_gauge, gauge_distance
from ..fusion_core.ring import FusionRing, Vertex
from ..interface import CertificateReport, make_certificate
from ..polar_engine.polar import is_positive_gauge
from .equivalence import EquivalenceData, verify_equivalence

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Trivialization:
    nat_iso: NatIso  # positive scalars mu with mu_unit = 1
    residual: float  # max |A x - b| of the log system
    certificates: List[CertificateReport] = field(default_factory=list)


def scalar_of(block: np.ndarray, key: tuple, tol: float) -> float:
    """
    The positive scalar lambda with block == lambda I.

    Raises:
        InconsistencyError: If the block is not a positive multiple of the identity
    """
    n = block.shape[0]
    value = float(np.trace(block).real) / n
    deviation = float(np.linalg.norm(block - value * np.eye(n)) / np.linalg.norm(block))
    if deviation > tol or value <= 0:
        raise InconsistencyError(
            f"block {key} is not a positive scalar (deviation {deviation:.3e}); "
            "the positive part is not coherent / not trivializable"
        )
    return value


def coboundary_system(p: Gauge, tol: float) -> Tuple[np.ndarray, np.ndarray, List[Vertex]]:
    """
    Rows x_a + x_b - x_c = log lambda^{ab}_c for every vertex with a, b non-unit.

    Columns are the non-unit simples 1..rank-1.

    Raises:
        InconsistencyError: If a unit block is not the identity or a block is not scalar
    """
    ring = p.ring
    if p.unit_defect() > tol:
        raise InconsistencyError("positive part is not unit-normalized")
    rows, rhs, vertices = [], [], []
    for a, b, c in ring.vertices():
        if a == 0 or b == 0:
            continue
        row = np.zeros(ring.rank)
        row[a] += 1.0
        row[b] += 1.0
        row[c] -= 1.0
        rows.append(row[1:])
        rhs.append(np.log(scalar_of(p.block(a, b, c), (a, b, c), tol)))
        vertices.append((a, b, c))
    matrix = np.array(rows).reshape(len(rows), ring.rank - 1)
    return matrix, np.array(rhs), vertices


def solve_log_system(matrix: np.ndarray, rhs: np.ndarray) -> Tuple[np.ndarray, float]:
    """Minimum-norm least-squares solution and its max absolute residual."""
    if matrix.size == 0:
        return np.zeros(matrix.shape[1]), float(np.max(np.abs(rhs), initial=0.0))
    x, *_ = linalg.lstsq(matrix, rhs)
    residual = float(np.max(np.abs(matrix @ x - rhs), initial=0.0))
    return x, residual


def trivialize_positive_monoidal(
    p: Gauge,
    ring: Optional[FusionRing] = None,
    F: Optional[FSymbolSet] = None,
    tol: Optional[float] = None,
) -> Trivialization:
    """
    Recover positive scalars mu with coboundary(mu) == p.

    Args:
        p: Positive, unit-normalized, coherent gauge
        ring: Fusion ring of p (defaults to p.ring)
        F: F-symbols p is a monoidal structure for; when given, coherence of
            (id, p) is checked first
        tol: Threshold (defaults to F.tol, else the package default)

    Returns:
        Trivialization with mu, the log-system residual and certificates

    Raises:
        PreconditionError: If p is not positive, or (id, p) is not coherent for F
        InconsistencyError: If a block is not scalar or the log system is inconsistent
    """
    ring = p.ring if ring is None else ring
    if ring != p.ring:
        raise PreconditionError("gauge does not live on the given fusion ring")
    if tol is None:
        tol = F.tol if F is not None else DEFAULT_TOL
    if not is_positive_gauge(p, tol):
        raise PreconditionError("monoidal structure is not positive")
    certificates = []
    if F is not None:
        coherence = verify_equivalence(
            EquivalenceData(F, F, tuple(range(ring.rank)), p), COHERENCE_FACTOR * tol
        )
        if not coherence["passed"]:
            raise PreconditionError(
                f"positive part is not coherent (residual {coherence['residual']:.3e})"
            )
        certificates.append(
            make_certificate("positive-coherence", coherence["residual"], COHERENCE_FACTOR * tol)
        )

    matrix, rhs, _ = coboundary_system(p, tol)
    x, residual = solve_log_system(matrix, rhs)
    if residual > tol:
        raise InconsistencyError(
            f"log-linear coboundary system is inconsistent (residual {residual:.3e})"
        )
    mu = NatIso(ring=ring, components=np.exp(np.concatenate([[0.0], x])))
    reproduction = gauge_distance(coboundary_gauge(mu), p)
    certificates.append(make_certificate("coboundary", reproduction, COHERENCE_FACTOR * tol))
    logger.info(
        "trivialized positive part: lstsq residual %.3e, reproduction %.3e", residual, reproduction
    )
    return Trivialization(nat_iso=mu, residual=residual, certificates=certificates)
