"""
Polar decomposition f = p u of invertible matrices and of gauge families,
and the transport identity: if x v = w y with v, w unitary then |x| w = w |y|.
"""

import logging
from dataclasses import dataclass
from typing import Generic, Iterator, TypeVar

import numpy as np
from scipy import linalg

from ..config import DEFAULT_TOL, UNITARITY_FACTOR
from ..errors import InputError, NumericalError, PreconditionError
from ..fusion_core.fsymbols import SINGULAR_CONDITION, unitarity_defect
from ..fusion_core.gauge import BlockGauge, compose_gauges, gauge_distance
from ..interface import CheckReport, make_check
from .roots import absolute_value, is_positive

logger = logging.getLogger(__name__)

T = TypeVar("T")


@dataclass(frozen=True)
class PolarPair(Generic[T]):
    """input == positive_part @ unitary_part (blockwise for families)"""

    unitary_part: T
    positive_part: T
    residual: float
    condition: float

    def __iter__(self) -> Iterator[T]:
        yield self.unitary_part
        yield self.positive_part


def polar_decompose_matrix(f: np.ndarray) -> PolarPair[np.ndarray]:
    """
    Left polar decomposition f = p u with p = sqrt(f f^dagger).

    Args:
        f: Invertible square matrix

    Returns:
        PolarPair with the relative reconstruction residual and condition number

    Raises:
        NumericalError: If f is numerically singular
    """
    f = np.asarray(f, dtype=complex)
    if f.ndim != 2 or f.shape[0] != f.shape[1]:
        raise InputError(f"expected a square matrix, got shape {f.shape}")
    condition = float(np.linalg.cond(f))
    if not condition < SINGULAR_CONDITION:
        raise NumericalError(f"matrix is numerically singular (condition {condition:.3e})")
    u, p = linalg.polar(f, side="left")
    p = (p + p.conj().T) / 2
    residual = float(np.linalg.norm(p @ u - f) / np.linalg.norm(f))
    return PolarPair(unitary_part=u, positive_part=p, residual=residual, condition=condition)


def polar_decompose_gauge(g: BlockGauge) -> PolarPair[BlockGauge]:
    """
    Blockwise polar decomposition of a gauge; compose_gauges(p, u) == g.

    Works for ring gauges and module gauges alike.
    """
    unitary, positive = {}, {}
    condition = 1.0
    for key, block in g.blocks.items():
        pair = polar_decompose_matrix(block)
        unitary[key], positive[key] = pair.unitary_part, pair.positive_part
        condition = max(condition, pair.condition)
    u, p = g.with_blocks(unitary), g.with_blocks(positive)
    residual = gauge_distance(compose_gauges(p, u), g)
    logger.debug("gauge polar split: residual %.3e, condition %.3e", residual, condition)
    return PolarPair(unitary_part=u, positive_part=p, residual=residual, condition=condition)


def transport_check(
    x: np.ndarray, y: np.ndarray, v: np.ndarray, w: np.ndarray, tol: float = DEFAULT_TOL
) -> CheckReport:
    """
    Check |x| w == w |y| given x v == w y with v, w unitary.

    Args:
        x, y: Square matrices
        v, w: Unitary matrices
        tol: Precondition threshold; the conclusion is checked at 10 * tol

    Returns:
        CheckReport named "transport"

    Raises:
        PreconditionError: If v or w is not unitary, or x v != w y within tol (relative)
    """
    x, y, v, w = (np.asarray(m, dtype=complex) for m in (x, y, v, w))
    if not (x.shape == y.shape == v.shape == w.shape) or x.shape[0] != x.shape[1]:
        raise InputError("transport check needs square matrices of one shape")
    for name, matrix in (("v", v), ("w", w)):
        defect = unitarity_defect(matrix)
        if defect > tol:
            raise PreconditionError(f"{name} is not unitary (defect {defect:.3e})")
    lhs, rhs = x @ v, w @ y
    mismatch = float(np.linalg.norm(lhs - rhs) / max(np.linalg.norm(lhs), np.finfo(float).tiny))
    if mismatch > tol:
        raise PreconditionError(f"x v != w y (relative mismatch {mismatch:.3e})")
    abs_x, abs_y = absolute_value(x, tol), absolute_value(y, tol)
    residual = float(np.linalg.norm(abs_x @ w - w @ abs_y) / np.linalg.norm(abs_x))
    return make_check("transport", residual, UNITARITY_FACTOR * tol, "|x| w != w |y|")


def is_positive_gauge(g: BlockGauge, tol: float = DEFAULT_TOL) -> bool:
    """True iff every block is Hermitian positive definite."""
    return all(is_positive(block, tol) for block in g.blocks.values())
