"""
Heuristic search for a gauge making an F-symbol set unitary.

Each step polar-splits the gauged blocks, F = P W with P positive and W
unitary, and measures the spread sum ||log P||^2 (zero exactly when every
block is unitary). A positive update exp(Z), one Hermitian Z per non-unit
vertex space, moves log P to first order by

    W B(Z) W^dagger - A(Z)
    A(Z) = blockdiag_e [Z^{ab}_e (x) 1 + 1 (x) Z^{ec}_d]
    B(Z) = blockdiag_f [Z^{bc}_f (x) 1 + 1 (x) Z^{af}_d]

The least-squares Z cancelling log P is taken as a damped step and halved
until the spread drops. A stalled search restarts from a random positive
gauge. Some moduli are gauge invariant (for Yang-Lee the diagonal of
F^{ttt}_t has modulus phi), so failure to converge is reported, never raised.
"""

import logging
from dataclasses import dataclass
from typing import Dict, List, Optional, Tuple

import numpy as np
from scipy import linalg

from ..config import DEFAULT_MAX_ITERS, DEFAULT_SEED
from ..errors import DomainError, NumericalError
from ..fusion_core.fsymbols import FSymbolSet, unitarity_defect
from ..fusion_core.gauge import Gauge, apply_gauge, compose_gauges, identity_gauge
from ..fusion_core.ring import FusionRing, Quad, Vertex
from ..fusion_core.sampling import random_gauge
from ..polar_engine import polar_decompose_matrix, positive_log

logger = logging.getLogger(__name__)

DAMPING = 0.5
# Largest spectral norm of one log-domain update.
MAX_LOG_STEP = 1.0
MAX_HALVINGS = 8
STALL = 1e-14

Variable = Tuple[Vertex, np.ndarray]
Split = Dict[Quad, Tuple[np.ndarray, np.ndarray]]


@dataclass(frozen=True)
class GaugeSearch:
    gauge: Gauge
    residual: float  # unitarity residual of F gauged by `gauge`
    iterations: int
    converged: bool


def _hermitian_basis(n: int) -> List[np.ndarray]:
    """Real basis of the n x n Hermitian matrices."""
    basis = []
    for i in range(n):
        for j in range(i, n):
            if i == j:
                diagonal = np.zeros((n, n), dtype=complex)
                diagonal[i, i] = 1.0
                basis.append(diagonal)
                continue
            real = np.zeros((n, n), dtype=complex)
            real[i, j] = real[j, i] = 1.0
            imaginary = np.zeros((n, n), dtype=complex)
            imaginary[i, j], imaginary[j, i] = 1j, -1j
            basis.extend((real, imaginary))
    return basis


def _variables(ring: FusionRing) -> List[Variable]:
    return [
        (v, direction)
        for v in ring.vertices()
        if v[0] != 0 and v[1] != 0
        for direction in _hermitian_basis(int(ring.N[v]))
    ]


def _tangent_frames(F: FSymbolSet, key: Quad, v: Vertex, direction: np.ndarray):
    """Derivatives of G_L and G_R of block `key` along exp(t direction) at vertex v."""
    a, b, c, d = key
    N, rank = F.ring.N, F.ring.rank

    def z(vertex: Vertex) -> np.ndarray:
        return direction if vertex == v else np.zeros((N[vertex], N[vertex]))

    def kron_sum(outer: Vertex, inner: Vertex) -> np.ndarray:
        return np.kron(z(outer), np.eye(N[inner])) + np.kron(np.eye(N[outer]), z(inner))

    left = [kron_sum((a, b, e), (e, c, d)) for e in range(rank) if N[a, b, e] and N[e, c, d]]
    right = [kron_sum((b, c, f), (a, f, d)) for f in range(rank) if N[b, c, f] and N[a, f, d]]
    return linalg.block_diag(*left), linalg.block_diag(*right)


def _tangents(F: FSymbolSet, variables: List[Variable]) -> List[Dict[Quad, tuple]]:
    tangents = []
    for v, direction in variables:
        touched = {}
        for key in F.action.admissible():
            if v in _block_vertices(F.ring, key):
                touched[key] = _tangent_frames(F, key, v, direction)
        tangents.append(touched)
    return tangents


def _block_vertices(ring: FusionRing, key: Quad) -> set:
    a, b, c, d = key
    N = ring.N
    vertices = set()
    for e in range(ring.rank):
        if N[a, b, e] and N[e, c, d]:
            vertices.update({(a, b, e), (e, c, d)})
        if N[b, c, e] and N[a, e, d]:
            vertices.update({(b, c, e), (a, e, d)})
    return vertices


def _polar_split(F: FSymbolSet) -> Split:
    """(W, log P) for every block B = P W."""
    split = {}
    for key in F.action.admissible():
        unitary, positive = polar_decompose_matrix(F.block(*key))
        split[key] = (unitary, positive_log(positive, F.tol))
    return split


def _spread(F: FSymbolSet) -> float:
    try:
        split = _polar_split(F)
    except (NumericalError, DomainError):
        return np.inf
    return float(sum(np.linalg.norm(log_p) ** 2 for _, log_p in split.values()))


def _flatten(blocks: List[np.ndarray]) -> np.ndarray:
    return np.concatenate([np.concatenate([m.real.ravel(), m.imag.ravel()]) for m in blocks])


def _newton_direction(
    split: Split, variables: List[Variable], tangents: List[Dict[Quad, tuple]]
) -> Dict[Vertex, np.ndarray]:
    """Hermitian Z per vertex minimising sum ||log P + W B(Z) W^dagger - A(Z)||^2."""
    keys = list(split)
    rhs = _flatten([-split[key][1] for key in keys])
    columns = []
    for touched in tangents:
        pieces = []
        for key in keys:
            unitary, log_p = split[key]
            if key in touched:
                left, right = touched[key]
                pieces.append(unitary @ right @ unitary.conj().T - left)
            else:
                pieces.append(np.zeros_like(log_p))
        columns.append(_flatten(pieces))
    if not columns:
        return {}
    coefficients, *_ = linalg.lstsq(np.column_stack(columns), rhs)
    direction: Dict[Vertex, np.ndarray] = {}
    for x, (v, basis) in zip(coefficients, variables):
        direction[v] = direction.get(v, 0) + x * basis
    return direction


def _positive_update(ring: FusionRing, direction: Dict[Vertex, np.ndarray], fraction: float):
    blocks = {}
    for v in ring.vertices():
        if v in direction:
            # G_L^{-T} and G_R^T see the transpose of each block
            blocks[v] = linalg.expm(fraction * direction[v].T)
        else:
            blocks[v] = np.eye(ring.N[v])
    return Gauge(ring=ring, blocks=blocks)


def _step(
    F: FSymbolSet,
    gauge: Gauge,
    current: FSymbolSet,
    variables: List[Variable],
    tangents: List[Dict[Quad, tuple]],
) -> Optional[Gauge]:
    """Next gauge, or None when no damped step lowers the spread."""
    try:
        split = _polar_split(current)
    except (NumericalError, DomainError):
        return None
    spread = float(sum(np.linalg.norm(log_p) ** 2 for _, log_p in split.values()))
    direction = _newton_direction(split, variables, tangents)
    size = max((np.linalg.norm(z, 2) for z in direction.values()), default=0.0)
    if size < STALL:
        return None
    fraction = DAMPING * min(1.0, MAX_LOG_STEP / size)
    for _ in range(MAX_HALVINGS + 1):
        candidate = compose_gauges(_positive_update(F.ring, direction, fraction), gauge)
        if _spread(apply_gauge(F, candidate)) < spread:
            return candidate
        fraction /= 2
    return None


def _unitarity_residual(F: FSymbolSet) -> float:
    return max(unitarity_defect(block) for block in F.blocks.values())


def search_unitary_gauge(
    F: FSymbolSet,
    max_iters: int = DEFAULT_MAX_ITERS,
    seed: int = DEFAULT_SEED,
    restarts: int = 0,
    tol: Optional[float] = None,
) -> GaugeSearch:
    """
    Look for a gauge g with apply_gauge(F, g) unitary.

    Args:
        F: Pentagon-valid F-symbols
        max_iters: Total iteration budget across restarts
        seed: Seed for the random positive starting gauges used on restarts
        restarts: How often to restart from a random gauge after stalling
        tol: Success threshold on the unitarity residual (defaults to F.tol)

    Returns:
        GaugeSearch with the best gauge found; `converged` is False when the
        heuristic gave up
    """
    tol = F.tol if tol is None else tol
    if not F.pentagon["passed"]:
        logger.warning("gauge search on F-symbols that fail the pentagon")
    rng = np.random.default_rng(seed)
    variables = _variables(F.ring)
    tangents = _tangents(F, variables)
    gauge = identity_gauge(F.ring)
    best_gauge, best = gauge, np.inf
    iterations = 0
    while True:
        current = apply_gauge(F, gauge)
        residual = _unitarity_residual(current)
        if residual < best:
            best_gauge, best = gauge, residual
        logger.debug("gauge search iteration %d: residual %.3e", iterations, residual)
        if best <= tol or iterations >= max_iters:
            break
        iterations += 1
        step = _step(F, gauge, current, variables, tangents)
        if step is None:
            if restarts <= 0:
                break
            restarts -= 1
            gauge = random_gauge(F.ring, rng, "positive")
            continue
        gauge = step
    converged = bool(best <= tol)
    if not converged:
        logger.info("gauge search did not converge: residual %.3e after %d steps", best, iterations)
    return GaugeSearch(
        gauge=best_gauge, residual=float(best), iterations=iterations, converged=converged
    )
