"""
Gauges (tensorators / monoidal structures on the identity) and scalar natural isomorphisms.

A gauge block g^{ab}_c acts on Hom(c, a (x) b). Gauging a block family uses the
frames

    G_L = blockdiag_e  kron(g^{ab}_e, h^{ey}_z)
    G_R = blockdiag_k  kron(h^{by}_k, h^{ak}_z)

with h = g for F-symbols and F' = G_L^{-T} F G_R^{T}. In the multiplicity-free
case this is F' = F g^{bc}_f g^{af}_d / (g^{ab}_e g^{ec}_d).
"""

import logging
from dataclasses import dataclass, field
from typing import Callable, Iterator, Mapping, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from ..errors import InputError, NumericalError
from .fsymbols import FSymbolSet, freeze_blocks, singular_blocks, unitarity_defect
from .ring import ActionTable, FusionRing, Quad, Vertex, is_ring_isomorphism

logger = logging.getLogger(__name__)

BlockFn = Callable[[int, int, int], np.ndarray]


class BlockGauge:
    """Shared behaviour of ring gauges and module gauges"""

    blocks: Mapping[Vertex, np.ndarray]

    def vertex_keys(self) -> Iterator[Vertex]:
        raise NotImplementedError

    def multiplicity(self, key: Vertex) -> int:
        raise NotImplementedError

    def with_blocks(self, blocks: Mapping[Vertex, np.ndarray]) -> "BlockGauge":
        raise NotImplementedError

    def unit_keys(self) -> Iterator[Vertex]:
        raise NotImplementedError

    def block(self, a: int, b: int, c: int) -> np.ndarray:
        try:
            return self.blocks[(a, b, c)]
        except KeyError:
            raise InputError(f"missing gauge block {(a, b, c)}")

    def _validate(self):
        blocks = freeze_blocks(self.blocks)
        expected = set(self.vertex_keys())
        extra = set(blocks) - expected
        if extra:
            raise InputError(f"gauge blocks {sorted(extra)} are not vertex spaces")
        missing = expected - set(blocks)
        if missing:
            raise InputError(f"missing gauge blocks {sorted(missing)}")
        for key, matrix in blocks.items():
            dim = self.multiplicity(key)
            if matrix.shape != (dim, dim):
                raise InputError(f"gauge block {key} must be {dim}x{dim}, got {matrix.shape}")
        object.__setattr__(self, "blocks", blocks)

    def unit_defect(self) -> float:
        """Largest deviation of a unit-touching block from the identity."""
        worst = 0.0
        for key in self.unit_keys():
            matrix = self.blocks[key]
            worst = max(worst, float(np.linalg.norm(matrix - np.eye(matrix.shape[0]))))
        return worst


@dataclass(frozen=True, eq=False)
class Gauge(BlockGauge):
    """One invertible N_ab^c x N_ab^c matrix per vertex space (a, b; c)"""

    ring: FusionRing
    blocks: Mapping[Vertex, np.ndarray] = field(repr=False)

    def __post_init__(self):
        self._validate()

    def vertex_keys(self) -> Iterator[Vertex]:
        return self.ring.vertices()

    def multiplicity(self, key: Vertex) -> int:
        return int(self.ring.N[key])

    def unit_keys(self) -> Iterator[Vertex]:
        return (key for key in self.vertex_keys() if key[0] == 0 or key[1] == 0)

    def with_blocks(self, blocks: Mapping[Vertex, np.ndarray]) -> "Gauge":
        return Gauge(ring=self.ring, blocks=blocks)


@dataclass(frozen=True, eq=False)
class NatIso:
    """One nonzero scalar per simple object"""

    ring: FusionRing
    components: np.ndarray

    def __post_init__(self):
        components = np.array(self.components, dtype=complex).reshape(-1)
        if components.shape != (self.ring.rank,):
            raise InputError(f"expected {self.ring.rank} components, got {components.shape[0]}")
        if np.any(components == 0):
            raise InputError("natural isomorphism components must be nonzero")
        components.setflags(write=False)
        object.__setattr__(self, "components", components)


def _same_kind(g1: BlockGauge, g2: BlockGauge):
    if type(g1) is not type(g2) or set(g1.blocks) != set(g2.blocks):
        raise InputError("gauges live on different rings")
    if isinstance(g1, Gauge) and g1.ring != g2.ring:
        raise InputError("gauges live on different rings")


def identity_gauge(ring: FusionRing) -> Gauge:
    return Gauge(ring=ring, blocks={v: np.eye(ring.N[v]) for v in ring.vertices()})


def compose_gauges(g1: BlockGauge, g2: BlockGauge) -> BlockGauge:
    """Blockwise g1 @ g2; apply_gauge(apply_gauge(F, g2), g1) == apply_gauge(F, compose(g1, g2))."""
    _same_kind(g1, g2)
    return g1.with_blocks({key: g1.blocks[key] @ g2.blocks[key] for key in g1.blocks})


def invert_gauge(g: BlockGauge) -> BlockGauge:
    """
    Blockwise inverse.

    Raises:
        NumericalError: Naming the first singular block
    """
    singular = singular_blocks(g.blocks)
    if singular:
        raise NumericalError(f"gauge block {singular[0]} is singular")
    return g.with_blocks({key: linalg.inv(matrix) for key, matrix in g.blocks.items()})


def adjoint_gauge(g: BlockGauge) -> BlockGauge:
    return g.with_blocks({key: matrix.conj().T for key, matrix in g.blocks.items()})


def gauge_unitarity_residual(g: BlockGauge) -> float:
    return max((unitarity_defect(m) for m in g.blocks.values()), default=0.0)


def gauge_distance(g1: BlockGauge, g2: BlockGauge) -> float:
    """Max relative Frobenius distance between matching blocks."""
    _same_kind(g1, g2)
    worst = 0.0
    for key, matrix in g1.blocks.items():
        other = g2.blocks[key]
        scale = max(np.linalg.norm(matrix), np.linalg.norm(other))
        worst = max(worst, float(np.linalg.norm(matrix - other) / scale))
    return worst


def coboundary_gauge(mu: NatIso) -> Gauge:
    """(mu_a mu_b / mu_c) * I on every vertex; F-symbols are invariant under it."""
    x = mu.components
    return Gauge(
        ring=mu.ring,
        blocks={
            (a, b, c): (x[a] * x[b] / x[c]) * np.eye(mu.ring.N[a, b, c])
            for a, b, c in mu.ring.vertices()
        },
    )


def relabel_gauge(g: Gauge, simple_map: Sequence[int], source_ring: FusionRing) -> Gauge:
    """Pull a gauge over target labels back to source labels: h^{ab}_c = g^{pi a, pi b}_{pi c}."""
    if not is_ring_isomorphism(source_ring, g.ring, simple_map):
        raise InputError(f"simple map {list(simple_map)} is not a fusion-ring isomorphism")
    pi = [int(x) for x in simple_map]
    return Gauge(
        ring=source_ring,
        blocks={(a, b, c): g.block(pi[a], pi[b], pi[c]) for a, b, c in source_ring.vertices()},
    )


def push_gauge(g: Gauge, simple_map: Sequence[int], target_ring: FusionRing) -> Gauge:
    """Inverse of relabel_gauge: move a gauge over source labels to target labels."""
    pi = [int(x) for x in simple_map]
    return Gauge(
        ring=target_ring,
        blocks={(pi[a], pi[b], pi[c]): m for (a, b, c), m in g.blocks.items()},
    )


# ---------------------------------------------------------------------------
# Frames and the gauge action


def frame_matrices(
    action: ActionTable, key: Quad, ring_block: Optional[BlockFn], act_block: BlockFn
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Left and right frames of block `key` = (a, b, y; z).

    Args:
        action: Basis convention of the block
        key: Block label
        ring_block: g^{ab}_e lookup, or None for the identity
        act_block: h lookup on the acted-on side

    Returns:
        (G_L, G_R) in the row and column basis of the block
    """
    a, b, y, z = key
    N, mult = action.ring.N, action.mult
    left = []
    for e in range(action.ring.rank):
        if N[a, b, e] and mult[e, y, z]:
            outer = np.eye(N[a, b, e]) if ring_block is None else ring_block(a, b, e)
            left.append(np.kron(outer, act_block(e, y, z)))
    right = []
    for k in range(action.rank):
        if mult[b, y, k] and mult[a, k, z]:
            right.append(np.kron(act_block(b, y, k), act_block(a, k, z)))
    return linalg.block_diag(*left), linalg.block_diag(*right)


def gauge_block(block: np.ndarray, frames: Tuple[np.ndarray, np.ndarray]) -> np.ndarray:
    left, right = frames
    return linalg.solve(left.T, block @ right.T)


def apply_gauge(F: FSymbolSet, g: Gauge) -> FSymbolSet:
    """
    Gauge transform F' = G_L^{-T} F G_R^T on every block.

    Args:
        F: F-symbols
        g: Gauge over the same ring

    Returns:
        The gauged F-symbols (same tolerance)

    Raises:
        InputError: If the rings differ
    """
    if g.ring != F.ring:
        raise InputError("gauge and F-symbols live on different fusion rings")
    blocks = {}
    for key in F.action.admissible():
        frames = frame_matrices(F.action, key, g.block, g.block)
        blocks[key] = gauge_block(F.block(*key), frames)
    return F.with_blocks(blocks)


def frame_coherence(
    source_block: np.ndarray, target_block: np.ndarray, frames: Tuple[np.ndarray, np.ndarray]
) -> float:
    """Relative residual of G_L^T target == source G_R^T (target == gauged source)."""
    left, right = frames
    expected = source_block @ right.T
    scale = max(float(np.linalg.norm(expected)), np.finfo(float).tiny)
    return float(np.linalg.norm(left.T @ target_block - expected) / scale)
