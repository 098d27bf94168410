"""
R-symbols: the braiding sigma_{a,b} restricted to each fusion channel.
"""

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Sequence

import numpy as np
from scipy import linalg

from ..config import DEFAULT_TOL
from ..errors import InputError
from ..fusion_core.gauge import BlockGauge, Gauge
from ..fusion_core.ring import FusionRing, Vertex, is_ring_isomorphism


@dataclass(frozen=True, eq=False)
class RSymbolSet(BlockGauge):
    """One invertible N_ab^c x N_ab^c block R^{ab}_c per vertex space"""

    ring: FusionRing
    blocks: Mapping[Vertex, np.ndarray] = field(repr=False)
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        N = self.ring.N
        if not np.array_equal(N, N.transpose(1, 0, 2)):
            raise InputError("braidings need a commutative fusion ring")
        self._validate()

    def vertex_keys(self) -> Iterator[Vertex]:
        return self.ring.vertices()

    def multiplicity(self, key: Vertex) -> int:
        return int(self.ring.N[key])

    def unit_keys(self) -> Iterator[Vertex]:
        return (key for key in self.vertex_keys() if key[0] == 0 or key[1] == 0)

    def with_blocks(self, blocks: Mapping[Vertex, np.ndarray]) -> "RSymbolSet":
        return RSymbolSet(ring=self.ring, blocks=blocks, tol=self.tol)


def reverse_braiding(R: RSymbolSet) -> RSymbolSet:
    """Blocks (R^{ba}_c)^{-1}: the braiding used by the second hexagon family."""
    return R.with_blocks({(a, b, c): linalg.inv(R.block(b, a, c)) for a, b, c in R.blocks})


def relabel_rsymbols(
    R: RSymbolSet, simple_map: Sequence[int], source_ring: FusionRing
) -> RSymbolSet:
    """Pull R-symbols over target labels back to source labels."""
    if not is_ring_isomorphism(source_ring, R.ring, simple_map):
        raise InputError(f"simple map {list(simple_map)} is not a fusion-ring isomorphism")
    pi = [int(x) for x in simple_map]
    return RSymbolSet(
        ring=source_ring,
        blocks={(a, b, c): R.block(pi[a], pi[b], pi[c]) for a, b, c in source_ring.vertices()},
        tol=R.tol,
    )


def gauge_rsymbols(R: RSymbolSet, g: Gauge) -> RSymbolSet:
    """
    R-symbols matching apply_gauge(F, g): R'^{ab}_c = g^{ba}_c R^{ab}_c (g^{ab}_c)^{-1}.

    Scalar coboundary gauges are symmetric in (a, b) and leave R unchanged.
    """
    if g.ring != R.ring:
        raise InputError("gauge and R-symbols live on different fusion rings")
    return R.with_blocks(
        {
            (a, b, c): g.block(b, a, c) @ linalg.solve(g.block(a, b, c).T, block.T).T
            for (a, b, c), block in R.blocks.items()
        }
    )
