"""
Skeletal monoidal equivalences: a bijection of simples plus a tensorator.

The tensorator is stored over target labels. Coherence is checked after
pulling the target F-symbols and the tensorator back to source labels, where
it reads G_L^T F_target = F_source G_R^T blockwise, i.e. the target is the
source gauged by the tensorator.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from ..errors import InputError
from ..fusion_core.fsymbols import FSymbolSet, relabel_fsymbols
from ..fusion_core.gauge import (
    Gauge,
    apply_gauge,
    frame_coherence,
    frame_matrices,
    identity_gauge,
    relabel_gauge,
)
from ..fusion_core.ring import FusionRing, is_ring_isomorphism
from ..interface import CheckReport, make_check

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class EquivalenceData:
    """(F, f): source -> target with simple x sent to simple_map[x]"""

    source: FSymbolSet
    target: FSymbolSet
    simple_map: Tuple[int, ...]
    tensorator: Gauge

    def __post_init__(self):
        simple_map = tuple(int(x) for x in self.simple_map)
        if len(simple_map) != self.source.ring.rank:
            raise InputError(
                f"simple map has {len(simple_map)} entries, source has rank {self.source.ring.rank}"
            )
        if self.tensorator.ring != self.target.ring:
            raise InputError("tensorator must live on the target fusion ring")
        object.__setattr__(self, "simple_map", simple_map)

    @property
    def tol(self) -> float:
        return self.source.tol

    def check_simple_map(self):
        """
        Raises:
            InputError: If the simple map is not a fusion-ring isomorphism
        """
        if not is_ring_isomorphism(self.source.ring, self.target.ring, self.simple_map):
            raise InputError(
                f"simple map {list(self.simple_map)} is not a fusion-ring isomorphism"
            )

    def pulled_back(self) -> Tuple[FSymbolSet, Gauge]:
        """Target F-symbols and tensorator expressed over source labels."""
        self.check_simple_map()
        ring = self.source.ring
        return (
            relabel_fsymbols(self.target, self.simple_map, ring),
            relabel_gauge(self.tensorator, self.simple_map, ring),
        )

    def with_tensorator(self, tensorator: Gauge) -> "EquivalenceData":
        return EquivalenceData(self.source, self.target, self.simple_map, tensorator)


def verify_equivalence(E: EquivalenceData, tol: Optional[float] = None) -> CheckReport:
    """
    Coherence residual of a monoidal equivalence.

    Args:
        E: Equivalence data
        tol: Threshold (defaults to the source tolerance)

    Returns:
        CheckReport named "coherence"

    Raises:
        InputError: If the simple map is not a fusion-ring isomorphism
    """
    tol = E.tol if tol is None else tol
    target, g = E.pulled_back()
    source = E.source
    worst, first_bad = 0.0, ""
    for key in source.action.admissible():
        frames = frame_matrices(source.action, key, g.block, g.block)
        residual = frame_coherence(source.block(*key), target.block(*key), frames)
        if residual > tol and not first_bad:
            first_bad = f"coherence fails at block {key}"
        worst = max(worst, residual)
    logger.debug("equivalence coherence residual %.3e", worst)
    return make_check("coherence", worst, tol, first_bad)


def identity_equivalence(F: FSymbolSet) -> EquivalenceData:
    return EquivalenceData(F, F, tuple(range(F.ring.rank)), identity_gauge(F.ring))


def gauged_equivalence(F: FSymbolSet, g: Gauge) -> EquivalenceData:
    """Identity on simples with tensorator g; the target is F gauged by g."""
    return EquivalenceData(F, apply_gauge(F, g), tuple(range(F.ring.rank)), g)


def compose_equivalences(outer: EquivalenceData, inner: EquivalenceData) -> EquivalenceData:
    """
    outer after inner, tensorator g_{Fx,Fy} composed with G(f_{x,y}).

    Raises:
        InputError: If inner's target ring is not outer's source ring
    """
    if inner.target.ring != outer.source.ring:
        raise InputError("equivalences are not composable")
    pi_inner, pi_outer = inner.simple_map, outer.simple_map
    blocks = {}
    for a, b, c in inner.source.ring.vertices():
        x, y, z = pi_inner[a], pi_inner[b], pi_inner[c]
        key = (pi_outer[x], pi_outer[y], pi_outer[z])
        blocks[key] = outer.tensorator.block(*key) @ inner.tensorator.block(x, y, z)
    composite_map = tuple(pi_outer[x] for x in pi_inner)
    return EquivalenceData(
        inner.source,
        outer.target,
        composite_map,
        Gauge(ring=outer.target.ring, blocks=blocks),
    )


def relabeled_target(
    F: FSymbolSet, simple_map: Sequence[int], target_ring: FusionRing
) -> FSymbolSet:
    """
    F-symbols over `target_ring` that pull back to F along `simple_map`.

    Used to build equivalences whose underlying functor permutes simples.
    """
    inverse = [0] * len(simple_map)
    for a, x in enumerate(simple_map):
        inverse[x] = a
    return relabel_fsymbols(F, inverse, target_ring)
