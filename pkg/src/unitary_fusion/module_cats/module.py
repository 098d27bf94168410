"""
Skeletal left module categories over a fusion category.

The action of ring simple a on module simple m is n[a, m, m'] = dim Hom(m', a |> m).
Module associators L^{a,b,m}_{m'} are blocks in the ActionTable basis of the
action, so the regular module (the ring acting on itself) has L = F.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator, List, Mapping, Optional, Tuple

import numpy as np
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import connected_components as graph_components

from ..config import DEFAULT_TOL
from ..errors import InputError
from ..fusion_core.fsymbols import (
    FSymbolSet,
    freeze_blocks,
    unitarity_defect,
    validate_block_shapes,
)
from ..fusion_core.gauge import BlockGauge, compose_gauges, frame_matrices, gauge_block
from ..fusion_core.pentagon import pentagon_check
from ..fusion_core.ring import ActionTable, FusionRing, Quad, Vertex
from ..fusion_core.sampling import SPECTRUM, random_unitary
from ..interface import CheckReport, make_check

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class ModuleData:
    """Action multiplicities plus one L block per admissible (a, b, m; m')"""

    ring: FusionRing
    module_rank: int
    n: np.ndarray = field(repr=False)
    blocks: Mapping[Quad, np.ndarray] = field(repr=False)
    labels: Tuple[str, ...] = ()
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if self.module_rank < 1:
            raise InputError(f"module rank must be positive, got {self.module_rank}")
        if not self.tol > 0:
            raise InputError(f"tolerance must be positive, got {self.tol}")
        action = self.action
        if not np.array_equal(action.mult[0], np.eye(self.module_rank, dtype=np.int64)):
            raise InputError("the unit must act as the identity on module simples")
        defects = list(action.associativity_defects())
        if defects:
            raise InputError(f"module action is not associative: {defects[0]}")
        labels = tuple(self.labels) or tuple(f"m{i}" for i in range(self.module_rank))
        if len(labels) != self.module_rank:
            raise InputError(f"expected {self.module_rank} module labels, got {len(labels)}")
        blocks = freeze_blocks(self.blocks)
        validate_block_shapes(action, blocks, "L-symbol")
        object.__setattr__(self, "n", action.mult)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "blocks", blocks)

    @cached_property
    def action(self) -> ActionTable:
        return ActionTable(ring=self.ring, rank=self.module_rank, mult=self.n)

    def block(self, a: int, b: int, m: int, m_out: int) -> np.ndarray:
        try:
            return self.blocks[(a, b, m, m_out)]
        except KeyError:
            raise InputError(f"missing L-symbol block {(a, b, m, m_out)}")

    def missing_blocks(self) -> List[Quad]:
        return [key for key in self.action.admissible() if key not in self.blocks]

    def with_blocks(self, blocks: Mapping[Quad, np.ndarray]) -> "ModuleData":
        return ModuleData(self.ring, self.module_rank, self.n, blocks, self.labels, self.tol)


@dataclass(frozen=True, eq=False)
class ModuleGauge(BlockGauge):
    """One invertible n[a,m,m'] x n[a,m,m'] block per action vertex (a, m; m')"""

    action: ActionTable
    blocks: Mapping[Vertex, np.ndarray] = field(repr=False)

    def __post_init__(self):
        self._validate()

    def vertex_keys(self) -> Iterator[Vertex]:
        for a, m, k in zip(*np.nonzero(self.action.mult)):
            yield int(a), int(m), int(k)

    def multiplicity(self, key: Vertex) -> int:
        return int(self.action.mult[key])

    def unit_keys(self) -> Iterator[Vertex]:
        return (key for key in self.vertex_keys() if key[0] == 0)

    def with_blocks(self, blocks: Mapping[Vertex, np.ndarray]) -> "ModuleGauge":
        return ModuleGauge(action=self.action, blocks=blocks)


@dataclass(frozen=True, eq=False)
class ModuleNatIso:
    """One nonzero scalar per module simple"""

    module_rank: int
    components: np.ndarray

    def __post_init__(self):
        components = np.array(self.components, dtype=complex).reshape(-1)
        if components.shape != (self.module_rank,):
            raise InputError(
                f"expected {self.module_rank} components, got {components.shape[0]}"
            )
        if np.any(components == 0):
            raise InputError("natural isomorphism components must be nonzero")
        components.setflags(write=False)
        object.__setattr__(self, "components", components)


def identity_module_gauge(action: ActionTable) -> ModuleGauge:
    return ModuleGauge(
        action=action,
        blocks={
            (int(a), int(m), int(k)): np.eye(action.mult[a, m, k])
            for a, m, k in zip(*np.nonzero(action.mult))
        },
    )


def module_coboundary_gauge(action: ActionTable, mu: ModuleNatIso) -> ModuleGauge:
    """(mu_m / mu_{m'}) * I on every action vertex (a, m; m'); L is invariant under it."""
    x = mu.components
    if mu.module_rank != action.rank:
        raise InputError("natural isomorphism does not match the module rank")
    return ModuleGauge(
        action=action,
        blocks={
            (int(a), int(m), int(k)): (x[m] / x[k]) * np.eye(action.mult[a, m, k])
            for a, m, k in zip(*np.nonzero(action.mult))
        },
    )


def verify_module_pentagon(
    M: ModuleData, F: FSymbolSet, tol: Optional[float] = None
) -> CheckReport:
    """
    Module pentagon mixing F (ring side) and L (module side).

    Returns:
        CheckReport named "module-pentagon"

    Raises:
        InputError: If M and F live on different rings or a block is missing
    """
    tol = M.tol if tol is None else tol
    if M.ring != F.ring:
        raise InputError("module data and F-symbols live on different fusion rings")
    return pentagon_check(M.action, F.block, M.block, tol, "module-pentagon")


def verify_module_unitary(M: ModuleData, tol: Optional[float] = None) -> CheckReport:
    tol = M.tol if tol is None else tol
    worst, worst_key = 0.0, None
    for key in M.action.admissible():
        defect = unitarity_defect(M.block(*key))
        if defect > worst:
            worst, worst_key = defect, key
    return make_check("module-unitary", worst, tol, f"L block {worst_key} is not unitary")


def regular_module(F: FSymbolSet) -> ModuleData:
    """The ring acting on itself: n = N and L = F."""
    ring = F.ring
    return ModuleData(
        ring=ring,
        module_rank=ring.rank,
        n=ring.N,
        blocks=dict(F.blocks),
        labels=ring.labels,
        tol=F.tol,
    )


def apply_module_gauge(M: ModuleData, f: ModuleGauge) -> ModuleData:
    """
    L' = G_L^{-T} L G_R^T with the ring factor of G_L fixed to the identity.

    Raises:
        InputError: If f is a gauge for a different action
    """
    if f.action.ring != M.ring or not np.array_equal(f.action.mult, M.n):
        raise InputError("module gauge and module data have different actions")
    blocks = {}
    for key in M.action.admissible():
        frames = frame_matrices(M.action, key, None, f.block)
        blocks[key] = gauge_block(M.block(*key), frames)
    return M.with_blocks(blocks)


def action_components(action: ActionTable) -> List[List[int]]:
    """
    Simples grouped by the action graph (m -- m' when some a |> m contains m').

    Components come out ordered by their smallest simple, each sorted ascending.
    """
    adjacency = csr_matrix((action.mult.sum(axis=0) > 0).astype(np.int8))
    count, labels = graph_components(adjacency, directed=True, connection="weak")
    groups: List[List[int]] = [[] for _ in range(count)]
    for m, label in enumerate(labels):
        groups[label].append(m)
    return sorted(groups, key=lambda group: group[0])


def connected_components(M: ModuleData) -> List[List[int]]:
    """Indecomposable summands of M as lists of module simples."""
    return action_components(M.action)


def random_unitary_module_gauge(action: ActionTable, rng: np.random.Generator) -> ModuleGauge:
    """Random unitary blocks, identity wherever the unit acts."""
    blocks = {}
    for a, m, k in zip(*np.nonzero(action.mult)):
        n = int(action.mult[a, m, k])
        blocks[(int(a), int(m), int(k))] = np.eye(n) if a == 0 else random_unitary(n, rng)
    return ModuleGauge(action=action, blocks=blocks)


def coboundary_twisted_module_gauge(
    action: ActionTable, rng: np.random.Generator
) -> ModuleGauge:
    """
    A positive module coboundary composed with a random unitary module gauge.

    Applied to unitary L-symbols it yields another unitary presentation while
    the tensorator itself is neither unitary nor positive.
    """
    mu = ModuleNatIso(action.rank, rng.uniform(*SPECTRUM, size=action.rank))
    return compose_gauges(
        module_coboundary_gauge(action, mu), random_unitary_module_gauge(action, rng)
    )
