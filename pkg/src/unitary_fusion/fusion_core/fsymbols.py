"""
Skeletal associators: F-symbol blocks over a fusion ring.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from types import MappingProxyType
from typing import Dict, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..config import DEFAULT_TOL
from ..errors import InputError
from ..interface import CheckReport, make_check
from .ring import ActionTable, FusionRing, Quad, Tree, fp_dimensions, is_ring_isomorphism

logger = logging.getLogger(__name__)

# Blocks with a larger condition number are treated as singular.
SINGULAR_CONDITION = 1e12


def freeze_blocks(blocks: Mapping[tuple, np.ndarray]) -> Mapping[tuple, np.ndarray]:
    frozen: Dict[tuple, np.ndarray] = {}
    for key in sorted(blocks):
        matrix = np.array(blocks[key], dtype=complex, copy=True)
        if matrix.ndim == 0:
            matrix = matrix.reshape(1, 1)
        if not np.all(np.isfinite(matrix)):
            raise InputError(f"block {key} has non-finite entries")
        matrix.setflags(write=False)
        frozen[tuple(int(i) for i in key)] = matrix
    return MappingProxyType(frozen)


def tree_positions(action: ActionTable, key: Quad) -> Tuple[Dict[Tree, int], Dict[Tree, int]]:
    """Row and column position of every fusion tree of block `key`."""
    return action.tree_positions(key)


def singular_blocks(blocks: Mapping[tuple, np.ndarray]) -> list:
    """Keys of the blocks whose condition number reaches SINGULAR_CONDITION, in key order."""
    return [
        key for key, matrix in blocks.items() if not np.linalg.cond(matrix) < SINGULAR_CONDITION
    ]


def validate_block_shapes(action: ActionTable, blocks: Mapping[Quad, np.ndarray], what: str):
    for key, matrix in blocks.items():
        if len(key) != 4:
            raise InputError(f"{what} key {key} must have four entries")
        a, b, y, z = key
        if not (0 <= a < action.ring.rank and 0 <= b < action.ring.rank):
            raise InputError(f"{what} key {key} out of range")
        if not (0 <= y < action.rank and 0 <= z < action.rank):
            raise InputError(f"{what} key {key} out of range")
        dim = action.block_dim(*key)
        if dim == 0:
            raise InputError(f"{what} block {key} is not admissible")
        if matrix.shape != (dim, dim):
            raise InputError(f"{what} block {key} must be {dim}x{dim}, got {matrix.shape}")


def unitarity_defect(matrix: np.ndarray) -> float:
    """Frobenius norm of B^dagger B - I."""
    return float(np.linalg.norm(matrix.conj().T @ matrix - np.eye(matrix.shape[0])))


@dataclass(frozen=True, eq=False)
class FSymbolSet:
    """One complex matrix per admissible (a, b, c; d)"""

    ring: FusionRing
    blocks: Mapping[Quad, np.ndarray] = field(repr=False)
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        if not self.tol > 0:
            raise InputError(f"tolerance must be positive, got {self.tol}")
        blocks = freeze_blocks(self.blocks)
        validate_block_shapes(self.action, blocks, "F-symbol")
        object.__setattr__(self, "blocks", blocks)

    @cached_property
    def action(self) -> ActionTable:
        return self.ring.regular_action

    @cached_property
    def pentagon(self) -> CheckReport:
        """Pentagon report at the set's own tolerance, computed once."""
        from .pentagon import verify_pentagon

        return verify_pentagon(self)

    def block(self, a: int, b: int, c: int, d: int) -> np.ndarray:
        try:
            return self.blocks[(a, b, c, d)]
        except KeyError:
            raise InputError(f"missing F-symbol block for admissible quadruple {(a, b, c, d)}")

    def entry(self, key: Quad, row: Tree, col: Tree) -> complex:
        rows, cols = tree_positions(self.action, key)
        return self.block(*key)[rows[row], cols[col]]

    def missing_blocks(self) -> list:
        return [key for key in self.action.admissible() if key not in self.blocks]

    def with_blocks(self, blocks: Mapping[Quad, np.ndarray]) -> "FSymbolSet":
        return FSymbolSet(ring=self.ring, blocks=blocks, tol=self.tol)

    def with_tol(self, tol: float) -> "FSymbolSet":
        return FSymbolSet(ring=self.ring, blocks=self.blocks, tol=tol)


def unit_normalization_defects(F: FSymbolSet) -> list:
    """Blocks with a unit among (a, b, c) that are not the identity."""
    defects = []
    for (a, b, c, d), matrix in F.blocks.items():
        if 0 in (a, b, c):
            if np.linalg.norm(matrix - np.eye(matrix.shape[0])) > F.tol:
                defects.append((a, b, c, d))
    return defects


def verify_unitary(F: FSymbolSet, tol: Optional[float] = None) -> CheckReport:
    """
    Max over blocks of ||B^dagger B - I||.

    Unitarity only means something for a pentagon solution; a set failing
    the pentagon is still checked, with a warning.

    Args:
        F: F-symbols to check
        tol: Threshold (defaults to F.tol)

    Returns:
        CheckReport named "unitary"
    """
    tol = F.tol if tol is None else tol
    if not F.pentagon["passed"]:
        logger.warning(
            "unitarity checked on F-symbols that fail the pentagon (residual %.3e)",
            F.pentagon["residual"],
        )
    worst, worst_key = 0.0, None
    for key in F.action.admissible():
        defect = unitarity_defect(F.block(*key))
        if defect > worst:
            worst, worst_key = defect, key
    logger.debug("unitarity residual %.3e at %s", worst, worst_key)
    return make_check("unitary", worst, tol, f"block {worst_key} is not unitary")


def relabel_fsymbols(
    F: FSymbolSet, simple_map: Sequence[int], source_ring: FusionRing
) -> FSymbolSet:
    """
    Pull F-symbols over a target ring back along a ring isomorphism.

    The block of the result at (a, b, c; d) is the target block at
    (pi a, pi b, pi c; pi d) with its rows and columns reordered into the
    source basis.

    Raises:
        InputError: If `simple_map` is not a ring isomorphism source -> F.ring
    """
    if not is_ring_isomorphism(source_ring, F.ring, simple_map):
        raise InputError(f"simple map {list(simple_map)} is not a fusion-ring isomorphism")
    pi = [int(x) for x in simple_map]
    if pi == list(range(len(pi))) and source_ring == F.ring:
        return F
    source_action = source_ring.regular_action
    blocks = {}
    for key in source_action.admissible():
        a, b, c, d = key
        target_key = (pi[a], pi[b], pi[c], pi[d])
        rows, cols = tree_positions(F.action, target_key)
        row_order = [rows[(pi[e], x, y)] for e, x, y in source_action.row_basis(*key)]
        col_order = [cols[(pi[k], x, y)] for k, x, y in source_action.col_basis(*key)]
        blocks[key] = F.block(*target_key)[np.ix_(row_order, col_order)]
    return FSymbolSet(ring=source_ring, blocks=blocks, tol=F.tol)


def quantum_dimensions(F: FSymbolSet) -> np.ndarray:
    """
    d_a = 1 / F^{a, dual a, a}_a at the unit channel on both sides.

    For a unitary presentation |d_a| is the Frobenius-Perron dimension; a
    negative value (Yang-Lee) shows that no positive dimension function fits.
    """
    dims = np.empty(F.ring.rank, dtype=complex)
    for a in range(F.ring.rank):
        key = (a, F.ring.dual[a], a, a)
        dims[a] = 1.0 / F.entry(key, (0, 0, 0), (0, 0, 0))
    return dims


def dimension_report(F: FSymbolSet, tol: Optional[float] = None) -> CheckReport:
    """Compare |d_a| from the F-symbols with the Frobenius-Perron dimensions."""
    tol = F.tol if tol is None else tol
    fp = fp_dimensions(F.ring)
    deviation = np.abs(np.abs(quantum_dimensions(F)) - fp) / fp
    worst = int(np.argmax(deviation))
    return make_check(
        "dimensions",
        float(deviation[worst]),
        tol,
        f"|d| of simple {F.ring.label(worst)} differs from its Frobenius-Perron dimension",
    )
