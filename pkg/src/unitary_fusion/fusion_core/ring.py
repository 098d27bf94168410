"""
Fusion rings and fusion-tree bases.

A FusionRing stores N[a, b, c] = dim Hom(c, a (x) b) with the unit fixed at
index 0. An ActionTable generalizes the right factor of a fusion tree to the
simples of a module category; the ring acting on itself is the regular case,
so F-symbol and L-symbol blocks share one basis convention:

    rows    (e, alpha, beta):  alpha < N[a, b, e],  beta < act[e, y, z]
    columns (k, mu, nu):       mu < act[b, y, k],   nu < act[a, k, z]

both ordered lexicographically.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from typing import Dict, Iterator, List, Sequence, Tuple

import numpy as np
from scipy import linalg

from ..errors import InputError
from ..interface import CheckReport, make_check

logger = logging.getLogger(__name__)

Quad = Tuple[int, int, int, int]
Vertex = Tuple[int, int, int]
Tree = Tuple[int, int, int]


def _frozen(array: np.ndarray) -> np.ndarray:
    array = np.array(array, copy=True)
    array.setflags(write=False)
    return array


@dataclass(frozen=True, eq=False)
class FusionRing:
    """Fusion rules of a skeletal fusion category; index 0 is the unit"""

    N: np.ndarray
    dual: Tuple[int, ...]
    labels: Tuple[str, ...] = ()

    def __post_init__(self):
        N = np.asarray(self.N)
        if N.ndim != 3 or len(set(N.shape)) != 1 or N.shape[0] == 0:
            raise InputError(f"fusion tensor must be rank x rank x rank, got shape {N.shape}")
        if not np.issubdtype(N.dtype, np.integer):
            if not np.all(np.equal(np.mod(N, 1), 0)):
                raise InputError("fusion multiplicities must be integers")
            N = N.astype(np.int64)
        if np.any(N < 0):
            raise InputError("fusion multiplicities must be nonnegative")
        rank = N.shape[0]
        dual = tuple(int(x) for x in self.dual)
        if len(dual) != rank or any(not 0 <= x < rank for x in dual):
            raise InputError(f"dual must be a map on {rank} simples, got {list(self.dual)}")
        labels = tuple(self.labels) or tuple(str(i) for i in range(rank))
        if len(labels) != rank:
            raise InputError(f"expected {rank} labels, got {len(labels)}")
        object.__setattr__(self, "N", _frozen(N.astype(np.int64)))
        object.__setattr__(self, "dual", dual)
        object.__setattr__(self, "labels", labels)

    @property
    def rank(self) -> int:
        return self.N.shape[0]

    def channels(self, a: int, b: int) -> List[int]:
        """Simples c with N[a, b, c] > 0, ascending."""
        return [int(c) for c in np.flatnonzero(self.N[a, b])]

    def vertices(self) -> Iterator[Vertex]:
        """All (a, b, c) with a nonzero multiplicity space."""
        for a, b, c in zip(*np.nonzero(self.N)):
            yield int(a), int(b), int(c)

    @cached_property
    def regular_action(self) -> "ActionTable":
        return ActionTable(ring=self, rank=self.rank, mult=self.N)

    def label(self, index: int) -> str:
        return self.labels[index]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FusionRing):
            return NotImplemented
        return self.dual == other.dual and np.array_equal(self.N, other.N)

    def __hash__(self) -> int:
        return hash((self.dual, self.N.tobytes()))


@dataclass(frozen=True, eq=False)
class ActionTable:
    """`ring` acting on `rank` simples with mult[a, y, z] = dim Hom(z, a |> y)"""

    ring: FusionRing
    rank: int
    mult: np.ndarray = field(repr=False)

    def __post_init__(self):
        mult = np.asarray(self.mult)
        expected = (self.ring.rank, self.rank, self.rank)
        if mult.shape != expected:
            raise InputError(f"action tensor must have shape {expected}, got {mult.shape}")
        if np.any(mult < 0):
            raise InputError("action multiplicities must be nonnegative")
        object.__setattr__(self, "mult", _frozen(mult.astype(np.int64)))

    def row_basis(self, a: int, b: int, y: int, z: int) -> List[Tree]:
        N = self.ring.N
        return [
            (e, alpha, beta)
            for e in range(self.ring.rank)
            for alpha in range(N[a, b, e])
            for beta in range(self.mult[e, y, z])
        ]

    def col_basis(self, a: int, b: int, y: int, z: int) -> List[Tree]:
        return [
            (k, mu, nu)
            for k in range(self.rank)
            for mu in range(self.mult[b, y, k])
            for nu in range(self.mult[a, k, z])
        ]

    @cached_property
    def _positions(self) -> Dict[Quad, Tuple[Dict[Tree, int], Dict[Tree, int]]]:
        return {}

    def tree_positions(self, key: Quad) -> Tuple[Dict[Tree, int], Dict[Tree, int]]:
        """Row and column position of every fusion tree of block `key`, kept with the table."""
        positions = self._positions.get(key)
        if positions is None:
            rows = {tree: i for i, tree in enumerate(self.row_basis(*key))}
            cols = {tree: j for j, tree in enumerate(self.col_basis(*key))}
            positions = self._positions[key] = (rows, cols)
        return positions

    def block_dim(self, a: int, b: int, y: int, z: int) -> int:
        return int(np.einsum("e,e->", self.ring.N[a, b], self.mult[:, y, z]))

    def admissible(self) -> Iterator[Quad]:
        """Quadruples (a, b, y; z) whose block is nonempty, in lexicographic order."""
        r, m = self.ring.rank, self.rank
        for a, b, y, z in product(range(r), range(r), range(m), range(m)):
            if self.block_dim(a, b, y, z):
                yield a, b, y, z

    def associativity_defects(self) -> Iterator[str]:
        N, n = self.ring.N, self.mult
        # sum_e N_ab^e n_ey^z  ==  sum_k n_by^k n_ak^z
        left = np.einsum("abe,eyz->abyz", N, n)
        right = np.einsum("byk,akz->abyz", n, n)
        for a, b, y, z in zip(*np.nonzero(left != right)):
            yield (
                f"associativity fails at (a,b,y;z)=({a},{b},{y};{z}): "
                f"{left[a, b, y, z]} != {right[a, b, y, z]}"
            )


def _ring_defects(ring: FusionRing) -> Iterator[str]:
    N, dual, rank = ring.N, ring.dual, ring.rank
    eye = np.eye(rank, dtype=np.int64)
    if dual[0] != 0:
        yield f"dual of the unit is {dual[0]}, expected 0"
    for a in range(rank):
        if dual[dual[a]] != a:
            yield f"dual is not an involution at {a}"
    for a in range(rank):
        if not np.array_equal(N[0, a], eye[a]) or not np.array_equal(N[a, 0], eye[a]):
            yield f"unit law fails for simple {a}"
    for a, b in product(range(rank), repeat=2):
        expected = 1 if b == dual[a] else 0
        if N[a, b, 0] != expected:
            yield f"rigidity fails: N[{a},{b},0]={N[a, b, 0]}, expected {expected}"
    for a, b, c in product(range(rank), repeat=3):
        if not N[a, b, c] == N[dual[a], c, b] == N[c, dual[b], a]:
            yield f"Frobenius reciprocity fails at (a,b,c)=({a},{b},{c})"
    yield from ring.regular_action.associativity_defects()


def verify_ring_axioms(ring: FusionRing) -> CheckReport:
    """
    Check unit, duality, Frobenius reciprocity and associativity exactly.

    The residual counts violated identities; tolerance is 0.

    Args:
        ring: Fusion ring to check

    Returns:
        CheckReport named "ring" whose detail is the first violated identity
    """
    defects = list(_ring_defects(ring))
    if defects:
        logger.debug("ring axioms: %d violations, first: %s", len(defects), defects[0])
    return make_check("ring", float(len(defects)), 0.0, defects[0] if defects else "")


def is_ring_isomorphism(source: FusionRing, target: FusionRing, simple_map: Sequence[int]) -> bool:
    """True iff `simple_map` is a bijection preserving unit, duals and all multiplicities."""
    pi = np.asarray(simple_map, dtype=np.int64)
    if source.rank != target.rank or pi.shape != (source.rank,):
        return False
    if sorted(pi.tolist()) != list(range(source.rank)) or pi[0] != 0:
        return False
    if any(pi[source.dual[a]] != target.dual[pi[a]] for a in range(source.rank)):
        return False
    return bool(np.array_equal(target.N[np.ix_(pi, pi, pi)], source.N))


def fp_dimensions(ring: FusionRing) -> np.ndarray:
    """
    Frobenius-Perron dimensions.

    Perron eigenvector of sum_a L_a with (L_a)[b, c] = N[a, b, c], scaled so
    that the unit has dimension 1.
    """
    total = ring.N.sum(axis=0).astype(float)
    values, vectors = linalg.eig(total)
    top = int(np.argmax(values.real))
    vector = np.abs(vectors[:, top].real)
    return vector / vector[0]


def positive_character_space(ring: FusionRing) -> Tuple[int, np.ndarray]:
    """
    Real solutions of x_a + x_b = x_c on every channel with x_unit = 0.

    These are the logarithms of positive characters of the fusion ring.

    Returns:
        (dimension, basis) with basis of shape (rank, dimension)
    """
    rows = []
    for a, b, c in ring.vertices():
        row = np.zeros(ring.rank)
        row[a] += 1.0
        row[b] += 1.0
        row[c] -= 1.0
        rows.append(row[1:])
    if ring.rank == 1:
        return 0, np.zeros((1, 0))
    system = np.array(rows) if rows else np.zeros((0, ring.rank - 1))
    kernel = linalg.null_space(system)
    basis = np.vstack([np.zeros((1, kernel.shape[1])), kernel])
    return int(kernel.shape[1]), basis


def relabel_ring(ring: FusionRing, simple_map: Sequence[int]) -> FusionRing:
    """The ring whose simple pi(a) plays the role of a: N'[pi a, pi b, pi c] = N[a, b, c]."""
    pi = np.asarray(simple_map, dtype=np.int64)
    inverse = np.argsort(pi)
    return FusionRing(
        N=ring.N[np.ix_(inverse, inverse, inverse)],
        dual=tuple(int(pi[ring.dual[inverse[x]]]) for x in range(ring.rank)),
        labels=tuple(ring.labels[inverse[x]] for x in range(ring.rank)),
    )


# ---------------------------------------------------------------------------
# Built-in rings


def trivial_ring() -> FusionRing:
    return FusionRing(N=np.ones((1, 1, 1), dtype=np.int64), dual=(0,), labels=("1",))


def fibonacci_ring() -> FusionRing:
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = 1
    N[1, 1, 0] = N[1, 1, 1] = 1
    return FusionRing(N=N, dual=(0, 1), labels=("1", "tau"))


def ising_ring() -> FusionRing:
    one, sigma, psi = 0, 1, 2
    N = np.zeros((3, 3, 3), dtype=np.int64)
    for a in range(3):
        N[one, a, a] = N[a, one, a] = 1
    N[sigma, sigma, one] = N[sigma, sigma, psi] = 1
    N[sigma, psi, sigma] = N[psi, sigma, sigma] = 1
    N[psi, psi, one] = 1
    return FusionRing(N=N, dual=(0, 1, 2), labels=("1", "sigma", "psi"))


def group_ring(
    cayley: np.ndarray, inverse: Sequence[int], labels: Sequence[str] = ()
) -> FusionRing:
    """Fusion rules of Vec_G: g (x) h = gh."""
    order = len(inverse)
    N = np.zeros((order, order, order), dtype=np.int64)
    for g, h in product(range(order), repeat=2):
        N[g, h, cayley[g][h]] = 1
    return FusionRing(N=N, dual=tuple(inverse), labels=tuple(labels))


def cyclic_ring(n: int) -> FusionRing:
    cayley = [[(g + h) % n for h in range(n)] for g in range(n)]
    inverse = [(-g) % n for g in range(n)]
    return group_ring(np.array(cayley), inverse, [f"g{g}" if g else "1" for g in range(n)])


def multiplicity_ring() -> FusionRing:
    """Synthetic rank-2 ring x (x) x = 1 + 2x, only used to exercise multiplicity-2 blocks."""
    N = np.zeros((2, 2, 2), dtype=np.int64)
    N[0, 0, 0] = N[0, 1, 1] = N[1, 0, 1] = N[1, 1, 0] = 1
    N[1, 1, 1] = 2
    return FusionRing(N=N, dual=(0, 1), labels=("1", "x"))

