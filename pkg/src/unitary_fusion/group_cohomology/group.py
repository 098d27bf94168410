"""
Finite groups given by Cayley tables, identity at index 0.
"""

import logging
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Iterator, Tuple

import numpy as np

from ..errors import InputError
from ..fusion_core.ring import FusionRing, group_ring
from ..interface import CheckReport, make_check

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    """cayley[g, h] is the index of g h"""

    cayley: np.ndarray = field(repr=False)
    labels: Tuple[str, ...] = ()
    name: str = ""

    def __post_init__(self):
        cayley = np.array(self.cayley, dtype=np.int64, copy=True)
        order = cayley.shape[0] if cayley.ndim == 2 else 0
        if order == 0 or cayley.shape != (order, order):
            raise InputError(f"Cayley table must be square and nonempty, got shape {cayley.shape}")
        if np.any(cayley < 0) or np.any(cayley >= order):
            raise InputError("Cayley table entries must be group indices")
        labels = tuple(self.labels) or tuple(str(g) for g in range(order))
        if len(labels) != order:
            raise InputError(f"expected {order} labels, got {len(labels)}")
        cayley.setflags(write=False)
        object.__setattr__(self, "cayley", cayley)
        object.__setattr__(self, "labels", labels)

    @property
    def order(self) -> int:
        return self.cayley.shape[0]

    def mul(self, g: int, h: int) -> int:
        return int(self.cayley[g, h])

    @property
    def inverse(self) -> Tuple[int, ...]:
        """Right inverses read off the table (meaningful once the axioms hold)."""
        return tuple(
            int(np.flatnonzero(row == 0)[0]) if np.any(row == 0) else 0 for row in self.cayley
        )

    def tuples(self, degree: int) -> Iterator[Tuple[int, ...]]:
        """G^degree in lexicographic order."""
        return product(range(self.order), repeat=degree)

    def ring(self) -> FusionRing:
        """Fusion rules of Vec_G."""
        return group_ring(self.cayley, self.inverse, self.labels)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FiniteGroup):
            return NotImplemented
        return np.array_equal(self.cayley, other.cayley)

    def __hash__(self) -> int:
        return hash(self.cayley.tobytes())


def _group_defects(G: FiniteGroup) -> Iterator[str]:
    T, order = G.cayley, G.order
    for g in range(order):
        if T[0, g] != g or T[g, 0] != g:
            yield f"index 0 is not an identity for {G.labels[g]}"
    for g in range(order):
        if sorted(T[g].tolist()) != list(range(order)):
            yield f"row {G.labels[g]} is not a permutation (no inverse)"
        if sorted(T[:, g].tolist()) != list(range(order)):
            yield f"column {G.labels[g]} is not a permutation (no inverse)"
    # (g h) k == g (h k)
    left = T[T[:, :, None], np.arange(order)[None, None, :]]
    right = T[np.arange(order)[:, None, None], T[None, :, :]]
    for g, h, k in zip(*np.nonzero(left != right)):
        yield f"associativity fails at ({G.labels[g]}, {G.labels[h]}, {G.labels[k]})"


def verify_group_axioms(G: FiniteGroup) -> CheckReport:
    """
    Identity, inverse and associativity laws, exactly.

    Returns:
        CheckReport named "group" whose residual counts violations (tolerance 0)
    """
    defects = list(_group_defects(G))
    if defects:
        logger.debug("group axioms: %d violations, first: %s", len(defects), defects[0])
    return make_check("group", float(len(defects)), 0.0, defects[0] if defects else "")


# ---------------------------------------------------------------------------
# Built-in groups


def cyclic_group(n: int) -> FiniteGroup:
    if n < 1:
        raise InputError(f"cyclic group order must be positive, got {n}")
    cayley = (np.arange(n)[:, None] + np.arange(n)[None, :]) % n
    return FiniteGroup(
        cayley=cayley, labels=tuple("e" if g == 0 else f"g{g}" for g in range(n)), name=f"Z{n}"
    )


def direct_product(G: FiniteGroup, H: FiniteGroup) -> FiniteGroup:
    """(g, h) has index g * |H| + h."""
    m = H.order
    cayley = np.empty((G.order * m, G.order * m), dtype=np.int64)
    for g1, h1, g2, h2 in product(range(G.order), range(m), range(G.order), range(m)):
        cayley[g1 * m + h1, g2 * m + h2] = G.mul(g1, g2) * m + H.mul(h1, h2)
    labels = tuple(f"({g},{h})" for g in G.labels for h in H.labels)
    return FiniteGroup(cayley=cayley, labels=labels, name=f"{G.name}x{H.name}")


def symmetric_group(n: int = 3) -> FiniteGroup:
    """
    Permutations of range(n) in lexicographic order (identity first), with
    (s t)(i) = s(t(i)).
    """
    elements = list(permutations(range(n)))
    index = {p: i for i, p in enumerate(elements)}
    cayley = np.array(
        [[index[tuple(s[t[i]] for i in range(n))] for t in elements] for s in elements]
    )
    labels = tuple("".join(str(i) for i in p) for p in elements)
    return FiniteGroup(cayley=cayley, labels=labels, name=f"S{n}")
