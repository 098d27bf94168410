"""
Pentagon verification.

One implementation serves both the fusion pentagon (F only) and the module
pentagon (F on the ring side, L once the last object is a module simple).
For objects a, b, c in the ring and d on the acted-on side, with total e, the
two paths from ((ab)c)d to a(b(cd)) are

    P1 = sum_nu  L^{fcd}_e[(g,beta,gamma),(l,mu,nu)] L^{abl}_e[(f,alpha,nu),(k,rho,sigma)]
    P2 = sum_{h,tau,kappa,lambda}  F^{abc}_g[(f,alpha,beta),(h,tau,kappa)]
             L^{ahd}_e[(g,kappa,gamma),(k,lambda,sigma)]  L^{bcd}_k[(h,tau,lambda),(l,mu,rho)]

and the instance residual is ||P1 - P2||_F / max(||P1||_F, ||P2||_F).
"""

import logging
from itertools import product
from typing import Callable, Optional, Tuple

import numpy as np

from ..interface import CheckReport, make_check
from .fsymbols import FSymbolSet, tree_positions
from .ring import ActionTable, Quad

logger = logging.getLogger(__name__)

BlockLookup = Callable[[int, int, int, int], np.ndarray]


class _Entries:
    """Entry lookup by fusion trees for one block family"""

    def __init__(self, action: ActionTable, lookup: BlockLookup):
        self.action = action
        self.lookup = lookup

    def __call__(self, key: Quad, row: tuple, col: tuple) -> complex:
        rows, cols = tree_positions(self.action, key)
        return self.lookup(*key)[rows[row], cols[col]]


def _instance(
    action: ActionTable, F: _Entries, L: _Entries, a: int, b: int, c: int, d: int, e: int
) -> Optional[Tuple[np.ndarray, np.ndarray]]:
    N, A = action.ring.N, action.mult
    r, m = action.ring.rank, action.rank
    initial = [
        (f, g, al, be, ga)
        for f, g in product(range(r), range(r))
        for al in range(N[a, b, f])
        for be in range(N[f, c, g])
        for ga in range(A[g, d, e])
    ]
    if not initial:
        return None
    final = [
        (l, k, mu, rho, si)
        for l, k in product(range(m), range(m))
        for mu in range(A[c, d, l])
        for rho in range(A[b, l, k])
        for si in range(A[a, k, e])
    ]
    p1 = np.zeros((len(initial), len(final)), dtype=complex)
    p2 = np.zeros_like(p1)
    for i, (f, g, al, be, ga) in enumerate(initial):
        for j, (l, k, mu, rho, si) in enumerate(final):
            p1[i, j] = sum(
                L((f, c, d, e), (g, be, ga), (l, mu, nu))
                * L((a, b, l, e), (f, al, nu), (k, rho, si))
                for nu in range(A[f, l, e])
            )
            total = 0j
            for h in range(r):
                for tau, kappa, lam in product(
                    range(N[b, c, h]), range(N[a, h, g]), range(A[h, d, k])
                ):
                    total += (
                        F((a, b, c, g), (f, al, be), (h, tau, kappa))
                        * L((a, h, d, e), (g, kappa, ga), (k, lam, si))
                        * L((b, c, d, k), (h, tau, lam), (l, mu, rho))
                    )
            p2[i, j] = total
    return p1, p2


def pentagon_check(
    action: ActionTable,
    f_lookup: BlockLookup,
    l_lookup: BlockLookup,
    tol: float,
    name: str = "pentagon",
) -> CheckReport:
    """
    Max relative pentagon residual over all instances.

    Args:
        action: Basis convention of the L family (regular action for F itself)
        f_lookup: F-symbol block lookup on the ring
        l_lookup: Associator block lookup on the acted-on side
        tol: Pass threshold
        name: Report name

    Returns:
        CheckReport with the first instance above `tol` as detail
    """
    F = _Entries(action.ring.regular_action, f_lookup)
    L = _Entries(action, l_lookup)
    r, m = action.ring.rank, action.rank
    worst, first_bad = 0.0, ""
    for a, b, c in product(range(r), repeat=3):
        for d, e in product(range(m), repeat=2):
            paths = _instance(action, F, L, a, b, c, d, e)
            if paths is None:
                continue
            p1, p2 = paths
            scale = max(np.linalg.norm(p1), np.linalg.norm(p2), np.finfo(float).tiny)
            residual = float(np.linalg.norm(p1 - p2) / scale)
            if residual > tol and not first_bad:
                first_bad = f"{name} fails at (a,b,c,d;e)=({a},{b},{c},{d};{e})"
            worst = max(worst, residual)
    logger.debug("%s residual %.3e", name, worst)
    return make_check(name, worst, tol, first_bad)


def verify_pentagon(F: FSymbolSet, tol: Optional[float] = None) -> CheckReport:
    """
    Pentagon residual of an F-symbol set.

    Args:
        F: F-symbols (every admissible block must be present)
        tol: Threshold (defaults to F.tol)

    Returns:
        CheckReport named "pentagon"

    Raises:
        InputError: If a block needed by some instance is missing
    """
    tol = F.tol if tol is None else tol
    return pentagon_check(F.action, F.block, F.block, tol)
