"""
Hexagon verification and braiding unitarity.

For every (a, b, c; d) the hexagon compares, between the row basis of
F^{abc}_d and the column basis of F^{bca}_d,

    LHS = sum  F^{abc}_d[(e,alpha,beta),(f,mu',nu')] R^{af}_d[nu'',nu']
                   F^{bca}_d[(f,mu',nu''),(g,mu,nu)]
    RHS = sum  R^{ab}_e[alpha',alpha] F^{bac}_d[(e,alpha',beta),(g,kappa,nu)] R^{ac}_g[mu,kappa]

The second family is the same identity for the reverse braiding.
"""

import logging
from itertools import product
from typing import Optional

import numpy as np

from ..errors import PreconditionError
from ..fusion_core.fsymbols import FSymbolSet, unitarity_defect, verify_unitary
from ..fusion_core.pentagon import verify_pentagon
from ..interface import CheckReport, make_check
from .rsymbols import RSymbolSet, reverse_braiding

logger = logging.getLogger(__name__)


def _hexagon_instance(F: FSymbolSet, R: RSymbolSet, a: int, b: int, c: int, d: int):
    action = F.action
    N = F.ring.N
    rows = action.row_basis(a, b, c, d)
    cols = action.col_basis(b, c, a, d)
    middle = action.col_basis(a, b, c, d)
    lhs = np.zeros((len(rows), len(cols)), dtype=complex)
    rhs = np.zeros_like(lhs)
    for i, (e, alpha, beta) in enumerate(rows):
        for j, (g, mu, nu) in enumerate(cols):
            total = 0j
            for f, mu1, nu1 in middle:
                for nu2 in range(N[f, a, d]):
                    total += (
                        F.entry((a, b, c, d), (e, alpha, beta), (f, mu1, nu1))
                        * R.block(a, f, d)[nu2, nu1]
                        * F.entry((b, c, a, d), (f, mu1, nu2), (g, mu, nu))
                    )
            lhs[i, j] = total
            total = 0j
            for alpha1, kappa in product(range(N[b, a, e]), range(N[a, c, g])):
                total += (
                    R.block(a, b, e)[alpha1, alpha]
                    * F.entry((b, a, c, d), (e, alpha1, beta), (g, kappa, nu))
                    * R.block(a, c, g)[mu, kappa]
                )
            rhs[i, j] = total
    return lhs, rhs


def _hexagon_family(F: FSymbolSet, R: RSymbolSet, label: str):
    worst, first_bad = 0.0, ""
    for a, b, c, d in F.action.admissible():
        lhs, rhs = _hexagon_instance(F, R, a, b, c, d)
        scale = max(np.linalg.norm(lhs), np.linalg.norm(rhs), np.finfo(float).tiny)
        residual = float(np.linalg.norm(lhs - rhs) / scale)
        if residual > F.tol and not first_bad:
            first_bad = f"{label} hexagon fails at (a,b,c;d)=({a},{b},{c};{d})"
        worst = max(worst, residual)
    return worst, first_bad


def verify_hexagon(F: FSymbolSet, R: RSymbolSet, tol: Optional[float] = None) -> CheckReport:
    """
    Max residual over both hexagon families.

    Args:
        F: Pentagon-valid F-symbols
        R: R-symbols on the same ring (one family; the reverse one is derived)
        tol: Threshold (defaults to F.tol)

    Returns:
        CheckReport named "hexagon"
    """
    tol = F.tol if tol is None else tol
    if R.ring != F.ring:
        raise PreconditionError("R-symbols and F-symbols live on different fusion rings")
    first, first_bad = _hexagon_family(F, R, "first")
    second, second_bad = _hexagon_family(F, reverse_braiding(R), "second")
    logger.debug("hexagon residuals %.3e / %.3e", first, second)
    return make_check("hexagon", max(first, second), tol, first_bad or second_bad)


def verify_braiding_unitary(
    F: FSymbolSet, R: RSymbolSet, tol: Optional[float] = None
) -> CheckReport:
    """
    Every braiding of a unitary fusion category is unitary; check it blockwise.

    Raises:
        PreconditionError: If F fails the pentagon or unitarity, or (F, R) fails
            the hexagon (the data is inconsistent rather than non-unitary)
    """
    tol = F.tol if tol is None else tol
    for report in (verify_pentagon(F, tol), verify_unitary(F, tol), verify_hexagon(F, R, tol)):
        if not report["passed"]:
            raise PreconditionError(
                f"inconsistent braided data: {report['name']} check fails "
                f"(residual {report['residual']:.3e})"
            )
    worst, worst_key = 0.0, None
    for key, block in R.blocks.items():
        defect = unitarity_defect(block)
        if defect > worst:
            worst, worst_key = defect, key
    return make_check("braiding-unitary", worst, tol, f"R block {worst_key} is not unitary")
