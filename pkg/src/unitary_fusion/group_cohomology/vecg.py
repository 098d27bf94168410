"""
Bridge between 3-cocycles and pointed fusion categories Vec_G^omega.

Every block of Vec_G^omega is 1x1 with F^{g,h,k}_{ghk} = omega(g, h, k), so the
pentagon is the cocycle condition. A 2-cochain c acts as the gauge
g^{gh}_{gh} = c(g, h), which multiplies omega by d c.
"""

import logging
from typing import Optional, Tuple

import numpy as np

from ..config import DEFAULT_TOL
from ..errors import InputError, PreconditionError
from ..fusion_core.fsymbols import FSymbolSet
from ..fusion_core.gauge import Gauge
from ..fusion_core.ring import FusionRing
from .cochain import Cochain, verify_cocycle
from .group import FiniteGroup

logger = logging.getLogger(__name__)


def build_vecG_category(
    G: FiniteGroup, omega: Cochain, tol: Optional[float] = None
) -> Tuple[FusionRing, FSymbolSet]:
    """
    Fusion ring and F-symbols of Vec_G^omega.

    Raises:
        InputError: If omega is not a degree-3 cochain on G
        PreconditionError: If omega is not a normalized cocycle
    """
    tol = DEFAULT_TOL if tol is None else tol
    if omega.degree != 3 or omega.group != G:
        raise InputError("Vec_G^omega needs a degree-3 cochain on G")
    report = verify_cocycle(omega, tol)
    if not report["passed"]:
        raise PreconditionError(f"omega is not a 3-cocycle: {report['detail']}")
    if not omega.normalized:
        raise PreconditionError("omega must be normalized")
    ring = G.ring()
    blocks = {
        (g, h, k, G.mul(G.mul(g, h), k)): np.array([[omega.values[g, h, k]]])
        for g, h, k in G.tuples(3)
    }
    logger.debug("built Vec_G^omega for a group of order %d", G.order)
    return ring, FSymbolSet(ring=ring, blocks=blocks, tol=tol)


def gauge_from_cochain(c: Cochain) -> Gauge:
    """
    The gauge g^{gh}_{gh} = c(g, h) on Vec_G.

    Raises:
        InputError: If c is not a normalized 2-cochain
    """
    if c.degree != 2:
        raise InputError(f"gauges on Vec_G come from 2-cochains, got degree {c.degree}")
    if not c.normalized:
        raise InputError("gauge cochains must be normalized")
    G = c.group
    return Gauge(
        ring=G.ring(),
        blocks={(g, h, G.mul(g, h)): np.array([[c.values[g, h]]]) for g, h in G.tuples(2)},
    )


def cocycle_from_fsymbols(F: FSymbolSet, G: FiniteGroup) -> Cochain:
    """
    The 3-cochain omega(g, h, k) = F^{g,h,k}_{ghk}.

    Raises:
        InputError: If F does not live on the fusion ring of Vec_G
    """
    if F.ring != G.ring():
        raise InputError("F-symbols do not live on the fusion ring of this group")
    values = np.empty((G.order,) * 3, dtype=complex)
    for g, h, k in G.tuples(3):
        values[g, h, k] = F.block(g, h, k, G.mul(G.mul(g, h), k))[0, 0]
    return Cochain(G, 3, values)
