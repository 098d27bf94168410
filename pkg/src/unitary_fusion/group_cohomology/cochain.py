"""
C^x-valued group cochains, their coboundaries and the polar argument in
group cohomology: a cocycle splits as omega = u |omega| with both factors
cocycles, and the positive factor is a coboundary.

Coboundary convention (trivial action, multiplicative bar resolution):

    (d f)(g1, ..., g_{n+1}) = f(g2, ..., g_{n+1})
                              * prod_{i=1..n} f(..., g_i g_{i+1}, ...)^{(-1)^i}
                              * f(g1, ..., g_n)^{(-1)^{n+1}}

so (d eta)(g, h) = eta(h) eta(g) / eta(g h) in degree 1 and
(d omega)(g, h, k, l) = omega(h,k,l) omega(g,hk,l) omega(g,h,k) / (omega(gh,k,l) omega(g,h,kl))
in degree 3.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional

import numpy as np
from scipy import linalg

from ..config import DEFAULT_TOL
from ..errors import DomainError, InconsistencyError, InputError, PreconditionError
from ..interface import CertificateReport, CheckReport, make_certificate, make_check
from ..polar_engine.polar import PolarPair
from .group import FiniteGroup

logger = logging.getLogger(__name__)

MAX_DEGREE = 3


@dataclass(frozen=True, eq=False)
class Cochain:
    """values[g1, ..., gn] for every tuple in G^n"""

    group: FiniteGroup
    degree: int
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if not 0 <= self.degree <= MAX_DEGREE + 1:
            raise InputError(
                f"cochain degree must be between 0 and {MAX_DEGREE + 1}, got {self.degree}"
            )
        shape = (self.group.order,) * self.degree
        values = np.array(self.values, dtype=complex, copy=True)
        if values.size != int(np.prod(shape, dtype=np.int64)):
            raise InputError(f"degree-{self.degree} cochain needs {np.prod(shape)} values")
        values = values.reshape(shape)
        if np.any(values == 0) or not np.all(np.isfinite(values)):
            raise InputError("cochain values must be finite and nonzero")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def normalized(self) -> bool:
        """True iff the value is 1 whenever some argument is the identity."""
        for axis in range(self.degree):
            if not np.allclose(np.take(self.values, 0, axis=axis), 1.0, rtol=0, atol=DEFAULT_TOL):
                return False
        return True

    def __mul__(self, other: "Cochain") -> "Cochain":
        _same_space(self, other)
        return Cochain(self.group, self.degree, self.values * other.values)

    def __truediv__(self, other: "Cochain") -> "Cochain":
        _same_space(self, other)
        return Cochain(self.group, self.degree, self.values / other.values)

    def flat(self) -> np.ndarray:
        """Values in lexicographic order of G^n."""
        return self.values.reshape(-1)


def _same_space(c1: Cochain, c2: Cochain):
    if c1.group != c2.group or c1.degree != c2.degree:
        raise InputError("cochains live on different groups or degrees")


def trivial_cochain(G: FiniteGroup, degree: int) -> Cochain:
    return Cochain(G, degree, np.ones((G.order,) * degree))


def _faces(G: FiniteGroup, t: tuple):
    """(argument tuple, exponent) pairs whose product is the coboundary at t."""
    n = len(t) - 1
    yield t[1:], 1
    for i in range(1, n + 1):
        merged = t[: i - 1] + (G.mul(t[i - 1], t[i]),) + t[i + 1 :]
        yield merged, (-1) ** i
    yield t[:n], (-1) ** (n + 1)


def _coboundary(c: Cochain) -> Cochain:
    G = c.group
    values = np.empty((G.order,) * (c.degree + 1), dtype=complex)
    for t in G.tuples(c.degree + 1):
        value = 1.0 + 0j
        for face, exponent in _faces(G, t):
            value = value * c.values[face] if exponent > 0 else value / c.values[face]
        values[t] = value
    return Cochain(G, c.degree + 1, values)


def coboundary(c: Cochain) -> Cochain:
    """
    d c, one degree up.

    Raises:
        InputError: If c already has degree 3
    """
    if c.degree >= MAX_DEGREE:
        raise InputError(f"coboundary of a degree-{c.degree} cochain is out of range")
    return _coboundary(c)


def coboundary_matrix(G: FiniteGroup, degree: int) -> np.ndarray:
    """
    Real matrix of the additive coboundary R^{G^degree} -> R^{G^(degree+1)}.

    Rows and columns follow the lexicographic order of the tuples, so
    log|d c| == coboundary_matrix(G, n) @ log|c|.flat().
    """
    if not 0 <= degree <= MAX_DEGREE:
        raise InputError(f"coboundary matrix of degree {degree} is out of range")
    order = G.order
    matrix = np.zeros((order ** (degree + 1), order**degree))
    for row, t in enumerate(G.tuples(degree + 1)):
        for face, exponent in _faces(G, t):
            column = int(np.ravel_multi_index(face, (order,) * degree)) if degree else 0
            matrix[row, column] += exponent
    return matrix


def verify_cocycle(omega: Cochain, tol: Optional[float] = None) -> CheckReport:
    """
    max |d omega - 1| over all tuples.

    Returns:
        CheckReport named "cocycle" naming the first violated tuple
    """
    tol = DEFAULT_TOL if tol is None else tol
    defect = np.abs(_coboundary(omega).values - 1.0)
    worst = float(np.max(defect, initial=0.0))
    first_bad = ""
    if worst > tol:
        index = tuple(int(i) for i in np.argwhere(defect > tol)[0])
        labels = ", ".join(omega.group.labels[g] for g in index)
        first_bad = f"cocycle condition fails at ({labels})"
    return make_check("cocycle", worst, tol, first_bad)


def polar_split_cocycle(omega: Cochain, tol: Optional[float] = None) -> PolarPair[Cochain]:
    """
    omega = u * r with |u| == 1 and r = |omega| > 0.

    Returns:
        PolarPair(unitary_part=u, positive_part=r) with the reconstruction
        residual and max r / min r as condition

    Raises:
        PreconditionError: If omega is not a cocycle
    """
    report = verify_cocycle(omega, tol)
    if not report["passed"]:
        raise PreconditionError(f"not a cocycle: {report['detail']}")
    r = np.abs(omega.values)
    u = Cochain(omega.group, omega.degree, omega.values / r)
    positive = Cochain(omega.group, omega.degree, r)
    residual = float(np.max(np.abs(u.values * r - omega.values), initial=0.0))
    return PolarPair(
        unitary_part=u,
        positive_part=positive,
        residual=residual,
        condition=float(r.max() / r.min()),
    )


@dataclass(frozen=True)
class CochainTrivialization:
    cochain: Cochain  # positive, one degree down, d cochain == input
    residual: float  # max |A x - log r| of the linear system
    certificates: List[CertificateReport] = field(default_factory=list)


def trivialize_positive_cocycle(
    r: Cochain, tol: Optional[float] = None
) -> CochainTrivialization:
    """
    Positive eta with d eta == r, from the minimum-norm least-squares solution
    of coboundary_matrix @ log(eta) == log(r).

    Raises:
        InputError: If r has degree 0
        DomainError: If r is not positive
        InconsistencyError: If the linear system has no exact solution (r is not a cocycle)
    """
    tol = DEFAULT_TOL if tol is None else tol
    if not 1 <= r.degree <= MAX_DEGREE:
        raise InputError(f"positive cocycles of degree {r.degree} cannot be trivialized")
    values = r.flat()
    if np.any(np.abs(values.imag) > tol * np.abs(values)) or np.any(values.real <= 0):
        raise DomainError("cochain is not positive")
    matrix = coboundary_matrix(r.group, r.degree - 1)
    rhs = np.log(values.real)
    x, *_ = linalg.lstsq(matrix, rhs)
    residual = float(np.max(np.abs(matrix @ x - rhs), initial=0.0))
    if residual > tol:
        raise InconsistencyError(
            f"positive cochain is not a coboundary (residual {residual:.3e}); is it a cocycle?"
        )
    eta = Cochain(r.group, r.degree - 1, np.exp(x))
    reproduction = float(np.max(np.abs(_coboundary(eta).values / r.values - 1.0)))
    logger.info("trivialized positive %d-cocycle, residual %.3e", r.degree, residual)
    return CochainTrivialization(
        cochain=eta,
        residual=residual,
        certificates=[make_certificate("coboundary", reproduction, tol)],
    )


@dataclass(frozen=True)
class CocycleUnitarization:
    cocycle: Cochain  # U(1)-valued, cohomologous to the input
    trivializer: Cochain  # positive eta with input / cocycle == d eta
    certificates: List[CertificateReport] = field(default_factory=list)


def unitarize_cocycle(omega: Cochain, tol: Optional[float] = None) -> CocycleUnitarization:
    """
    U(1)-valued cocycle cohomologous to omega over C^x.

    Raises:
        PreconditionError: If omega is not a cocycle
    """
    tol = DEFAULT_TOL if tol is None else tol
    u, r = polar_split_cocycle(omega, tol)
    trivial = trivialize_positive_cocycle(r, tol)
    quotient = omega / u
    certificate = float(
        np.max(np.abs(quotient.values / _coboundary(trivial.cochain).values - 1.0), initial=0.0)
    )
    certificates = list(trivial.certificates) + [
        make_certificate("cohomologous", certificate, tol),
        make_certificate("unit-modulus", float(np.max(np.abs(np.abs(u.values) - 1.0))), tol),
    ]
    return CocycleUnitarization(cocycle=u, trivializer=trivial.cochain, certificates=certificates)


def random_positive_coboundary(
    G: FiniteGroup, degree: int, rng: np.random.Generator, normalized: bool = True
) -> Cochain:
    """
    d eta for eta with values drawn from [0.5, 2].

    eta is normalized when degree > 1 unless `normalized` is False; on Z2 every
    normalized positive 3-coboundary is trivial, so the unnormalized variant is
    the one that actually rescales a cocycle there.
    """
    if not 1 <= degree <= MAX_DEGREE:
        raise InputError(f"cannot build a coboundary of degree {degree}")
    values = rng.uniform(0.5, 2.0, size=(G.order,) * (degree - 1))
    eta = Cochain(G, degree - 1, values)
    if degree > 1 and normalized:
        eta = normalize(eta)
    return _coboundary(eta)


def normalize(c: Cochain) -> Cochain:
    """c with the value 1 on every tuple that contains the identity."""
    values = np.array(c.values)
    for axis in range(c.degree):
        index = [slice(None)] * c.degree
        index[axis] = 0
        values[tuple(index)] = 1.0
    return Cochain(c.group, c.degree, values)
