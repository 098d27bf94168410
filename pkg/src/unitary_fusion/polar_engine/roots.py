"""
Positive roots of positive matrices via Hermitian eigendecomposition.
"""

import logging

import numpy as np
from scipy import linalg

from ..config import DEFAULT_TOL
from ..errors import DomainError, InputError

logger = logging.getLogger(__name__)


def _positive_spectrum(P: np.ndarray, tol: float):
    P = np.asarray(P, dtype=complex)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise InputError(f"expected a square matrix, got shape {P.shape}")
    scale = max(float(np.linalg.norm(P)), np.finfo(float).tiny)
    asymmetry = float(np.linalg.norm(P - P.conj().T)) / scale
    if asymmetry > tol:
        raise DomainError(f"matrix is not Hermitian (relative asymmetry {asymmetry:.3e})")
    # Hermitian part only; eigh is deterministic for fixed input bytes
    values, vectors = linalg.eigh((P + P.conj().T) / 2)
    smallest = float(values[0])
    if smallest <= tol * scale:
        raise DomainError(f"matrix is not positive definite (eigenvalue {smallest:.3e})")
    return values, vectors


def _hermitian(matrix: np.ndarray) -> np.ndarray:
    return (matrix + matrix.conj().T) / 2


def hermitian_sqrt(P: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """
    Unique positive square root of a positive definite matrix.

    Args:
        P: Hermitian matrix with eigenvalues > tol * ||P||
        tol: Hermiticity / positivity threshold

    Returns:
        Hermitian positive S with S @ S == P

    Raises:
        DomainError: If P is not Hermitian or has a non-positive eigenvalue
    """
    values, vectors = _positive_spectrum(P, tol)
    return _hermitian((vectors * np.sqrt(values)) @ vectors.conj().T)


def positive_nth_root(P: np.ndarray, n: int, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Unique positive n-th root; eigenvalues are the n-th roots of those of P."""
    if n < 1:
        raise InputError(f"root order must be a positive integer, got {n}")
    values, vectors = _positive_spectrum(P, tol)
    return _hermitian((vectors * values ** (1.0 / n)) @ vectors.conj().T)


def is_positive(P: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    try:
        _positive_spectrum(P, tol)
    except DomainError:
        return False
    return True


def absolute_value(x: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """|x| = sqrt(x x^dagger), the positive part of the left polar decomposition."""
    x = np.asarray(x, dtype=complex)
    return hermitian_sqrt(x @ x.conj().T, tol)


def positive_log(P: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Hermitian logarithm of a positive definite matrix; expm(positive_log(P)) == P."""
    values, vectors = _positive_spectrum(P, tol)
    return _hermitian((vectors * np.log(values)) @ vectors.conj().T)
