"""
Test Polar Engine

Tests that positive square roots, polar decompositions and the transport
identity hold on random matrices, and that invalid inputs are rejected.

Reference: src/unitary_fusion/polar_engine/
"""

import numpy as np
import pytest

from unitary_fusion.errors import DomainError, InputError, NumericalError, PreconditionError
from unitary_fusion.fusion_core import (
    compose_gauges,
    fibonacci_ring,
    gauge_distance,
    gauge_unitarity_residual,
    ising_ring,
    random_gauge,
    random_invertible,
    random_positive,
    random_unitary,
)
from unitary_fusion.polar_engine import (
    absolute_value,
    hermitian_sqrt,
    is_positive,
    is_positive_gauge,
    polar_decompose_gauge,
    polar_decompose_matrix,
    positive_nth_root,
    transport_check,
)

TRIALS = 1000


def _relative(a: np.ndarray, b: np.ndarray) -> float:
    return float(np.linalg.norm(a - b) / np.linalg.norm(b))


class TestRoots:
    """Test positive roots of positive matrices"""

    def test_square_root_squares_back(self, rng):
        """Test that sqrt(P)^2 == P and sqrt(P) is positive on random positives"""
        for trial in range(TRIALS):
            P = random_positive(1 + trial % 4, rng)
            S = hermitian_sqrt(P)
            assert _relative(S @ S, P) <= 1e-10
            assert np.allclose(S, S.conj().T, atol=1e-14)
            assert is_positive(S)

    def test_nth_root(self, rng):
        """Test that the positive n-th root raised to n gives P back"""
        for n in (1, 2, 3, 5):
            P = random_positive(3, rng)
            R = positive_nth_root(P, n)
            assert _relative(np.linalg.matrix_power(R, n), P) <= 1e-10

    def test_nth_root_rejects_zero_order(self):
        """Test that the root order must be positive"""
        with pytest.raises(InputError):
            positive_nth_root(np.eye(2), 0)

    def test_non_hermitian_raises_domain_error(self):
        """Test that a non-Hermitian matrix has no positive square root here"""
        with pytest.raises(DomainError, match="Hermitian"):
            hermitian_sqrt(np.array([[1.0, 1.0], [0.0, 1.0]]))

    def test_indefinite_raises_domain_error(self):
        """Test that a Hermitian matrix with a negative eigenvalue is refused"""
        with pytest.raises(DomainError, match="positive"):
            hermitian_sqrt(np.diag([1.0, -1.0]))
        assert not is_positive(np.diag([1.0, -1.0]))

    def test_non_square_raises_input_error(self):
        """Test that a rectangular matrix raises InputError"""
        with pytest.raises(InputError):
            hermitian_sqrt(np.ones((2, 3)))

    def test_absolute_value_of_unitary_is_identity(self, rng):
        """Test that |u| = 1 for unitary u"""
        u = random_unitary(4, rng)
        assert np.allclose(absolute_value(u), np.eye(4), atol=1e-12)


class TestPolarDecomposition:
    """Test f = p u on matrices and gauges"""

    def test_random_matrices(self, rng):
        """Test reconstruction, unitarity and positivity on random invertibles"""
        for trial in range(TRIALS):
            f = random_invertible(1 + trial % 4, rng)
            pair = polar_decompose_matrix(f)
            u, p = pair
            assert pair.residual <= 1e-10
            assert _relative(p @ u, f) <= 1e-10
            assert np.allclose(u.conj().T @ u, np.eye(f.shape[0]), atol=1e-10)
            assert is_positive(p)

    def test_unitary_input_has_identity_positive_part(self, rng):
        """Test that a unitary matrix is its own unitary part"""
        u = random_unitary(3, rng)
        pair = polar_decompose_matrix(u)
        assert np.allclose(pair.positive_part, np.eye(3), atol=1e-12)
        assert np.allclose(pair.unitary_part, u, atol=1e-12)

    def test_singular_raises_numerical_error(self):
        """Test that a rank-deficient matrix is refused"""
        with pytest.raises(NumericalError):
            polar_decompose_matrix(np.array([[1.0, 2.0], [2.0, 4.0]]))

    def test_non_square_raises_input_error(self):
        """Test that a rectangular matrix raises InputError"""
        with pytest.raises(InputError):
            polar_decompose_matrix(np.ones((2, 3)))

    @pytest.mark.parametrize("ring", [fibonacci_ring(), ising_ring()], ids=["fib", "ising"])
    def test_gauge_decomposition(self, ring, rng):
        """Test that a gauge splits blockwise into positive and unitary gauges"""
        g = random_gauge(ring, rng)
        pair = polar_decompose_gauge(g)
        u, p = pair
        assert pair.residual <= 1e-10
        assert gauge_distance(compose_gauges(p, u), g) <= 1e-10
        assert gauge_unitarity_residual(u) <= 1e-10
        assert is_positive_gauge(p)
        assert not is_positive_gauge(random_gauge(ring, rng, "unitary"))


class TestTransport:
    """Test that x v == w y implies |x| w == w |y|"""

    def test_random_instances(self, rng):
        """Test the transport identity on random invertible x and unitary v, w"""
        for trial in range(TRIALS):
            n = 1 + trial % 4
            x = random_invertible(n, rng)
            v, w = random_unitary(n, rng), random_unitary(n, rng)
            y = w.conj().T @ x @ v
            report = transport_check(x, y, v, w)
            assert report["name"] == "transport"
            assert report["residual"] <= 1e-10

    def test_unrelated_matrices_raise(self, rng):
        """Test that the precondition x v == w y is enforced"""
        x, y = random_invertible(2, rng), random_invertible(2, rng)
        v, w = random_unitary(2, rng), random_unitary(2, rng)
        with pytest.raises(PreconditionError):
            transport_check(x, y, v, w)

    @pytest.mark.parametrize("scaled", ["v", "w"])
    def test_non_unitary_factor_raises(self, rng, scaled):
        """Test that v and w must be unitary even when x v == w y holds"""
        x = random_invertible(3, rng)
        v, w = random_unitary(3, rng), random_unitary(3, rng)
        if scaled == "v":
            v = 2.0 * v
        else:
            w = 2.0 * w
        y = np.linalg.solve(w, x @ v)
        with pytest.raises(PreconditionError, match=f"{scaled} is not unitary"):
            transport_check(x, y, v, w)

    def test_shape_mismatch_raises(self):
        """Test that matrices of different sizes are refused"""
        with pytest.raises(InputError):
            transport_check(np.eye(2), np.eye(3), np.eye(2), np.eye(2))
