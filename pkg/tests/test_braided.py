"""
Test Braided

Tests that the built-in braidings satisfy the hexagons, that braidings of
unitary categories are unitary, and that braided equivalences unitarize
with the braiding-commutation certificate.

Reference: src/unitary_fusion/braided/
"""

import numpy as np
import pytest

from unitary_fusion.braided import (
    RSymbolSet,
    braided_compatibility_residual,
    braiding_commutation_residual,
    factorize_braided_equivalence,
    gauge_rsymbols,
    reverse_braiding,
    unitarize_braided_equivalence,
    verify_braiding_unitary,
    verify_hexagon,
)
from unitary_fusion.cli_io.library import builtin_dataset
from unitary_fusion.errors import InputError, PreconditionError
from unitary_fusion.fusion_core import (
    apply_gauge,
    coboundary_twisted_gauge,
    identity_gauge,
    random_gauge,
)
from unitary_fusion.group_cohomology import symmetric_group
from unitary_fusion.unitarizer import gauged_equivalence

BRAIDED_EXAMPLES = ["fib-braided", "ising", "vec-z2-semion", "vec-z2-trivial"]


def _braided(name):
    ds = builtin_dataset(name)
    return ds.f_symbols, ds.r_symbols


class TestHexagon:
    """Test the hexagon check and braiding unitarity"""

    @pytest.mark.parametrize("name", BRAIDED_EXAMPLES)
    def test_builtin_hexagon(self, name):
        """Test that every built-in braiding satisfies both hexagon families"""
        F, R = _braided(name)
        assert verify_hexagon(F, R, 1e-10)["passed"]
        report = verify_braiding_unitary(F, R, 1e-10)
        assert report["name"] == "braiding-unitary"
        assert report["passed"]

    def test_wrong_semion_braiding_fails(self):
        """Test that R^{gg} = 1 is not a braiding of the twisted Vec_Z2"""
        F, R = _braided("vec-z2-semion")
        blocks = dict(R.blocks)
        blocks[(1, 1, 0)] = np.array([[1.0 + 0j]])
        report = verify_hexagon(F, R.with_blocks(blocks))
        assert not report["passed"]
        assert report["detail"]

    @pytest.mark.parametrize("name", ["fib-braided", "ising"])
    def test_hexagon_is_gauge_covariant(self, name, rng):
        """Test that gauging F and R together preserves the hexagons"""
        F, R = _braided(name)
        for _ in range(5):
            g = random_gauge(F.ring, rng)
            assert verify_hexagon(apply_gauge(F, g), gauge_rsymbols(R, g), 1e-8)["passed"]

    def test_reverse_braiding_is_involution(self, ising_r):
        """Test that reversing the braiding twice gives it back"""
        twice = reverse_braiding(reverse_braiding(ising_r))
        for key, block in ising_r.blocks.items():
            assert np.allclose(twice.blocks[key], block)

    def test_coboundary_gauge_leaves_r_invariant(self, fibonacci_r, rng):
        """Test that the positive coboundary part of a gauge does not move R on Fibonacci"""
        g = coboundary_twisted_gauge(fibonacci_r.ring, rng)
        gauged = gauge_rsymbols(fibonacci_r, g)
        for key, block in fibonacci_r.blocks.items():
            assert np.allclose(gauged.blocks[key], block)

    def test_non_unitary_category_refused(self, yang_lee, fibonacci_r):
        """Test that braiding unitarity is only asked of unitary F-symbols"""
        with pytest.raises(PreconditionError, match="unitary"):
            verify_braiding_unitary(yang_lee, fibonacci_r)

    def test_non_commutative_ring_refused(self):
        """Test that S3 fusion rules cannot carry a braiding"""
        ring = symmetric_group(3).ring()
        with pytest.raises(InputError, match="commutative"):
            RSymbolSet(ring=ring, blocks=identity_gauge(ring).blocks)


class TestBraidedUnitarization:
    """Test the braided factorization and unitarization"""

    @pytest.mark.parametrize("name", ["fib-braided", "ising", "vec-z2-semion"])
    def test_round_trip(self, name):
        """Test that the positive part commutes with the braiding and the output is braided"""
        F, R = _braided(name)
        for seed in range(50):
            f = coboundary_twisted_gauge(F.ring, np.random.default_rng(seed))
            E = gauged_equivalence(F, f)
            R_tgt = gauge_rsymbols(R, f)
            assert braided_compatibility_residual(E, R, R_tgt)["passed"]

            factorization = factorize_braided_equivalence(E, R, R_tgt)
            assert braiding_commutation_residual(factorization.positive_part, R_tgt) <= 1e-8

            result = unitarize_braided_equivalence(E, R, R_tgt)
            certificates = {c["name"]: c for c in result.certificates}
            assert certificates["braiding-commutation"]["residual"] <= 1e-8
            assert certificates["unitary-factor-braided"]["passed"]
            assert certificates["output-braided"]["residual"] <= 1e-8

    def test_incompatible_braidings_refused(self, ising, ising_r, rng):
        """Test that a tensorator not intertwining the braidings is refused"""
        E = gauged_equivalence(ising, random_gauge(ising.ring, rng, "unitary"))
        assert not braided_compatibility_residual(E, ising_r, ising_r)["passed"]
        with pytest.raises(PreconditionError, match="braided"):
            factorize_braided_equivalence(E, ising_r, ising_r)

    def test_ring_mismatch_refused(self, fibonacci, ising_r):
        """Test that R-symbols over another ring are refused"""
        E = gauged_equivalence(fibonacci, identity_gauge(fibonacci.ring))
        with pytest.raises(InputError):
            braided_compatibility_residual(E, ising_r, ising_r)
