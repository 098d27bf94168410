"""
Test Fusion Core

Tests that fusion rings, F-symbol sets, gauges and the pentagon check behave
on the built-in categories and reject malformed data.

Reference: src/unitary_fusion/fusion_core/
"""

import logging

import numpy as np
import pytest

from unitary_fusion.cli_io.library import PHI, builtin_dataset
from unitary_fusion.errors import InputError, NumericalError
from unitary_fusion.fusion_core import (
    FSymbolSet,
    FusionRing,
    Gauge,
    NatIso,
    apply_gauge,
    coboundary_gauge,
    compose_gauges,
    cyclic_ring,
    dimension_report,
    fibonacci_ring,
    fp_dimensions,
    gauge_distance,
    identity_gauge,
    invert_gauge,
    is_ring_isomorphism,
    ising_ring,
    multiplicity_ring,
    positive_character_space,
    quantum_dimensions,
    random_gauge,
    random_positive_nat_iso,
    relabel_fsymbols,
    relabel_ring,
    trivial_ring,
    verify_pentagon,
    verify_ring_axioms,
    verify_unitary,
)


def _block_distance(F1: FSymbolSet, F2: FSymbolSet) -> float:
    assert set(F1.blocks) == set(F2.blocks)
    return max(float(np.linalg.norm(F1.blocks[k] - F2.blocks[k])) for k in F1.blocks)


class TestFusionRing:
    """Test fusion ring construction and axioms"""

    @pytest.mark.parametrize(
        "ring",
        [trivial_ring(), fibonacci_ring(), ising_ring(), cyclic_ring(3), multiplicity_ring()],
        ids=["trivial", "fibonacci", "ising", "z3", "multiplicity"],
    )
    def test_builtin_rings_satisfy_axioms(self, ring):
        """Test that every built-in ring passes the exact axiom check"""
        report = verify_ring_axioms(ring)
        assert report["passed"], report["detail"]
        assert report["residual"] == 0.0
        assert report["tolerance"] == 0.0

    def test_missing_unit_channel_breaks_rigidity(self):
        """Test that dropping tau x tau -> 1 is reported as a rigidity failure"""
        N = np.array(fibonacci_ring().N)
        N[1, 1, 0] = 0
        report = verify_ring_axioms(FusionRing(N=N, dual=(0, 1)))
        assert not report["passed"]
        assert report["detail"].startswith("rigidity")

    def test_bad_shape_rejected(self):
        """Test that a non-cubic fusion tensor raises InputError"""
        with pytest.raises(InputError):
            FusionRing(N=np.ones((2, 2, 3), dtype=int), dual=(0, 1))

    def test_negative_multiplicity_rejected(self):
        """Test that negative multiplicities raise InputError"""
        N = np.array(fibonacci_ring().N)
        N[1, 1, 1] = -1
        with pytest.raises(InputError):
            FusionRing(N=N, dual=(0, 1))

    def test_frobenius_perron_dimensions(self):
        """Test the Perron eigenvector of the fusion matrices"""
        assert np.allclose(fp_dimensions(fibonacci_ring()), [1.0, PHI])
        assert np.allclose(fp_dimensions(ising_ring()), [1.0, np.sqrt(2.0), 1.0])
        assert np.allclose(fp_dimensions(cyclic_ring(4)), np.ones(4))

    @pytest.mark.parametrize("ring", [fibonacci_ring(), ising_ring(), cyclic_ring(3)])
    def test_positive_characters_are_trivial(self, ring):
        """Test that finite fusion rings only carry the trivial positive character"""
        dim, basis = positive_character_space(ring)
        assert dim == 0
        assert basis.shape == (ring.rank, 0)

    def test_relabel_is_isomorphism(self):
        """Test that relabel_ring produces a ring the map is an isomorphism onto"""
        ring = cyclic_ring(3)
        target = relabel_ring(ring, (0, 2, 1))
        assert is_ring_isomorphism(ring, target, (0, 2, 1))
        assert not is_ring_isomorphism(ring, target, (1, 0, 2))

    def test_multiplicity_block_dimension(self):
        """Test that x (x) x (x) x -> x has a five-dimensional block"""
        assert multiplicity_ring().regular_action.block_dim(1, 1, 1, 1) == 5


class TestFSymbols:
    """Test F-symbol sets and their checks"""

    @pytest.mark.parametrize("name", ["fibonacci", "ising", "vec-z2-semion", "vec-z3"])
    def test_builtin_pentagon(self, name):
        """Test that unitary built-ins satisfy the pentagon and are unitary"""
        F = builtin_dataset(name).f_symbols
        assert verify_pentagon(F, 1e-10)["passed"]
        assert verify_unitary(F, 1e-10)["passed"]
        assert dimension_report(F, 1e-10)["passed"]

    def test_tree_positions_live_on_the_action_table(self):
        """Test that tree positions are computed once per action table and not shared"""
        action = fibonacci_ring().regular_action
        first = action.tree_positions((1, 1, 1, 1))
        assert action.tree_positions((1, 1, 1, 1)) is first
        rows, cols = first
        assert sorted(rows.values()) == sorted(cols.values()) == [0, 1]

        other = fibonacci_ring().regular_action
        assert other.tree_positions((1, 1, 1, 1)) is not first
        assert other.tree_positions((1, 1, 1, 1)) == first

    def test_unitarity_on_non_pentagon_data_warns(self, fibonacci, caplog):
        """Test that checking unitarity of F-symbols failing the pentagon logs a warning"""
        broken = fibonacci.with_blocks({**fibonacci.blocks, (1, 1, 1, 1): np.eye(2)})
        with caplog.at_level(logging.WARNING, logger="unitary_fusion"):
            assert verify_unitary(broken)["passed"]
        assert "fail the pentagon" in caplog.text

        caplog.clear()
        with caplog.at_level(logging.WARNING, logger="unitary_fusion"):
            assert verify_unitary(fibonacci)["passed"]
        assert "fail the pentagon" not in caplog.text

    def test_yang_lee_is_not_unitary(self, yang_lee):
        """Test that Yang-Lee satisfies the pentagon but not unitarity"""
        assert verify_pentagon(yang_lee, 1e-10)["passed"]
        unitary = verify_unitary(yang_lee)
        assert not unitary["passed"]
        assert unitary["residual"] >= 0.1
        assert unitary["detail"]

    def test_yang_lee_negative_dimension(self, yang_lee):
        """Test that Yang-Lee has d_tau = -1/phi and fails the dimension check"""
        dims = quantum_dimensions(yang_lee)
        assert dims[1] == pytest.approx(-1.0 / PHI)
        assert not dimension_report(yang_lee)["passed"]

    def test_fibonacci_dimension(self, fibonacci):
        """Test that Fibonacci has d_tau = phi"""
        assert quantum_dimensions(fibonacci)[1] == pytest.approx(PHI)

    def test_missing_block_raises(self, fibonacci):
        """Test that the pentagon refuses incomplete F-symbols"""
        blocks = dict(fibonacci.blocks)
        del blocks[(1, 1, 1, 1)]
        partial = fibonacci.with_blocks(blocks)
        assert partial.missing_blocks() == [(1, 1, 1, 1)]
        with pytest.raises(InputError):
            verify_pentagon(partial)

    def test_wrong_block_shape_raises(self, fibonacci):
        """Test that a block of the wrong size raises InputError"""
        blocks = dict(fibonacci.blocks)
        blocks[(1, 1, 1, 1)] = np.eye(3)
        with pytest.raises(InputError):
            fibonacci.with_blocks(blocks)

    def test_broken_fsymbols_fail_pentagon(self, fibonacci):
        """Test that flipping the sign of one entry breaks the pentagon"""
        blocks = dict(fibonacci.blocks)
        broken = np.array(blocks[(1, 1, 1, 1)])
        broken[0, 0] *= -1
        blocks[(1, 1, 1, 1)] = broken
        report = verify_pentagon(fibonacci.with_blocks(blocks))
        assert not report["passed"]
        assert report["detail"]

    def test_nonpositive_tolerance_rejected(self, fibonacci):
        """Test that FSymbolSet rejects a zero tolerance"""
        with pytest.raises(InputError):
            fibonacci.with_tol(0.0)

    def test_relabel_round_trip(self):
        """Test that pulling F back along a permutation and forth again is the identity"""
        F = builtin_dataset("vec-z3").f_symbols
        pi = (0, 2, 1)
        target_ring = relabel_ring(F.ring, pi)
        # pulling back from the relabeled ring along pi^{-1} == pi
        moved = relabel_fsymbols(F, pi, target_ring)
        back = relabel_fsymbols(moved, pi, F.ring)
        assert _block_distance(back, F) < 1e-14
        assert verify_pentagon(moved, 1e-10)["passed"]

    def test_relabel_rejects_non_isomorphism(self, fibonacci):
        """Test that a map moving the unit is refused"""
        with pytest.raises(InputError):
            relabel_fsymbols(fibonacci, (1, 0), fibonacci.ring)


class TestGauges:
    """Test the gauge action on F-symbols"""

    @pytest.mark.parametrize("name", ["fibonacci", "ising", "vec-z2-semion", "yang-lee"])
    def test_pentagon_is_gauge_invariant(self, name, rng):
        """Test that gauging by a random invertible gauge preserves the pentagon"""
        F = builtin_dataset(name).f_symbols
        for _ in range(10):
            gauged = apply_gauge(F, random_gauge(F.ring, rng))
            assert verify_pentagon(gauged, 1e-9)["passed"]

    @pytest.mark.parametrize("name", ["fibonacci", "ising", "vec-z3"])
    def test_coboundary_leaves_fsymbols_invariant(self, name, rng):
        """Test that (mu_a mu_b / mu_c) gauges do not move F"""
        F = builtin_dataset(name).f_symbols
        for _ in range(10):
            mu = random_positive_nat_iso(F.ring, rng)
            assert _block_distance(apply_gauge(F, coboundary_gauge(mu)), F) < 1e-12

    def test_compose_matches_sequential_application(self, ising, rng):
        """Test that apply(apply(F, g2), g1) == apply(F, g1 g2)"""
        g1, g2 = random_gauge(ising.ring, rng), random_gauge(ising.ring, rng)
        sequential = apply_gauge(apply_gauge(ising, g2), g1)
        composed = apply_gauge(ising, compose_gauges(g1, g2))
        assert _block_distance(sequential, composed) < 1e-10

    def test_inverse_undoes_gauge(self, fibonacci, rng):
        """Test that gauging by g then g^{-1} returns F"""
        g = random_gauge(fibonacci.ring, rng)
        back = apply_gauge(apply_gauge(fibonacci, g), invert_gauge(g))
        assert _block_distance(back, fibonacci) < 1e-10
        assert gauge_distance(compose_gauges(g, invert_gauge(g)), identity_gauge(g.ring)) < 1e-12

    def test_singular_block_raises(self):
        """Test that inverting a gauge with a zero block names the block"""
        ring = fibonacci_ring()
        blocks = dict(identity_gauge(ring).blocks)
        blocks[(1, 1, 1)] = np.zeros((1, 1))
        with pytest.raises(NumericalError, match=r"\(1, 1, 1\)"):
            invert_gauge(Gauge(ring=ring, blocks=blocks))

    def test_missing_gauge_block_raises(self):
        """Test that a gauge must cover every vertex"""
        ring = fibonacci_ring()
        blocks = dict(identity_gauge(ring).blocks)
        del blocks[(1, 1, 0)]
        with pytest.raises(InputError):
            Gauge(ring=ring, blocks=blocks)

    def test_gauge_ring_mismatch_raises(self, fibonacci):
        """Test that a gauge over another ring is refused"""
        with pytest.raises(InputError):
            apply_gauge(fibonacci, identity_gauge(ising_ring()))

    def test_zero_nat_iso_component_rejected(self):
        """Test that natural isomorphisms must have nonzero components"""
        with pytest.raises(InputError):
            NatIso(ring=fibonacci_ring(), components=np.array([1.0, 0.0]))

    def test_multiplicity_gauge_blocks(self, rng):
        """Test that the two-dimensional vertex of x (x) x gets a 2x2 gauge block"""
        ring = multiplicity_ring()
        g = random_gauge(ring, rng)
        assert g.block(1, 1, 1).shape == (2, 2)
        assert np.allclose(g.block(0, 1, 1), np.eye(1))
        identity = compose_gauges(g, invert_gauge(g))
        assert gauge_distance(identity, identity_gauge(ring)) < 1e-12
