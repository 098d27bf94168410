"""
Test Unitarizer

Tests that positive monoidal structures trivialize, that monoidal
equivalences between unitary presentations factor and unitarize with
passing certificates, that monoidal natural isomorphisms unitarize, and that
the gauge search behaves on unitarizable and non-unitarizable input.

Reference: src/unitary_fusion/unitarizer/
"""

import numpy as np
import pytest

from unitary_fusion.cli_io.library import builtin_dataset
from unitary_fusion.errors import InconsistencyError, InputError, PreconditionError
from unitary_fusion.fusion_core import (
    FSymbolSet,
    Gauge,
    NatIso,
    apply_gauge,
    coboundary_gauge,
    coboundary_twisted_gauge,
    compose_gauges,
    fibonacci_ring,
    gauge_unitarity_residual,
    identity_gauge,
    multiplicity_ring,
    push_gauge,
    random_gauge,
    random_positive_nat_iso,
    random_unitary,
    relabel_ring,
    verify_unitary,
)
from unitary_fusion.group_cohomology import Cochain, cyclic_group, gauge_from_cochain, normalize
from unitary_fusion.unitarizer import (
    EquivalenceData,
    compose_equivalences,
    factorize_equivalence,
    gauged_equivalence,
    identity_equivalence,
    monoidality_residual,
    relabeled_target,
    search_unitary_gauge,
    trivialize_positive_monoidal,
    unitarize_equivalence,
    unitarize_nat_iso,
    verify_equivalence,
)
from unitary_fusion.unitarizer.trivialize import coboundary_system, solve_log_system

ROUND_TRIP_SEEDS = range(50)
UNITARY_EXAMPLES = ["fibonacci", "ising", "vec-z2-semion", "vec-z3"]


def _scalar_gauge(ring, scalars):
    return Gauge(
        ring=ring,
        blocks={v: scalars.get(v, 1.0) * np.eye(ring.N[v]) for v in ring.vertices()},
    )


class TestTrivialization:
    """Test recovery of positive scalars from coboundary gauges"""

    @pytest.mark.parametrize("name", ["fibonacci", "ising", "vec-z3"])
    def test_recovers_scalars(self, name, rng):
        """Test that coboundary(mu) trivializes back to mu over 100 draws"""
        F = builtin_dataset(name).f_symbols
        for _ in range(100):
            mu = random_positive_nat_iso(F.ring, rng)
            result = trivialize_positive_monoidal(coboundary_gauge(mu), F=F)
            assert np.allclose(result.nat_iso.components, mu.components, rtol=1e-10)
            assert result.residual <= 1e-10
            assert {c["name"] for c in result.certificates} == {"positive-coherence", "coboundary"}
            assert all(c["passed"] for c in result.certificates)

    def test_multiplicity_ring(self, rng):
        """Test trivialization on a ring with a two-dimensional vertex"""
        ring = multiplicity_ring()
        for _ in range(100):
            mu = random_positive_nat_iso(ring, rng)
            result = trivialize_positive_monoidal(coboundary_gauge(mu))
            assert np.allclose(result.nat_iso.components, mu.components, rtol=1e-10)

    def test_non_scalar_block_raises(self):
        """Test that a positive block that is not scalar cannot be a coboundary"""
        ring = multiplicity_ring()
        blocks = dict(identity_gauge(ring).blocks)
        blocks[(1, 1, 1)] = np.diag([2.0, 3.0])
        with pytest.raises(InconsistencyError, match=r"\(1, 1, 1\)"):
            trivialize_positive_monoidal(Gauge(ring=ring, blocks=blocks))

    def test_inconsistent_scalars_raise(self):
        """Test that scalars violating x_a + x_b = x_c are rejected"""
        ring = fibonacci_ring()
        p = _scalar_gauge(ring, {(1, 1, 0): 2.0, (1, 1, 1): 3.0})
        with pytest.raises(InconsistencyError, match="inconsistent"):
            trivialize_positive_monoidal(p)

    def test_non_coherent_positive_part_raises(self, fibonacci):
        """Test that a positive gauge moving F is not a monoidal structure on the identity"""
        p = _scalar_gauge(fibonacci.ring, {(1, 1, 0): 2.0, (1, 1, 1): 3.0})
        with pytest.raises(PreconditionError):
            trivialize_positive_monoidal(p, F=fibonacci)

    def test_non_positive_gauge_raises(self, fibonacci):
        """Test that a sign on a vertex is refused as a non-positive structure"""
        p = _scalar_gauge(fibonacci.ring, {(1, 1, 1): -1.0})
        with pytest.raises(PreconditionError, match="not positive"):
            trivialize_positive_monoidal(p)

    @pytest.mark.parametrize("name", ["fibonacci", "ising", "vec-z3"])
    def test_equation_order_does_not_matter(self, name, rng):
        """Test that shuffling the coboundary equations leaves the solution unchanged"""
        ring = builtin_dataset(name).ring
        for _ in range(20):
            mu = random_positive_nat_iso(ring, rng)
            matrix, rhs, _ = coboundary_system(coboundary_gauge(mu), 1e-9)
            x, _ = solve_log_system(matrix, rhs)
            order = rng.permutation(len(rhs))
            shuffled, _ = solve_log_system(matrix[order], rhs[order])
            assert np.allclose(shuffled, x, rtol=0, atol=1e-12)
            assert np.allclose(x, np.log(mu.components[1:]), rtol=0, atol=1e-12)


class TestUnitarizeEquivalence:
    """Test the factorization and unitarization pipeline"""

    @pytest.mark.parametrize("name", UNITARY_EXAMPLES)
    def test_round_trip(self, name):
        """Test that a coboundary-twisted gauge unitarizes back to its scalars"""
        F = builtin_dataset(name).f_symbols
        for seed in ROUND_TRIP_SEEDS:
            f = coboundary_twisted_gauge(F.ring, np.random.default_rng(seed))
            mu = random_positive_nat_iso(F.ring, np.random.default_rng(seed))
            E = gauged_equivalence(F, f)
            assert verify_equivalence(E)["passed"]

            result = unitarize_equivalence(E)

            assert all(c["residual"] <= 1e-8 for c in result.certificates), result.certificates
            assert gauge_unitarity_residual(result.equivalence.tensorator) <= 1e-8
            assert verify_equivalence(result.equivalence)["passed"]
            assert np.allclose(result.positive_scalars.components, mu.components, rtol=1e-8)
            assert np.allclose(result.nat_iso.components, 1.0 / mu.components, rtol=1e-8)
            assert monoidality_residual(result.nat_iso, E, result.equivalence, 1e-8)["passed"]

    def test_certificate_names(self, fibonacci, rng):
        """Test that every pipeline stage leaves a named certificate"""
        E = gauged_equivalence(fibonacci, coboundary_twisted_gauge(fibonacci.ring, rng))
        names = [c["name"] for c in unitarize_equivalence(E).certificates]
        assert names == [
            "recomposition",
            "unitary-factor-coherence",
            "positive-part-coherence",
            "square-root",
            "transport",
            "positive-coherence",
            "coboundary",
            "output-unitarity",
            "output-coherence",
            "monoidal-nat-iso",
        ]

    def test_factorization_of_unitary_tensorator_is_trivial(self, ising, rng):
        """Test that a unitary tensorator has an identity positive part"""
        E = gauged_equivalence(ising, random_gauge(ising.ring, rng, "unitary"))
        factorization = factorize_equivalence(E)
        for block in factorization.positive_part.blocks.values():
            assert np.allclose(block, np.eye(block.shape[0]), atol=1e-10)

    def test_identity_equivalence(self, fibonacci):
        """Test that the identity equivalence unitarizes to itself with mu = 1"""
        result = unitarize_equivalence(identity_equivalence(fibonacci))
        assert np.allclose(result.positive_scalars.components, 1.0)
        assert gauge_unitarity_residual(result.equivalence.tensorator) <= 1e-12

    def test_permuting_simple_map(self):
        """Test an equivalence of Vec_Z3 that sends g to g^2"""
        F = builtin_dataset("vec-z3").f_symbols
        pi = (0, 2, 1)
        target_ring = relabel_ring(F.ring, pi)
        for seed in range(20):
            g = coboundary_twisted_gauge(F.ring, np.random.default_rng(seed))
            target = relabeled_target(apply_gauge(F, g), pi, target_ring)
            E = EquivalenceData(F, target, pi, push_gauge(g, pi, target_ring))
            assert verify_equivalence(E)["passed"]
            result = unitarize_equivalence(E)
            assert gauge_unitarity_residual(result.equivalence.tensorator) <= 1e-8
            assert result.equivalence.simple_map == pi

    def test_composition_is_coherent(self, ising, rng):
        """Test that composing two coherent equivalences stays coherent"""
        inner = gauged_equivalence(ising, random_gauge(ising.ring, rng))
        outer = gauged_equivalence(inner.target, random_gauge(ising.ring, rng))
        composite = compose_equivalences(outer, inner)
        assert verify_equivalence(composite, 1e-8)["passed"]
        expected = compose_gauges(outer.tensorator, inner.tensorator)
        for key, block in composite.tensorator.blocks.items():
            assert np.allclose(block, expected.blocks[key])

    def test_composition_ring_mismatch_raises(self, fibonacci, ising):
        """Test that equivalences over different rings do not compose"""
        with pytest.raises(InputError):
            compose_equivalences(identity_equivalence(ising), identity_equivalence(fibonacci))

    def test_non_unitary_presentation_raises(self, yang_lee):
        """Test that Yang-Lee cannot enter the pipeline"""
        with pytest.raises(PreconditionError, match="unitary"):
            unitarize_equivalence(identity_equivalence(yang_lee))

    def test_non_coherent_equivalence_raises(self, fibonacci):
        """Test that a tensorator that does not gauge source to target is refused"""
        phase = _scalar_gauge(fibonacci.ring, {(1, 1, 1): 1j})
        E = EquivalenceData(fibonacci, fibonacci, (0, 1), phase)
        assert not verify_equivalence(E)["passed"]
        with pytest.raises(PreconditionError, match="coherent"):
            unitarize_equivalence(E)

    def test_non_isomorphic_simple_map_raises(self, fibonacci):
        """Test that a simple map moving the unit is refused"""
        E = EquivalenceData(fibonacci, fibonacci, (1, 0), identity_gauge(fibonacci.ring))
        with pytest.raises(InputError):
            verify_equivalence(E)


class TestNatIso:
    """Test unitarization of monoidal natural isomorphisms"""

    @pytest.mark.parametrize(
        "name, components",
        [
            ("vec-z2-semion", [1.0, -1.0]),
            ("vec-z3", [1.0, np.exp(2j * np.pi / 3), np.exp(4j * np.pi / 3)]),
        ],
    )
    def test_grading_characters(self, name, components):
        """Test that unit-modulus characters are already unitary"""
        F = builtin_dataset(name).f_symbols
        E = identity_equivalence(F)
        eta = NatIso(ring=F.ring, components=np.array(components))
        result = unitarize_nat_iso(eta, E, E)
        assert result.certificate <= 1e-12
        assert np.allclose(result.nat_iso.components, components)

    def test_scaled_character_is_not_monoidal(self):
        """Test that a positive rescaling of a character is refused"""
        F = builtin_dataset("vec-z2-semion").f_symbols
        E = identity_equivalence(F)
        eta = NatIso(ring=F.ring, components=np.array([1.0, -2.0]))
        assert not monoidality_residual(eta, E, E)["passed"]
        with pytest.raises(PreconditionError, match="monoidal"):
            unitarize_nat_iso(eta, E, E)

    @pytest.mark.parametrize(
        "name, components",
        [
            ("fibonacci", [1.0, 2.0]),
            ("fibonacci", [1.0, 0.5]),
            ("ising", [1.0, 1.5, 0.8]),
            ("ising", [1.0, 1.0, 2.0]),
        ],
    )
    def test_positive_rescaling_without_grading_is_refused(self, name, components):
        """Test that rings with only the trivial character refuse any positive rescaling"""
        F = builtin_dataset(name).f_symbols
        E = identity_equivalence(F)
        eta = NatIso(ring=F.ring, components=np.array(components))
        assert not monoidality_residual(eta, E, E)["passed"]
        with pytest.raises(PreconditionError, match="monoidal"):
            unitarize_nat_iso(eta, E, E)

    @pytest.mark.parametrize("name", ["fibonacci", "ising"])
    def test_identity_is_the_only_candidate(self, name):
        """Test that the identity natural isomorphism passes with a zero certificate"""
        F = builtin_dataset(name).f_symbols
        E = identity_equivalence(F)
        eta = NatIso(ring=F.ring, components=np.ones(F.ring.rank))
        result = unitarize_nat_iso(eta, E, E)
        assert result.certificate == 0.0
        assert np.allclose(result.nat_iso.components, 1.0)

    def test_non_unitary_tensorator_raises(self, fibonacci, rng):
        """Test that both equivalences must be unitary"""
        E = gauged_equivalence(fibonacci, coboundary_twisted_gauge(fibonacci.ring, rng))
        eta = NatIso(ring=fibonacci.ring, components=np.ones(2))
        with pytest.raises(PreconditionError, match="unitary"):
            unitarize_nat_iso(eta, E, E)


class TestGaugeSearch:
    """Test the heuristic unitarizing gauge search"""

    def test_yang_lee_does_not_converge(self, yang_lee):
        """Test that Yang-Lee reports failure instead of raising"""
        search = search_unitary_gauge(yang_lee, max_iters=500)
        assert not search.converged
        assert search.residual >= 0.05
        assert search.iterations <= 500

    def test_unitary_input_converges_immediately(self, ising):
        """Test that unitary F-symbols need no steps"""
        search = search_unitary_gauge(ising)
        assert search.converged
        assert search.iterations == 0

    def test_positive_scalar_gauge_is_undone(self, fibonacci):
        """Test that a positive scalar gauge on Fibonacci is removed"""
        scaled = apply_gauge(
            fibonacci, _scalar_gauge(fibonacci.ring, {(1, 1, 0): 2.0, (1, 1, 1): 0.7})
        )
        assert not verify_unitary(scaled)["passed"]
        search = search_unitary_gauge(scaled)
        assert search.converged
        assert verify_unitary(apply_gauge(scaled, search.gauge))["passed"]

    def test_cochain_gauged_vec_z3_converges(self, rng):
        """Test that Vec_Z3 gauged by a positive 2-cochain is brought back to unitary"""
        F = builtin_dataset("vec-z3").f_symbols
        G = cyclic_group(3)
        cochain = normalize(Cochain(G, 2, rng.uniform(0.5, 2.0, size=(3, 3))))
        scaled = apply_gauge(F, gauge_from_cochain(cochain))
        assert not verify_unitary(scaled)["passed"]
        search = search_unitary_gauge(scaled)
        assert search.converged
        assert search.residual <= F.tol

    def test_multiplicity_gauge_needs_matrix_updates(self, rng):
        """Test that a non-scalar positive gauge on a multiplicity-2 vertex space is undone"""
        ring = multiplicity_ring()
        action = ring.regular_action
        blocks = {}
        for key in action.admissible():
            dim = action.block_dim(*key)
            blocks[key] = np.eye(dim) if 0 in key[:3] else random_unitary(dim, rng)
        F = FSymbolSet(ring=ring, blocks=blocks)
        scaled = apply_gauge(F, random_gauge(ring, rng, "positive"))
        assert not verify_unitary(scaled)["passed"]

        search = search_unitary_gauge(scaled)
        assert search.converged
        assert verify_unitary(apply_gauge(scaled, search.gauge))["passed"]
        # a scalar times a unitary cannot undo a non-scalar positive distortion
        block = search.gauge.block(1, 1, 1)
        gram = block.conj().T @ block
        assert np.linalg.norm(gram - gram[0, 0] * np.eye(2)) > 1e-3
