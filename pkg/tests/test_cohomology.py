"""
Test Group Cohomology

Tests group axioms, the coboundary operator, the polar split of cocycles,
trivialization of positive cocycles and the bridge between 3-cocycles and
Vec_G^omega.

Reference: src/unitary_fusion/group_cohomology/
"""

import numpy as np
import pytest

from unitary_fusion.cli_io.library import builtin_dataset, semion_cocycle, semion_fsymbols
from unitary_fusion.errors import DomainError, InconsistencyError, InputError, PreconditionError
from unitary_fusion.fusion_core import (
    apply_gauge,
    gauge_unitarity_residual,
    verify_pentagon,
    verify_ring_axioms,
)
from unitary_fusion.group_cohomology import (
    Cochain,
    FiniteGroup,
    build_vecG_category,
    coboundary,
    coboundary_matrix,
    cocycle_from_fsymbols,
    cyclic_group,
    direct_product,
    gauge_from_cochain,
    normalize,
    polar_split_cocycle,
    random_positive_coboundary,
    symmetric_group,
    trivial_cochain,
    trivialize_positive_cocycle,
    unitarize_cocycle,
    verify_cocycle,
    verify_group_axioms,
)
from unitary_fusion.unitarizer import gauged_equivalence, unitarize_equivalence

GROUPS = {
    "z2": cyclic_group(2),
    "z3": cyclic_group(3),
    "z2xz2": direct_product(cyclic_group(2), cyclic_group(2)),
    "s3": symmetric_group(3),
}


def _z3_cocycle(p: int = 1) -> Cochain:
    """exp(2 pi i p a (b + c - [b + c]) / 9), a generator of H^3(Z3, U(1)) for p = 1."""
    values = np.empty((3, 3, 3), dtype=complex)
    for a in range(3):
        for b in range(3):
            for c in range(3):
                carry = b + c - (b + c) % 3
                values[a, b, c] = np.exp(2j * np.pi * p * a * carry / 9)
    return Cochain(cyclic_group(3), 3, values)


def _random_cochain(G: FiniteGroup, degree: int, rng) -> Cochain:
    shape = (G.order,) * degree
    return Cochain(G, degree, rng.uniform(0.5, 2.0, shape) * np.exp(2j * np.pi * rng.random(shape)))


class TestGroups:
    """Test finite groups from Cayley tables"""

    @pytest.mark.parametrize("name", sorted(GROUPS))
    def test_builtin_groups(self, name):
        """Test that the built-in groups satisfy the axioms"""
        report = verify_group_axioms(GROUPS[name])
        assert report["passed"], report["detail"]

    def test_orders_and_commutativity(self):
        """Test group orders and that S3 is the non-abelian one"""
        assert [GROUPS[n].order for n in ("z2", "z3", "z2xz2", "s3")] == [2, 3, 4, 6]
        s3 = GROUPS["s3"].cayley
        assert not np.array_equal(s3, s3.T)
        assert verify_group_axioms(GROUPS["s3"])["passed"]

    def test_non_latin_table_fails(self):
        """Test that a table with a repeated row entry is not a group"""
        report = verify_group_axioms(FiniteGroup(cayley=[[0, 1], [1, 1]]))
        assert not report["passed"]
        assert "permutation" in report["detail"]

    def test_non_square_table_raises(self):
        """Test that a rectangular Cayley table is refused"""
        with pytest.raises(InputError):
            FiniteGroup(cayley=np.zeros((2, 3), dtype=int))

    def test_group_ring(self):
        """Test that the fusion rules of Vec_G pass the ring axioms"""
        for G in GROUPS.values():
            assert verify_ring_axioms(G.ring())["passed"]


class TestCoboundary:
    """Test cochains and the coboundary operator"""

    @pytest.mark.parametrize("name", sorted(GROUPS))
    def test_coboundary_squares_to_one(self, name, rng):
        """Test that d d c == 1 for random cochains of degree 1 and 2"""
        G = GROUPS[name]
        for degree in (1, 2):
            c = _random_cochain(G, degree, rng)
            report = verify_cocycle(coboundary(c), 1e-12)
            assert report["passed"], report["detail"]

    @pytest.mark.parametrize("name", ["z3", "s3"])
    def test_matrix_matches_operator(self, name, rng):
        """Test that log|d c| == coboundary_matrix @ log|c|"""
        G = GROUPS[name]
        for degree in (1, 2):
            c = Cochain(G, degree, rng.uniform(0.5, 2.0, (G.order,) * degree))
            expected = np.log(np.abs(coboundary(c).flat()))
            actual = coboundary_matrix(G, degree) @ np.log(np.abs(c.flat()))
            assert np.allclose(actual, expected, atol=1e-12)

    def test_degree_three_coboundary_raises(self):
        """Test that the coboundary stops at degree 3"""
        with pytest.raises(InputError):
            coboundary(trivial_cochain(cyclic_group(2), 3))

    def test_zero_value_rejected(self):
        """Test that cochains are C^x-valued"""
        with pytest.raises(InputError):
            Cochain(cyclic_group(2), 2, np.zeros((2, 2)))

    def test_wrong_size_rejected(self):
        """Test that the number of values must match the degree"""
        with pytest.raises(InputError):
            Cochain(cyclic_group(2), 2, np.ones(3))

    def test_known_cocycles(self):
        """Test the semion cocycle and a generator of H^3(Z3, U(1))"""
        assert verify_cocycle(semion_cocycle())["passed"]
        assert verify_cocycle(_z3_cocycle())["passed"]
        assert _z3_cocycle().normalized

    def test_random_cochain_is_not_a_cocycle(self, rng):
        """Test that a random 3-cochain fails and the first bad tuple is named"""
        report = verify_cocycle(_random_cochain(cyclic_group(2), 3, rng))
        assert not report["passed"]
        assert report["detail"].startswith("cocycle condition fails at (")


class TestPositiveCocycles:
    """Test the polar split and trivialization of positive cocycles"""

    @pytest.mark.parametrize("name", sorted(GROUPS))
    @pytest.mark.parametrize("degree", [1, 2, 3])
    def test_trivialize_random_coboundaries(self, name, degree, rng):
        """Test that d eta reproduces random positive coboundaries over 100 draws"""
        G = GROUPS[name]
        for _ in range(100):
            r = random_positive_coboundary(G, degree, rng)
            result = trivialize_positive_cocycle(r)
            assert result.residual <= 1e-10
            assert result.cochain.degree == degree - 1
            assert all(c["passed"] for c in result.certificates)
            if degree > 1:
                assert np.allclose(coboundary(result.cochain).values, r.values, rtol=1e-10)

    def test_negative_values_raise_domain_error(self):
        """Test that a cocycle with a -1 is not positive"""
        with pytest.raises(DomainError):
            trivialize_positive_cocycle(semion_cocycle())

    def test_non_coboundary_raises(self, rng):
        """Test that a generic positive 2-cochain on Z3 is not a coboundary"""
        r = Cochain(cyclic_group(3), 2, rng.uniform(0.5, 2.0, (3, 3)))
        with pytest.raises(InconsistencyError):
            trivialize_positive_cocycle(r)

    def test_polar_split(self):
        """Test that the scaled semion cocycle splits into the semion cocycle and |omega|"""
        omega = builtin_dataset("scaled-semion-cocycle").cochain
        assert not np.allclose(np.abs(omega.values), 1.0)
        u, r = polar_split_cocycle(omega)
        assert np.allclose(u.values, semion_cocycle().values)
        assert verify_cocycle(r)["passed"]
        assert np.all(r.values.real > 0)

    def test_polar_split_requires_cocycle(self, rng):
        """Test that the polar split refuses non-cocycles"""
        with pytest.raises(PreconditionError):
            polar_split_cocycle(_random_cochain(cyclic_group(2), 3, rng))

    def test_unitarize_scaled_semion(self):
        """Test that unitarizing the scaled semion cocycle recovers the semion cocycle"""
        omega = builtin_dataset("scaled-semion-cocycle").cochain
        result = unitarize_cocycle(omega)
        assert np.allclose(result.cocycle.values, semion_cocycle().values, atol=1e-12)
        names = [c["name"] for c in result.certificates]
        assert names == ["coboundary", "cohomologous", "unit-modulus"]
        assert all(c["passed"] for c in result.certificates)
        quotient = omega.values / result.cocycle.values
        trivializer = result.trivializer
        assert np.allclose(coboundary(trivializer).values, quotient, rtol=1e-10)


class TestVecG:
    """Test the bridge between 3-cocycles and pointed fusion categories"""

    def test_semion_category(self):
        """Test that Vec_Z2 twisted by the semion cocycle is the semion F-symbol set"""
        G = cyclic_group(2)
        ring, F = build_vecG_category(G, semion_cocycle())
        assert ring == semion_fsymbols().ring
        assert verify_pentagon(F, 1e-12)["passed"]
        recovered = cocycle_from_fsymbols(semion_fsymbols(), G)
        assert np.allclose(recovered.values, semion_cocycle().values)

    def test_non_cocycle_refused(self, rng):
        """Test that the pentagon fails exactly when the cocycle condition does"""
        with pytest.raises(PreconditionError):
            build_vecG_category(cyclic_group(2), _random_cochain(cyclic_group(2), 3, rng))

    def test_unnormalized_cocycle_refused(self):
        """Test that Vec_G^omega needs a normalized cocycle"""
        with pytest.raises(PreconditionError, match="normalized"):
            build_vecG_category(cyclic_group(2), builtin_dataset("scaled-semion-cocycle").cochain)

    def test_cochain_gauge_multiplies_by_coboundary(self, rng):
        """Test that gauging by a 2-cochain c multiplies omega by d c"""
        G = cyclic_group(3)
        omega = _z3_cocycle()
        _, F = build_vecG_category(G, omega)
        c = normalize(_random_cochain(G, 2, rng))
        gauged = cocycle_from_fsymbols(apply_gauge(F, gauge_from_cochain(c)), G)
        assert np.allclose(gauged.values, (omega * coboundary(c)).values, rtol=1e-12)

    def test_unnormalized_gauge_cochain_refused(self, rng):
        """Test that gauges come from normalized 2-cochains"""
        with pytest.raises(InputError):
            gauge_from_cochain(_random_cochain(cyclic_group(3), 2, rng))

    def test_unitarized_equivalence_matches_cocycle_unitarization(self, rng):
        """Test that unitarizing a gauged Vec_Z3 equivalence agrees with unitarize_cocycle"""
        G = cyclic_group(3)
        _, F = build_vecG_category(G, _z3_cocycle())
        for _ in range(10):
            c = normalize(_random_cochain(G, 2, rng))
            phase = Cochain(G, 2, np.exp(1j * np.angle(c.values)))
            distorted = cocycle_from_fsymbols(apply_gauge(F, gauge_from_cochain(c)), G)
            expected = unitarize_cocycle(distorted).cocycle

            tensorator = gauge_from_cochain(phase * random_positive_coboundary(G, 2, rng))
            assert gauge_unitarity_residual(tensorator) > 1e-6
            output = unitarize_equivalence(gauged_equivalence(F, tensorator)).equivalence
            found = cocycle_from_fsymbols(apply_gauge(F, output.tensorator), G)
            assert np.allclose(found.values, expected.values, atol=1e-9)

            values = np.empty((3, 3), dtype=complex)
            for g, h in G.tuples(2):
                values[g, h] = output.tensorator.block(g, h, G.mul(g, h))[0, 0]
            ratio = Cochain(G, 2, values) / phase
            assert np.allclose(np.abs(ratio.values), 1.0, atol=1e-9)
            # H^2(Z3, U(1)) vanishes, so a unit-modulus 2-cocycle is a U(1) coboundary
            assert np.allclose(coboundary(ratio).values, 1.0, atol=1e-9)
