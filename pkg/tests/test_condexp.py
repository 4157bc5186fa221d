import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pqclab.algebras import (
    AlgebraSpec,
    diagonal_algebra,
    full_matrix_algebra,
    project_onto_algebra,
    scalar_algebra,
    trace_vector_onb,
)
from pqclab.bloch import AllStates, GreatCircle, classify
from pqclab.channels import (
    DensityOperator,
    channels_equal,
    choi,
    compose,
    depolarizing,
    from_kraus,
    random_unitary,
)
from pqclab.condexp import (
    PQCInstance,
    collective_noise_channel_n2,
    condexp_channel,
    is_pqc,
    private_states_certificate,
    verify_condexp_axioms,
)
from pqclab.errors import (
    DimensionMismatch,
    NotUnitalAlgebra,
    NotUnitVector,
    Rho0NotInAlgebra,
)
from pqclab.linalg import hs_inner, matrices_equal, max_abs_diff, partial_trace, tensor
from pqclab.rand import random_block_algebra, random_unit_vector

DELTA2 = diagonal_algebra(2)
SCALAR2 = scalar_algebra(2)
TWO_BY_M2 = AlgebraSpec(((2, 2),))

E_DELTA = condexp_channel(DELTA2)
MIXED2 = DensityOperator(np.eye(2) / 2)

SZ = np.array([[1, 0], [0, -1]], dtype=complex)
DEPHASING = random_unitary([0.5, 0.5], [np.eye(2), SZ])


def _equator_state(theta):
    return np.array([1.0, np.exp(1j * theta)]) / np.sqrt(2)


class TestCondexpChannel:
    def test_diagonal_action(self):
        x = np.array([[0.3, 2j], [1.0, 0.7]], dtype=complex)
        assert matrices_equal(E_DELTA.apply_matrix(x), np.diag([0.3, 0.7]))

    def test_kraus_list_is_minimal_for_diagonals(self):
        assert len(E_DELTA.kraus) == 2

    @pytest.mark.parametrize("d", [2, 3, 4])
    def test_scalar_algebra_gives_full_depolarizing(self, d):
        assert channels_equal(condexp_channel(scalar_algebra(d)), depolarizing(1.0, d))

    @given(st.integers(0, 10**6))
    def test_multiplicity_block_action(self, seed):
        rng = np.random.default_rng(seed)
        ch = condexp_channel(TWO_BY_M2)
        x = rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4))
        expected = tensor(np.eye(2) / 2, partial_trace(x, 2, 2, "left"))
        assert max_abs_diff(ch.apply_matrix(x), expected) < 1e-10

    def test_agrees_with_projection_on_random_input(self):
        rng = np.random.default_rng(2)
        alg = random_block_algebra(rng, max_dim=6, admit_trace_vectors=None)
        ch = condexp_channel(alg)
        x = rng.standard_normal((alg.dim,) * 2) + 1j * rng.standard_normal((alg.dim,) * 2)
        assert max_abs_diff(ch.apply_matrix(x), project_onto_algebra(alg, x)) < 1e-10

    def test_rejects_non_unital_algebras(self):
        with pytest.raises(NotUnitalAlgebra):
            condexp_channel(AlgebraSpec(((1, 1),), 1))

    def test_qubit_classification_bridge(self):
        out = classify(E_DELTA)
        assert isinstance(out, GreatCircle)
        assert np.allclose(out.normal, [0.0, 0.0, 1.0])
        assert isinstance(classify(condexp_channel(SCALAR2)), AllStates)


class TestAxioms:
    @pytest.mark.parametrize(
        "alg",
        [DELTA2, SCALAR2, scalar_algebra(3), scalar_algebra(4), TWO_BY_M2],
    )
    def test_conditional_expectations_pass(self, alg):
        report = verify_condexp_axioms(condexp_channel(alg), alg)
        assert report.passed
        assert report.fixes_subalgebra <= 1e-9
        assert report.bimodule <= 1e-9
        assert report.positive
        assert report.trace_preserving <= 1e-9

    def test_identity_channel_is_not_the_diagonal_expectation(self):
        report = verify_condexp_axioms(from_kraus([np.eye(2)]), DELTA2)
        assert not report.passed
        assert report.fixes_subalgebra <= 1e-12  # identity fixes everything
        assert abs(report.bimodule - 1.0) < 1e-9  # but its range leaves the algebra

    def test_dephasing_is_not_the_scalar_expectation(self):
        report = verify_condexp_axioms(DEPHASING, SCALAR2)
        assert not report.passed
        assert abs(report.bimodule - 0.5) < 1e-9

    def test_rejects_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            verify_condexp_axioms(E_DELTA, scalar_algebra(3))

    @pytest.mark.parametrize("seed", range(3))
    def test_random_algebras_pass(self, seed):
        alg = random_block_algebra(np.random.default_rng(seed), max_dim=8, admit_trace_vectors=None)
        assert verify_condexp_axioms(condexp_channel(alg), alg).passed

    @pytest.mark.parametrize(
        "alg",
        [DELTA2, SCALAR2, TWO_BY_M2],
    )
    def test_idempotence(self, alg):
        e = condexp_channel(alg)
        assert channels_equal(compose(e, e), e)

    @given(st.integers(0, 10**6))
    def test_hs_self_adjointness(self, seed):
        rng = np.random.default_rng(seed)
        alg = random_block_algebra(rng, max_dim=6, admit_trace_vectors=None)
        e = condexp_channel(alg)
        d = alg.dim
        x = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        y = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        lhs = hs_inner(e.apply_matrix(x), y)
        rhs = hs_inner(x, e.apply_matrix(y))
        assert abs(lhs - rhs) < 1e-10


class TestIsPqc:
    def test_equator_states_are_private_for_dephasing_expectation(self):
        states = tuple(_equator_state(k * np.pi / 4) for k in range(8))
        report = is_pqc(PQCInstance(states, E_DELTA, MIXED2))
        assert report.verdict
        assert bool(report)
        assert max(report.residuals) <= 1e-9

    def test_pole_state_fails_with_half_residual(self):
        report = is_pqc(PQCInstance((np.array([1.0, 0.0]),), E_DELTA, MIXED2))
        assert not report.verdict
        assert abs(report.residuals[0] - 0.5) < 1e-12

    def test_everything_is_private_for_full_depolarizing(self):
        rng = np.random.default_rng(7)
        states = tuple(random_unit_vector(2, rng) for _ in range(10))
        assert is_pqc(PQCInstance(states, depolarizing(1.0, 2), MIXED2)).verdict

    def test_instance_validation(self):
        with pytest.raises(NotUnitVector):
            PQCInstance((np.array([1.0, 1.0]),), E_DELTA, MIXED2)
        with pytest.raises(DimensionMismatch):
            PQCInstance((np.array([1.0, 0.0, 0.0]),), E_DELTA, MIXED2)
        with pytest.raises(ValueError):
            PQCInstance((), E_DELTA, MIXED2)


class TestCertificate:
    def test_agrees_on_equator_and_poles(self):
        for theta in (0.0, 0.9, np.pi / 3):
            assert private_states_certificate(DELTA2, MIXED2, _equator_state(theta))
        assert not private_states_certificate(DELTA2, MIXED2, np.array([1.0, 0.0]))

    def test_bell_vector_for_multiplicity_block(self):
        bell = np.array([1.0, 0.0, 0.0, 1.0]) / np.sqrt(2)
        assert private_states_certificate(TWO_BY_M2, np.eye(4) / 4, bell)

    def test_rejects_non_unital(self):
        with pytest.raises(NotUnitalAlgebra):
            private_states_certificate(AlgebraSpec(((1, 1),), 1), np.eye(2) / 2, np.array([1.0, 0.0]))

    def test_rejects_target_outside_algebra(self):
        off = np.array([[0.5, 0.4], [0.4, 0.5]], dtype=complex)
        with pytest.raises(Rho0NotInAlgebra):
            private_states_certificate(DELTA2, off, _equator_state(0.0))

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_direct_route_on_random_vectors(self, seed):
        # dual route: trace-vector certificate vs applying the built channel
        rng = np.random.default_rng(seed)
        alg = random_block_algebra(rng, max_dim=8, admit_trace_vectors=True)
        ch = condexp_channel(alg)
        rho0 = DensityOperator(np.eye(alg.dim) / alg.dim)
        vectors = [random_unit_vector(alg.dim, rng) for _ in range(30)]
        vectors.extend(trace_vector_onb(alg)[:2])
        for v in vectors:
            direct = is_pqc(PQCInstance((v,), ch, rho0)).verdict
            cert = private_states_certificate(alg, rho0, v)
            assert direct == cert


class TestCollectiveNoise:
    def setup_method(self):
        self.ch, self.alg = collective_noise_channel_n2()
        self.singlet = np.array([0.0, 1.0, -1.0, 0.0]) / np.sqrt(2)
        self.triplet_proj = np.eye(4) - np.outer(self.singlet, self.singlet)

    def test_block_structure(self):
        assert self.alg.blocks == ((3, 1), (1, 1))
        assert self.alg.is_unital

    def test_singlet_is_fixed(self):
        rho = np.outer(self.singlet, self.singlet)
        assert matrices_equal(self.ch.apply_matrix(rho), rho)

    def test_triplet_states_are_uniformly_mixed(self):
        rho = np.zeros((4, 4), dtype=complex)
        rho[0, 0] = 1.0  # |00>, inside the symmetric component
        assert matrices_equal(self.ch.apply_matrix(rho), self.triplet_proj / 3)

    def test_axioms_hold_for_the_fixed_algebra(self):
        assert verify_condexp_axioms(self.ch, self.alg).passed

    def test_matches_the_constructed_expectation(self):
        # dual route: hand-built Kraus list vs projection-derived channel
        assert max_abs_diff(choi(self.ch), choi(condexp_channel(self.alg))) < 1e-12

    def test_kraus_count(self):
        assert len(self.ch.kraus) == 10
