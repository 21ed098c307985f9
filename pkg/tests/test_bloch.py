import numpy as np
import pytest

from qtrace.bipartite import ptrace_a_fast, ptrace_b_fast
from qtrace.bloch import (
    bloch_b_direct,
    bloch_b_fast,
    bloch_from_state,
    gellmann_basis,
    reduced_state_bloch,
    state_from_bloch,
)
from qtrace.costmodel import Method, cost_estimate
from qtrace.linalg import random_density_matrix
from qtrace.opcount import OpCounter

SIGMA_Z = np.diag([1.0 + 0.0j, -1.0])
SIGMA_X = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
SIGMA_Y = np.array([[0.0, -1.0j], [1.0j, 0.0]])


def swap_parties(rho, da, db):
    """Relabel the two factors: exact permutation, no arithmetic."""
    d = da * db
    return (
        np.asarray(rho)
        .reshape(da, db, da, db)
        .transpose(1, 0, 3, 2)
        .reshape(d, d)
        .copy()
    )


class TestGellmannBasis:
    def test_dimension_two_gives_the_pauli_matrices(self):
        basis = gellmann_basis(2)
        assert np.array_equal(basis.diagonal[0], SIGMA_Z)
        assert np.array_equal(basis.symmetric[0], SIGMA_X)
        assert np.array_equal(basis.antisymmetric[0], SIGMA_Y)

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 8])
    def test_count_and_grouping(self, d):
        basis = gellmann_basis(d)
        assert len(basis) == d * d - 1
        assert len(basis.diagonal) == d - 1
        assert len(basis.symmetric) == d * (d - 1) // 2
        assert len(basis.antisymmetric) == d * (d - 1) // 2
        assert len(basis.all()) == d * d - 1

    @pytest.mark.parametrize("d", [2, 3, 5, 8])
    def test_generators_are_hermitian_and_traceless(self, d):
        for g in gellmann_basis(d).all():
            assert np.max(np.abs(g - g.conj().T)) <= 1e-13
            assert abs(np.trace(g)) <= 1e-13

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6, 7, 8])
    def test_orthonormality(self, d):
        mats = gellmann_basis(d).all()
        for i, gi in enumerate(mats):
            for j, gj in enumerate(mats):
                want = 2.0 if i == j else 0.0
                assert abs(np.trace(gi @ gj) - want) <= 1e-12

    def test_rejects_dimension_below_two(self):
        with pytest.raises(ValueError):
            gellmann_basis(1)


class TestVectorRoundtrip:
    @pytest.mark.parametrize("d", [2, 3, 4, 6])
    def test_state_reconstructs_from_its_vector(self, d):
        rho = random_density_matrix(d, seed=d + 40)
        basis = gellmann_basis(d)
        gamma = bloch_from_state(rho, basis)
        back = state_from_bloch(gamma, basis)
        assert np.max(np.abs(back - rho)) < 1e-13

    @pytest.mark.parametrize("d", [2, 3, 5, 8])
    def test_density_matrix_vectors_obey_the_purity_bound(self, d):
        basis = gellmann_basis(d)
        for seed in range(5):
            gamma = bloch_from_state(random_density_matrix(d, seed=seed), basis)
            assert gamma.norm_squared() <= gamma.purity_bound() + 1e-9

    def test_pure_state_saturates_the_bound(self):
        rho = np.zeros((3, 3), dtype=complex)
        rho[0, 0] = 1.0
        gamma = bloch_from_state(rho, gellmann_basis(3))
        assert abs(gamma.norm_squared() - 4.0 / 3.0) < 1e-12

    def test_non_hermitian_state_rejected(self):
        rho = np.array([[0.5, 1.0], [0.0, 0.5]], dtype=complex)
        with pytest.raises(ValueError):
            bloch_from_state(rho, gellmann_basis(2))

    def test_size_mismatch_rejected(self):
        with pytest.raises(ValueError):
            bloch_from_state(np.eye(3, dtype=complex) / 3.0, gellmann_basis(2))
        gamma = bloch_from_state(np.eye(2, dtype=complex) / 2.0, gellmann_basis(2))
        with pytest.raises(ValueError):
            state_from_bloch(gamma, gellmann_basis(3))


class TestCompositeBlochVector:
    @pytest.mark.parametrize("da,db", [(2, 2), (2, 3), (3, 2), (4, 3)])
    def test_direct_equals_vector_of_the_marginal(self, da, db):
        rho = random_density_matrix(da * db, seed=da * 10 + db)
        got = bloch_b_direct(rho, (da, db))
        want = bloch_from_state(ptrace_a_fast(rho, (da, db)), gellmann_basis(db))
        assert np.max(np.abs(got.as_array() - want.as_array())) < 1e-12

    @pytest.mark.parametrize("da,db", [(2, 2), (3, 4), (5, 2), (2, 6)])
    def test_fast_equals_direct(self, da, db):
        rho = random_density_matrix(da * db, seed=da + 3 * db)
        got = bloch_b_fast(rho, (da, db))
        want = bloch_b_direct(rho, (da, db))
        assert np.max(np.abs(got.as_array() - want.as_array())) < 1e-10

    def test_non_hermitian_rejected(self):
        op = np.eye(4, dtype=complex)
        op[0, 1] = 1.0
        for fn in (bloch_b_direct, bloch_b_fast):
            with pytest.raises(ValueError):
                fn(op, (2, 2))

    @pytest.mark.parametrize("da,db", [(2, 2), (2, 3), (3, 3)])
    def test_direct_counter_within_factor_two_of_formula(self, da, db):
        counter = OpCounter()
        bloch_b_direct(random_density_matrix(da * db, seed=2), (da, db), counter=counter)
        est = cost_estimate(Method.BLOCH_DIRECT, da, db)
        assert counter.mops <= est.mops <= 2 * counter.mops
        assert counter.sops <= est.sops <= 2 * counter.sops

    @pytest.mark.parametrize("da,db", [(2, 2), (3, 4), (4, 2)])
    def test_fast_counter_stays_under_formula(self, da, db):
        counter = OpCounter()
        bloch_b_fast(random_density_matrix(da * db, seed=3), (da, db), counter=counter)
        est = cost_estimate(Method.BLOCH_SEMI, da, db)
        assert counter.mops == 5 * (db - 1) + db * (db - 1)
        assert counter.sops == db * db * (da - 1) + (db - 1) + max(db - 2, 0)
        assert counter.mops <= est.mops
        assert counter.sops <= est.sops


class TestReducedStateBloch:
    @pytest.mark.parametrize("da,db", [(2, 2), (2, 3), (3, 2), (4, 4), (2, 8)])
    def test_equals_the_fast_marginal(self, da, db):
        rho = random_density_matrix(da * db, seed=500 + da * db)
        got = reduced_state_bloch(rho, (da, db))
        assert np.max(np.abs(got - ptrace_a_fast(rho, (da, db)))) < 1e-13

    @pytest.mark.parametrize("da,db", [(2, 2), (3, 4), (4, 3)])
    def test_party_swap_identity(self, da, db):
        rho = random_density_matrix(da * db, seed=600 + da + db)
        got = reduced_state_bloch(rho, (da, db))
        via_swap = ptrace_b_fast(swap_parties(rho, da, db), (db, da))
        assert np.max(np.abs(got - via_swap)) < 1e-13

    def test_single_level_marginal(self):
        rho = random_density_matrix(3, seed=4)
        got = reduced_state_bloch(rho, (3, 1))
        assert got.shape == (1, 1)
        assert abs(got[0, 0] - 1.0) < 1e-14

    @pytest.mark.parametrize("da", [1, 2, 3, 5, 8])
    @pytest.mark.parametrize("db", [2, 3, 5, 8])
    def test_counter_stays_within_the_budget(self, da, db):
        rho = random_density_matrix(da * db, seed=da * 17 + db)
        counter = OpCounter()
        reduced_state_bloch(rho, (da, db), counter=counter)
        est = cost_estimate(Method.BLOCH_GELLMANN, da, db)
        assert counter.mops == 9 * (db - 1) + 1
        assert counter.sops == (
            db * (da - 1) + db * (db - 1) * (da - 1) // 2 + 5 * db - 6
        )
        assert counter.mops <= est.mops
        assert counter.sops <= est.sops

    def test_non_hermitian_rejected(self):
        op = np.eye(6, dtype=complex) / 6.0
        op[0, 2] = 0.5
        with pytest.raises(ValueError):
            reduced_state_bloch(op, (2, 3))

    def test_borderline_hermitian_input_trips_the_residue_guard(self):
        # passes the 1e-10 Hermiticity gate yet accumulates an imaginary
        # component above 1e-11 on the first diagonal-group coefficient
        d = 16
        base = np.eye(d) / d
        drift = np.array([4.5e-11 if i % 2 == 0 else -4.5e-11 for i in range(d)])
        rho = base + 1j * np.diag(drift)
        with pytest.raises(ValueError, match="residue"):
            reduced_state_bloch(rho, (8, 2))

    def test_vector_extraction_trips_the_residue_guard_too(self):
        rho = np.diag([0.5 + 4.5e-11j, 0.5 - 4.5e-11j])
        with pytest.raises(ValueError, match="residue"):
            bloch_from_state(rho, gellmann_basis(2))
