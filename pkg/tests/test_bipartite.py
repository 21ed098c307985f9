import numpy as np
import pytest

from qtrace.bipartite import (
    ptrace_a_direct,
    ptrace_a_fast,
    ptrace_b_direct,
    ptrace_b_fast,
    ptrace_b_fast_hermitian,
    ptrace_b_semi,
)
from qtrace.costmodel import Method, cost_estimate
from qtrace.linalg import is_hermitian, random_density_matrix, random_unitary
from qtrace.opcount import OpCounter


def random_op(d, seed):
    rng = np.random.default_rng(seed)
    return rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))


def marginal_a(op, da, db):
    """Independent reference: contract the b indices of the reshaped operator."""
    return np.einsum("ajbj->ab", np.asarray(op).reshape(da, db, da, db))


def marginal_b(op, da, db):
    return np.einsum("jajb->ab", np.asarray(op).reshape(da, db, da, db))


class TestDirect:
    def test_kron_factor_times_trace(self):
        a = random_op(2, 1)
        b = random_op(2, 2)
        got = ptrace_b_direct(np.kron(a, b), (2, 2))
        assert np.max(np.abs(got - a * np.trace(b))) < 1e-12

    def test_identity_input(self):
        got = ptrace_b_direct(np.eye(4, dtype=complex), (2, 2))
        assert np.max(np.abs(got - 2.0 * np.eye(2))) < 1e-14

    def test_bell_projector_reduces_to_maximally_mixed(self):
        phi = np.zeros(4, dtype=complex)
        phi[0] = phi[3] = 1.0 / np.sqrt(2.0)
        got = ptrace_b_direct(np.outer(phi, phi.conj()), (2, 2))
        assert np.max(np.abs(got - np.eye(2) / 2.0)) < 1e-14

    @pytest.mark.parametrize("da,db", [(2, 2), (2, 3), (3, 2), (4, 3)])
    def test_matches_reference_contraction(self, da, db):
        op = random_op(da * db, 10 * da + db)
        got = ptrace_b_direct(op, (da, db))
        assert np.max(np.abs(got - marginal_a(op, da, db))) < 1e-12

    @pytest.mark.parametrize("da,db", [(2, 2), (3, 4), (5, 2), (4, 4)])
    def test_counter_multiplications_match_formula_exactly(self, da, db):
        counter = OpCounter()
        ptrace_b_direct(random_op(da * db, 3), (da, db), counter=counter)
        est = cost_estimate(Method.DIRECT_B, da, db)
        assert counter.mops == est.mops
        # the running accumulation adds (db-1)*da^2 on top of the per-product sums
        assert counter.sops == est.sops + (db - 1) * da * da

    def test_size_mismatch_rejected(self):
        with pytest.raises(ValueError):
            ptrace_b_direct(np.eye(6, dtype=complex), (2, 2))


class TestDirectOverA:
    def test_kron_trace_times_factor(self):
        a = random_op(2, 4)
        b = random_op(3, 5)
        got = ptrace_a_direct(np.kron(a, b), (2, 3))
        assert np.max(np.abs(got - np.trace(a) * b)) < 1e-12

    def test_identity_input(self):
        got = ptrace_a_direct(np.eye(4, dtype=complex), (2, 2))
        assert np.max(np.abs(got - 2.0 * np.eye(2))) < 1e-14

    def test_trace_is_preserved(self):
        rho = random_density_matrix(6, seed=8)
        reduced = ptrace_a_direct(rho, (2, 3))
        assert abs(np.trace(reduced) - 1.0) < 1e-12


class TestSemi:
    def test_identity_basis_equals_fast_exactly(self):
        for da, db in [(2, 2), (3, 4), (4, 3)]:
            op = random_op(da * db, da + 17 * db)
            via_semi = ptrace_b_semi(op, (da, db), np.eye(db, dtype=complex))
            via_fast = ptrace_b_fast(op, (da, db))
            assert np.array_equal(via_semi, via_fast)

    @pytest.mark.parametrize("da,db", [(2, 2), (2, 4), (3, 3), (4, 2)])
    def test_random_unitary_basis_matches_fast(self, da, db):
        op = random_op(da * db, 31 * da + db)
        basis = random_unitary(db, seed=da * db)
        got = ptrace_b_semi(op, (da, db), basis)
        assert np.max(np.abs(got - ptrace_b_fast(op, (da, db)))) < 1e-10

    def test_hadamard_basis_on_identity(self):
        hadamard = np.array([[1, 1], [1, -1]], dtype=complex) / np.sqrt(2.0)
        got = ptrace_b_semi(np.eye(4, dtype=complex), (2, 2), hadamard)
        assert np.max(np.abs(got - 2.0 * np.eye(2))) < 1e-12

    def test_non_unitary_basis_rejected(self):
        basis = np.array([[1.0, 0.0], [1.0, 0.0]], dtype=complex)
        with pytest.raises(ValueError):
            ptrace_b_semi(np.eye(4, dtype=complex), (2, 2), basis)

    def test_wrong_basis_shape_rejected(self):
        with pytest.raises(ValueError):
            ptrace_b_semi(np.eye(4, dtype=complex), (2, 2), np.eye(3, dtype=complex))

    @pytest.mark.parametrize("da,db", [(2, 2), (3, 3), (2, 5)])
    def test_counter_multiplications_match_formula_exactly(self, da, db):
        counter = OpCounter()
        ptrace_b_semi(
            random_op(da * db, 5), (da, db), np.eye(db, dtype=complex), counter=counter
        )
        est = cost_estimate(Method.SEMI_B, da, db)
        assert counter.mops == est.mops
        assert est.sops <= 2 * counter.sops and counter.sops <= 2 * est.sops


class TestFast:
    def test_kron_factor_times_trace(self):
        a = random_op(3, 6)
        b = random_op(2, 7)
        got = ptrace_b_fast(np.kron(a, b), (3, 2))
        assert np.max(np.abs(got - a * np.trace(b))) < 1e-13

    def test_bell_projector(self):
        phi = np.zeros(4, dtype=complex)
        phi[0] = phi[3] = 1.0 / np.sqrt(2.0)
        got = ptrace_b_fast(np.outer(phi, phi.conj()), (2, 2))
        assert np.max(np.abs(got - np.eye(2) / 2.0)) < 1e-14

    @pytest.mark.parametrize("d", [2, 3, 4, 5, 6])
    def test_equals_direct_method(self, d):
        op = random_op(d * d, 100 + d)
        got = ptrace_b_fast(op, (d, d))
        assert np.max(np.abs(got - ptrace_b_direct(op, (d, d)))) < 1e-12

    @pytest.mark.parametrize("da", [1, 2, 3, 4, 5, 6, 7, 8])
    @pytest.mark.parametrize("db", [1, 2, 3, 4, 5, 6, 7, 8])
    def test_counter_is_exact(self, da, db):
        counter = OpCounter()
        ptrace_b_fast(random_op(da * db, da * 8 + db), (da, db), counter=counter)
        assert counter.mops == 0
        assert counter.sops == da * da * (db - 1)


class TestFastOverA:
    def test_kron_trace_times_factor(self):
        a = random_op(4, 9)
        b = random_op(3, 10)
        got = ptrace_a_fast(np.kron(a, b), (4, 3))
        assert np.max(np.abs(got - np.trace(a) * b)) < 1e-13

    def test_identity_input(self):
        got = ptrace_a_fast(np.eye(6, dtype=complex), (2, 3))
        assert np.max(np.abs(got - 2.0 * np.eye(3))) < 1e-14

    def test_equals_direct_over_a(self):
        op = random_op(6, 12)
        got = ptrace_a_fast(op, (3, 2))
        assert np.max(np.abs(got - ptrace_a_direct(op, (3, 2)))) < 1e-12


class TestFastHermitian:
    def test_matches_general_path_on_density_matrix(self):
        rho = random_density_matrix(16, seed=21)
        got = ptrace_b_fast_hermitian(rho, (4, 4))
        assert np.max(np.abs(got - ptrace_b_fast(rho, (4, 4)))) < 1e-13

    def test_counter_savings_for_two_by_two(self):
        counter = OpCounter()
        ptrace_b_fast_hermitian(np.eye(4, dtype=complex) / 4.0, (2, 2), counter=counter)
        assert counter.sops == 3
        assert counter.mops == 0

    def test_identity_input(self):
        got = ptrace_b_fast_hermitian(np.eye(4, dtype=complex) / 4.0, (2, 2))
        assert np.max(np.abs(got - np.eye(2) / 2.0)) < 1e-14

    def test_non_hermitian_input_rejected(self):
        op = random_op(4, 2)
        op[0, 1] = op[1, 0] + 1.0
        with pytest.raises(ValueError):
            ptrace_b_fast_hermitian(op, (2, 2))

    @pytest.mark.parametrize("da,db", [(2, 3), (3, 2), (4, 4), (5, 7)])
    def test_counter_savings_formula(self, da, db):
        rho = random_density_matrix(da * db, seed=da + db)
        counter = OpCounter()
        ptrace_b_fast_hermitian(rho, (da, db), counter=counter)
        saved = da * (da - 1) * (db - 1) // 2
        assert counter.sops == da * da * (db - 1) - saved


class TestInvariants:
    def test_oracle_equivalence_across_methods(self):
        cases = [
            (da, db)
            for da in range(1, 9)
            for db in range(1, 9)
            if da * db <= 64
        ]
        for da, db in cases:
            op = random_op(da * db, 1000 + 8 * da + db)
            reference = ptrace_b_direct(op, (da, db))
            semi = ptrace_b_semi(op, (da, db), np.eye(db, dtype=complex))
            fast = ptrace_b_fast(op, (da, db))
            assert np.max(np.abs(semi - reference)) < 1e-12
            assert np.max(np.abs(fast - reference)) < 1e-12

    @pytest.mark.parametrize("da,db", [(2, 2), (3, 4), (5, 3)])
    def test_trace_preservation(self, da, db):
        op = random_op(da * db, 64 + da * db)
        full = np.trace(op)
        for reduced in (
            ptrace_b_direct(op, (da, db)),
            ptrace_b_semi(op, (da, db), np.eye(db, dtype=complex)),
            ptrace_b_fast(op, (da, db)),
        ):
            assert abs(np.trace(reduced) - full) <= 1e-12 * max(abs(full), 1.0)

    def test_kron_factorization_property(self):
        x = random_op(3, 71)
        y = random_op(4, 72)
        got = ptrace_b_fast(np.kron(x, y), (3, 4))
        assert np.max(np.abs(got - np.trace(y) * x)) < 1e-12

    def test_uniqueness_identity(self):
        rng = np.random.default_rng(77)
        for _ in range(20):
            da = int(rng.integers(2, 7))
            db = int(rng.integers(2, 7))
            a = rng.standard_normal((da, da)) + 1j * rng.standard_normal((da, da))
            op = rng.standard_normal((da * db,) * 2) + 1j * rng.standard_normal(
                (da * db,) * 2
            )
            lhs = np.trace(np.kron(a, np.eye(db)) @ op)
            rhs = np.trace(a @ ptrace_b_fast(op, (da, db)))
            assert abs(lhs - rhs) < 1e-11

    @pytest.mark.parametrize("da,db", [(2, 2), (3, 3), (2, 5)])
    def test_hermiticity_is_preserved(self, da, db):
        rho = random_density_matrix(da * db, seed=900 + da * db)
        for reduced in (
            ptrace_b_direct(rho, (da, db)),
            ptrace_b_semi(rho, (da, db), np.eye(db, dtype=complex)),
            ptrace_b_fast(rho, (da, db)),
            ptrace_b_fast_hermitian(rho, (da, db)),
        ):
            assert is_hermitian(reduced, 1e-12)
