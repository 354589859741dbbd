import numpy as np
import pytest

from ews.blockpos import (
    is_block_positive,
    product_expectation_max,
    product_expectation_min,
    product_vector_grid,
    product_vector_in_subspace,
    zero_pattern_check,
)
from ews.linalg import BipartiteOperator, eig_hermitian, kron, pt_mat
from ews.states import max_entangled, tiles_upb_state

RNG = np.random.default_rng(321)


def random_bipartite(m, n, rng=RNG):
    d = m * n
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return BipartiteOperator(m, n, (g + g.conj().T) / 2.0)


def product_expectation(op, a, b):
    v = kron(a, b)
    return float(np.vdot(v, op.mat @ v).real)


class TestSeesawMin:
    def test_identity(self):
        op = BipartiteOperator(2, 2, np.eye(4, dtype=complex))
        opt = product_expectation_min(op, restarts=8, seed=1)
        assert abs(opt.value - 1.0) < 1e-12

    def test_bell_pt_reaches_zero(self):
        op = BipartiteOperator(
            2, 2, pt_mat(max_entangled(2, 2).projector().mat, 2, 2)
        )
        opt = product_expectation_min(op, restarts=16, seed=2)
        assert abs(opt.value) < 1e-10

    def test_diagonal_hits_smallest_entry(self):
        diag = np.array([0.9, 0.4, 0.7, 0.1, 0.8, 0.5])
        op = BipartiteOperator(2, 3, np.diag(diag).astype(complex))
        opt = product_expectation_min(op, restarts=16, seed=3)
        # brute force over basis product vectors is exact for diagonals
        brute = min(
            product_expectation(op, np.eye(2)[i], np.eye(3)[j])
            for i in range(2)
            for j in range(3)
        )
        assert abs(opt.value - brute) < 1e-10

    def test_value_matches_returned_vectors(self):
        op = random_bipartite(2, 3)
        opt = product_expectation_min(op, restarts=16, seed=4)
        direct = product_expectation(op, opt.vec_a, opt.vec_b)
        assert abs(direct - opt.value) < 1e-10 * max(
            1.0, np.linalg.norm(op.mat)
        )

    def test_value_between_extreme_eigenvalues(self):
        for _ in range(5):
            op = random_bipartite(2, 2)
            vals = eig_hermitian(op.mat).values
            opt = product_expectation_min(op, restarts=8, seed=5)
            assert vals[-1] - 1e-10 <= opt.value <= vals[0] + 1e-10

    def test_grid_oracle(self):
        op = random_bipartite(2, 2)
        opt = product_expectation_min(op, restarts=32, seed=6)
        grid_min = min(
            product_expectation(op, a, b) for a, b in product_vector_grid(2, 2, 2500)
        )
        assert opt.value <= grid_min + 1e-6

    def test_pt_symmetry(self):
        op = random_bipartite(2, 3)
        flipped = BipartiteOperator(2, 3, pt_mat(op.mat, 2, 3))
        v1 = product_expectation_min(op, restarts=32, seed=7).value
        v2 = product_expectation_min(flipped, restarts=32, seed=8).value
        assert abs(v1 - v2) < 1e-8

    def test_psd_never_negative(self):
        g = RNG.standard_normal((6, 4)) + 1j * RNG.standard_normal((6, 4))
        psd = g @ g.conj().T
        op = BipartiteOperator(2, 3, psd / np.trace(psd).real)
        opt = product_expectation_min(op, restarts=8, seed=9)
        assert opt.value >= -1e-12

    def test_deterministic(self):
        op = random_bipartite(2, 2)
        a = product_expectation_min(op, restarts=8, seed=10)
        b = product_expectation_min(op, restarts=8, seed=10)
        assert a.value == b.value
        assert a.spread == b.spread


class TestSeesawMax:
    @pytest.mark.parametrize("m", [2, 3])
    def test_max_entangled_pt(self, m):
        op = BipartiteOperator(
            m, m, pt_mat(max_entangled(m, m).projector().mat, m, m)
        )
        opt = product_expectation_max(op, restarts=32, seed=11)
        assert abs(opt.value - 1.0 / m) < 1e-8

    def test_identity(self):
        op = BipartiteOperator(2, 2, np.eye(4, dtype=complex))
        assert abs(product_expectation_max(op, restarts=8, seed=0).value - 1.0) < 1e-12

    def test_diagonal_max(self):
        diag = np.array([0.9, 0.4, 0.7, 0.1])
        op = BipartiteOperator(2, 2, np.diag(diag).astype(complex))
        opt = product_expectation_max(op, restarts=16, seed=12)
        assert abs(opt.value - 0.9) < 1e-10


class TestBlockPositive:
    def test_negative_identity(self):
        op = BipartiteOperator(2, 2, -np.eye(4, dtype=complex))
        verdict = is_block_positive(op, restarts=8, seed=13)
        assert verdict.status == "no"
        assert verdict.counterexample is not None
        assert abs(verdict.counterexample[2] + 1.0) < 1e-10

    def test_psd_fast_path(self):
        op = max_entangled(2, 2).projector()
        assert is_block_positive(op, restarts=4, seed=14).status == "yes-psd"

    def test_pt_psd_fast_path(self):
        op = BipartiteOperator(
            2, 2, pt_mat(max_entangled(2, 2).projector().mat, 2, 2)
        )
        verdict = is_block_positive(op, restarts=4, seed=15)
        assert verdict.status.startswith("yes")

    def test_indefinite_diagonal_rejected(self):
        op = BipartiteOperator(2, 2, np.diag([1.0, 1.0, 1.0, -0.2]).astype(complex))
        verdict = is_block_positive(op, restarts=16, seed=16)
        assert verdict.status == "no"


class TestProductVectorInSubspace:
    def test_product_span_found(self):
        basis = np.zeros((2, 4), dtype=complex)
        basis[0, 0] = 1.0  # |11>
        basis[1, 1] = 1.0  # |12>
        found = product_vector_in_subspace(basis, 2, 2, restarts=16, seed=17)
        assert found is not None
        a, b = found
        v = kron(a, b)
        proj = basis.T @ basis.conj()
        assert np.linalg.norm(v - proj @ v) < 1e-5

    def test_entangled_line_empty(self):
        basis = max_entangled(2, 2).to_vector()[None, :]
        assert product_vector_in_subspace(basis, 2, 2, restarts=16, seed=18) is None

    def test_tiles_range_is_completely_entangled(self):
        sigma = tiles_upb_state()
        eig = eig_hermitian(sigma.mat)
        basis = eig.vectors[:, eig.values > 1e-10].T
        assert basis.shape[0] == 4
        assert product_vector_in_subspace(basis, 3, 3, restarts=32, seed=19) is None


class TestZeroPattern:
    def test_witness_by_construction_clean(self):
        op = BipartiteOperator(
            2, 2, pt_mat(max_entangled(2, 2).projector().mat, 2, 2)
        )
        assert zero_pattern_check(op) == []

    def test_zero_matrix_clean(self):
        op = BipartiteOperator(2, 2, np.zeros((4, 4), dtype=complex))
        assert zero_pattern_check(op) == []

    def test_vanishing_diagonal_block_violation(self):
        mat = np.zeros((4, 4), dtype=complex)
        mat[0, 2] = mat[2, 0] = 1.0  # block (0,1) nonzero while block (0,0) = 0
        mat[1, 3] = mat[3, 1] = 1.0
        mat[2, 2] = mat[3, 3] = 1.0
        op = BipartiteOperator(2, 2, mat)
        violations = zero_pattern_check(op)
        assert any(
            v.rule == "zero-diagonal-block" and v.block == (0, 1) for v in violations
        )

    def test_vanishing_inner_index_violation(self):
        # diagonal entry |1><1| of each diagonal block vanishes but the first
        # inner row is coupled across blocks
        mat = np.zeros((4, 4), dtype=complex)
        mat[1, 1] = 0.0
        mat[3, 3] = 0.0
        mat[0, 0] = mat[2, 2] = 1.0
        mat[1, 2] = mat[2, 1] = 0.5
        op = BipartiteOperator(2, 2, mat)
        violations = zero_pattern_check(op)
        assert any(
            v.rule == "zero-diagonal-entry" and v.inner_index == 1 for v in violations
        )
