import numpy as np
import pytest

from weylkit import (
    ShapeError,
    ValidationError,
    basis_ket,
    dagger,
    frobenius_distance,
    hermitian_eigenvalues,
    kron,
    matmul,
    outer,
    partial_trace_env,
    trace,
    validate_density_matrix,
    validate_ket,
)
from weylkit.rand import random_complex_matrix, random_density
from weylkit.weyl import clock_matrix, shift_matrix

RNG = np.random.default_rng(1234)


class TestMatmul:
    def test_identity(self):
        a = random_complex_matrix(3, RNG)
        np.testing.assert_array_equal(matmul(np.eye(2), [[1, 2], [3, 4]]), [[1, 2], [3, 4]])
        np.testing.assert_allclose(matmul(np.eye(3), a), a)

    def test_hand_product(self):
        x = [[0, 1], [1, 0]]
        z = [[1, 0], [0, -1]]
        np.testing.assert_array_equal(matmul(x, z), [[0, -1], [1, 0]])

    def test_zero(self):
        a = random_complex_matrix(4, RNG)
        np.testing.assert_array_equal(matmul(np.zeros((4, 4)), a), np.zeros((4, 4)))

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            matmul(np.ones((2, 3)), np.ones((2, 3)))


class TestDagger:
    def test_scalar_conjugate(self):
        np.testing.assert_array_equal(dagger([[1j]]), [[-1j]])

    def test_real_symmetric_fixed(self):
        a = np.array([[1.0, 2.0], [2.0, 5.0]])
        np.testing.assert_array_equal(dagger(a), a)

    def test_clock_dagger(self):
        w = np.exp(2j * np.pi / 3)
        expected = np.diag([1, w ** -1, w ** -2])
        np.testing.assert_allclose(dagger(clock_matrix(3, 1)), expected, atol=1e-15)

    def test_involution_and_product_reversal(self):
        a = random_complex_matrix(4, RNG)
        b = random_complex_matrix(4, RNG)
        np.testing.assert_array_equal(dagger(dagger(a)), a)
        np.testing.assert_allclose(dagger(a @ b), dagger(b) @ dagger(a), atol=1e-14)


class TestTrace:
    def test_identity(self):
        for d in (2, 5, 8):
            assert trace(np.eye(d)) == d

    def test_shift_traceless(self):
        assert trace(shift_matrix(3, 1)) == 0

    def test_cube_roots_sum_to_zero(self):
        w = np.exp(2j * np.pi / 3)
        assert abs(trace(np.diag([1, w, w ** 2]))) < 1e-15

    def test_linearity_and_cyclicity(self):
        a = random_complex_matrix(4, RNG)
        b = random_complex_matrix(4, RNG)
        alpha, beta = 0.7 - 0.2j, 1.1 + 0.9j
        assert abs(trace(alpha * a + beta * b) - (alpha * trace(a) + beta * trace(b))) < 1e-12
        assert abs(trace(a @ b) - trace(b @ a)) < 1e-12

    def test_non_square(self):
        with pytest.raises(ShapeError):
            trace(np.ones((2, 3)))


class TestKron:
    def test_identity_blocks(self):
        np.testing.assert_array_equal(kron(np.eye(2), np.eye(3)), np.eye(6))

    def test_basis_bookkeeping(self):
        v = kron(basis_ket(2, 0), basis_ket(2, 1))
        np.testing.assert_array_equal(v, [0, 1, 0, 0])

    def test_system_factor_is_outer(self):
        # X_1 on the left factor sends joint index 0 (sys 0, env 0) to 2 (sys 1, env 0).
        op = kron(shift_matrix(2, 1), np.eye(2))
        v = np.zeros(4)
        v[0] = 1.0
        np.testing.assert_array_equal(op @ v, [0, 0, 1, 0])

    def test_associativity(self):
        a = random_complex_matrix(2, RNG)
        b = random_complex_matrix(3, RNG)
        c = random_complex_matrix(2, RNG)
        np.testing.assert_allclose(kron(kron(a, b), c), kron(a, kron(b, c)), atol=1e-14)


class TestPartialTrace:
    def test_product_state(self):
        rho = random_density(3, RNG)
        env = np.zeros((4, 4), dtype=complex)
        env[0, 0] = 1.0
        np.testing.assert_allclose(partial_trace_env(kron(rho, env), 3, 4), rho, atol=1e-14)

    def test_maximally_mixed(self):
        d, dd = 3, 9
        joint = np.eye(d * dd) / (d * dd)
        np.testing.assert_allclose(partial_trace_env(joint, d, dd), np.eye(d) / d, atol=1e-14)

    def test_kron_collapses_to_trace(self):
        a = random_complex_matrix(3, RNG)
        b = random_complex_matrix(4, RNG)
        np.testing.assert_allclose(partial_trace_env(kron(a, b), 3, 4), trace(b) * a, atol=1e-13)

    def test_trace_preserved(self):
        joint = random_complex_matrix(12, RNG)
        out = partial_trace_env(joint, 3, 4)
        assert abs(trace(out) - trace(joint)) < 1e-12

    def test_bad_factorization(self):
        with pytest.raises(ShapeError):
            partial_trace_env(np.eye(10), 3, 4)


class TestHermitianEigenvalues:
    def test_diagonal(self):
        np.testing.assert_allclose(hermitian_eigenvalues(np.diag([3.0, 1.0, 2.0])), [1, 2, 3])

    def test_swap_matrix(self):
        # characteristic polynomial: x**2 - 1
        np.testing.assert_allclose(hermitian_eigenvalues([[0, 1], [1, 0]]), [-1, 1], atol=1e-12)

    def test_maximally_mixed(self):
        for d in (2, 5):
            np.testing.assert_allclose(hermitian_eigenvalues(np.eye(d) / d), np.full(d, 1 / d))

    @pytest.mark.parametrize("n", [2, 3, 5, 8, 27])
    def test_against_numpy(self, n):
        g = random_complex_matrix(n, RNG)
        h = g + g.conj().T
        np.testing.assert_allclose(hermitian_eigenvalues(h), np.linalg.eigvalsh(h), atol=1e-10)

    def test_sum_matches_trace(self):
        g = random_complex_matrix(6, RNG)
        h = g + g.conj().T
        assert abs(hermitian_eigenvalues(h).sum() - trace(h).real) < 1e-10

    def test_rejects_non_hermitian(self):
        with pytest.raises(ValidationError, match="not Hermitian"):
            hermitian_eigenvalues([[0, 1], [0, 0]])


class TestFrobenius:
    def test_zero_iff_equal(self):
        a = random_complex_matrix(3, RNG)
        assert frobenius_distance(a, a) == 0.0

    def test_identity_vs_zero(self):
        assert abs(frobenius_distance(np.eye(2), np.zeros((2, 2))) - np.sqrt(2)) < 1e-15

    def test_shift_vs_clock(self):
        # four entries of unit magnitude differ
        assert abs(frobenius_distance(shift_matrix(2, 1), clock_matrix(2, 1)) - 2.0) < 1e-15

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            frobenius_distance(np.eye(2), np.eye(3))


class TestValidators:
    def test_ket_accepts_unit(self):
        validate_ket([1 / np.sqrt(2), 1j / np.sqrt(2)])

    def test_ket_rejects_unnormalized(self):
        with pytest.raises(ValidationError, match="norm"):
            validate_ket([1.0, 1.0])

    def test_ket_rejects_nan(self):
        with pytest.raises(ValidationError, match="finite"):
            validate_ket([np.nan, 0.0])

    def test_density_accepts_random(self):
        validate_density_matrix(random_density(4, RNG))

    def test_density_lists_failures(self):
        bad = np.array([[0.5, 1.0], [0.0, 0.5]])  # not Hermitian
        with pytest.raises(ValidationError, match="Hermitian"):
            validate_density_matrix(bad)
        with pytest.raises(ValidationError, match="trace"):
            validate_density_matrix(np.eye(2))
        with pytest.raises(ValidationError, match="semidefinite"):
            validate_density_matrix(np.diag([1.5, -0.5]))

    def test_outer_is_rank_one_projector(self):
        v = validate_ket(basis_ket(3, 1))
        p = outer(v, v)
        np.testing.assert_allclose(p @ p, p, atol=1e-15)
        assert abs(trace(p) - 1) < 1e-15
