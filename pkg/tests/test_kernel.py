"""Tests for the numeric kernel: exp/log, rank engine, finite differences, RK4 and Newton."""

import numpy as np
import pytest

from rbolab.kernel import (
    DEFAULT_TOLERANCE,
    DimensionError,
    DivergenceError,
    DomainError,
    SingularityError,
    Tolerance,
    UnsupportedDegreeError,
    column_space,
    directional_derivative,
    lstsq_residual,
    mat_exp,
    mat_log,
    mixed_partials,
    newton_solve,
    null_space,
    rank_and_kernel,
    rk4_group_flow,
    sqrtm_denman_beavers,
)


def rotation(angle: float) -> np.ndarray:
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s], [s, c]])


class TestExpLog:
    """Matrix exponential and principal logarithm."""

    def test_exp_of_zero_is_identity(self):
        """exp(0) = I."""
        assert np.array_equal(mat_exp(np.zeros((3, 3))), np.eye(3))

    def test_exp_of_rotation_generator(self):
        """exp of the so(2) generator gives the rotation matrix."""
        J = np.array([[0.0, -1.0], [1.0, 0.0]])
        assert np.allclose(mat_exp(0.7 * J), rotation(0.7), atol=1e-14)

    def test_exp_of_large_argument_uses_squaring(self):
        """Large diagonal arguments still match the scalar exponential."""
        assert np.allclose(mat_exp(np.diag([5.0, -3.0])), np.diag([np.exp(5.0), np.exp(-3.0)]), rtol=1e-12)

    def test_exp_rejects_non_square(self):
        """Non-square input raises DimensionError."""
        with pytest.raises(DimensionError):
            mat_exp(np.zeros((2, 3)))

    @pytest.mark.parametrize("angle", [0.1, 1.0, 2.5])
    def test_log_inverts_exp_on_rotations(self, angle):
        """log(exp(X)) = X inside the principal domain."""
        J = np.array([[0.0, -angle], [angle, 0.0]])
        assert np.allclose(mat_log(mat_exp(J)), J, atol=1e-10)

    def test_exp_log_roundtrip_on_general_matrix(self):
        """exp(log M) ≈ M for M near the identity."""
        rng = np.random.default_rng(3)
        M = np.eye(4) + 0.2 * rng.standard_normal((4, 4))
        assert np.linalg.norm(mat_exp(mat_log(M)) - M) <= 1e-10

    @pytest.mark.parametrize("seed", range(100))
    def test_exp_of_negative_is_inverse(self, seed):
        """exp(−M)·exp(M) = I for ‖M‖₁ = 2."""
        M = np.random.default_rng(seed).standard_normal((4, 4))
        M *= 2.0 / np.linalg.norm(M, 1)
        assert np.max(np.abs(mat_exp(-M) @ mat_exp(M) - np.eye(4))) <= 1e-10

    @pytest.mark.parametrize("seed", range(100))
    def test_log_inverts_exp_on_small_matrices(self, seed):
        """log(exp(A)) = A for ‖A‖₁ = 0.5."""
        A = np.random.default_rng(seed).standard_normal((4, 4))
        A *= 0.5 / np.linalg.norm(A, 1)
        assert np.max(np.abs(mat_log(mat_exp(A)) - A)) <= 1e-9

    def test_log_of_singular_matrix_raises(self):
        """A singular argument raises SingularityError."""
        with pytest.raises(SingularityError):
            mat_log(np.diag([1.0, 0.0]))

    def test_log_of_negative_eigenvalue_raises(self):
        """−I has no principal logarithm; the square-root iteration fails."""
        with pytest.raises((DomainError, SingularityError)):
            mat_log(-np.eye(2))

    def test_sqrt_squares_back(self):
        """The Denman-Beavers root squares to the input."""
        M = np.array([[4.0, 1.0], [0.0, 9.0]])
        root = sqrtm_denman_beavers(M)
        assert np.allclose(root @ root, M, atol=1e-12)


class TestRankEngine:
    """Gaussian elimination with the absolute/relative pivot rule."""

    def test_rank_and_kernel_of_rank_deficient_matrix(self, rank_oracle):
        """Rank matches the exact oracle and kernel vectors are annihilated."""
        M = np.array([[1.0, 2.0, 3.0], [2.0, 4.0, 6.0], [1.0, 0.0, 1.0]])
        rank, kernel = rank_and_kernel(M)
        assert rank == rank_oracle(M) == 2
        assert len(kernel) == 1
        assert np.allclose(M @ kernel[0], 0.0)

    @pytest.mark.parametrize("seed", range(20))
    def test_rank_ignores_row_order(self, seed, rank_oracle):
        """Shuffling the rows of a rank-deficient integer matrix leaves its rank unchanged."""
        rng = np.random.default_rng(seed)
        M = (rng.integers(-3, 4, size=(5, 2)) @ rng.integers(-3, 4, size=(2, 4))).astype(float)
        shuffled = M[rng.permutation(5)]
        assert rank_and_kernel(shuffled)[0] == rank_and_kernel(M)[0] == rank_oracle(M)

    def test_small_pivots_count_as_zero(self):
        """Entries below tol.abs + tol.rel·max|M| do not create rank."""
        M = np.array([[1.0, 0.0], [0.0, 1e-13]])
        assert rank_and_kernel(M)[0] == 1
        assert rank_and_kernel(M, Tolerance(abs=1e-15, rel=1e-15))[0] == 2

    def test_zero_matrix_has_full_kernel(self):
        """The zero matrix has rank 0 and an identity kernel basis."""
        rank, kernel = rank_and_kernel(np.zeros((2, 3)))
        assert rank == 0
        assert np.allclose(np.column_stack(kernel), np.eye(3))

    def test_column_space_and_null_space_shapes(self):
        """column_space is rows × rank, null_space is cols × nullity."""
        M = np.array([[1.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
        assert column_space(M).shape == (2, 2)
        assert null_space(M).shape == (3, 1)

    def test_null_space_of_invertible_matrix_is_empty(self):
        """An invertible matrix has a (n, 0) null space."""
        assert null_space(np.eye(3)).shape == (3, 0)

    def test_rank_rejects_vectors(self):
        """A 1-d array raises DimensionError."""
        with pytest.raises(DimensionError):
            rank_and_kernel(np.ones(3))

    def test_negative_tolerance_rejected(self):
        """Tolerances must be nonnegative."""
        with pytest.raises(ValueError):
            Tolerance(abs=-1.0)

    def test_lstsq_residual_inside_and_outside_span(self):
        """Residual is zero inside the span and the distance outside it."""
        basis = np.array([[1.0], [0.0]])
        _, inside = lstsq_residual(basis, np.array([2.0, 0.0]))
        _, outside = lstsq_residual(basis, np.array([0.0, 3.0]))
        assert inside == pytest.approx(0.0, abs=1e-14)
        assert outside == pytest.approx(3.0)


class TestFiniteDifferences:
    """Directional derivatives and mixed partials."""

    def test_directional_derivative_of_sine(self):
        """d/dt sin(t) at 0 is 1."""
        assert directional_derivative(lambda t: np.array([np.sin(t)]))[0] == pytest.approx(1.0, abs=1e-10)

    def test_mixed_partial_of_product(self):
        """∂²(t₁t₂)/∂t₁∂t₂ = 1."""
        value = mixed_partials(lambda ts: np.array([ts[0] * ts[1] + ts[0] ** 3]), 2)
        assert value[0] == pytest.approx(1.0, abs=1e-8)

    def test_mixed_partial_of_order_three(self):
        """∂³(t₁t₂t₃ exp(t₁))/∂t₁∂t₂∂t₃ at 0 is 1."""
        value = mixed_partials(lambda ts: np.array([ts[0] * ts[1] * ts[2] * np.exp(ts[0])]), 3)
        assert value[0] == pytest.approx(1.0, abs=1e-6)

    def test_order_zero_evaluates_function(self):
        """Order 0 returns f at the origin."""
        assert mixed_partials(lambda ts: np.array([7.0]), 0)[0] == 7.0

    def test_order_four_is_unsupported(self):
        """Orders above the stencil limit raise UnsupportedDegreeError."""
        with pytest.raises(UnsupportedDegreeError):
            mixed_partials(lambda ts: np.zeros(1), 4)


class TestFlowAndNewton:
    """RK4 on the semidirect left-invariant field and Newton's method."""

    def test_rk4_with_constant_velocity(self):
        """With U(g) = x the two components both equal exp(x)."""
        x = np.array([[0.0, -0.4], [0.4, 0.0]])
        g, h = rk4_group_flow(x, lambda g_: x, 2, 0.4)
        assert np.allclose(g, mat_exp(x), atol=1e-8)
        assert np.allclose(h, mat_exp(x), atol=1e-8)

    def test_newton_solves_cubic_system(self):
        """Newton recovers a root of a smooth map."""
        F = lambda u: np.array([u[0] ** 3 + u[1], u[1] - 0.5 * u[0]])
        target = F(np.array([0.3, -0.2]))
        u = newton_solve(F, target, np.zeros(2))
        assert np.allclose(F(u), target, atol=1e-11)

    def test_newton_threshold_is_absolute(self):
        """A large target does not loosen the stopping residual."""
        u = newton_solve(lambda u: u**3, np.array([1000.0]), np.array([9.0]), tol=1e-3)
        assert abs(u[0] ** 3 - 1000.0) <= 1e-3

    def test_newton_reports_divergence(self):
        """A map with no solution raises DivergenceError or SingularityError."""
        with pytest.raises((DivergenceError, SingularityError)):
            newton_solve(lambda u: np.array([u[0] ** 2 + 1.0]), np.array([0.0]), np.array([1.0]), max_iter=5)

    def test_default_tolerance_values(self):
        """Default pivot tolerance is 1e-12 absolute, 1e-9 relative."""
        assert DEFAULT_TOLERANCE == Tolerance(abs=1e-12, rel=1e-9)
