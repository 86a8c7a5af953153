"""Tests for matrix groups, group actions and Rota-Baxter operators on groups."""

from pathlib import Path

import numpy as np
import pytest

from rbolab.group import (
    DomainEscapeError,
    GroupAction,
    GroupCochain,
    MatrixGroup,
    RegistryError,
    SemidirectGroup,
    check_descendent_group,
    check_group_action,
    check_group_rbo,
    check_group_rbo_hom,
    check_theta_action,
    d_squared,
    dag,
    graph_subgroup_check,
    group_by_name,
    group_cochain_differential,
    operator_by_name,
    sample_elements,
    sample_tuples,
    star,
    theta_group_action,
    theta_linearized,
)
from rbolab.group.registry import OPERATOR_NAMES
from rbolab.kernel import DimensionError
from rbolab.loaders import load_group

FIXTURES = Path(__file__).parent / "fixtures"


def split(h, n):
    """Rotation block and translation column of a Euclidean element."""
    return h[:n, :n], h[:n, n]


def euclidean_element(A, alpha):
    n = A.shape[0]
    out = np.eye(n + 1)
    out[:n, :n] = A
    out[:n, n] = alpha
    return out


def euclidean_theta(n):
    """Θ(h) on 𝔢(n) coordinates: rotations fixed, translations multiplied by A."""
    rotations = n * (n - 1) // 2

    def theta(h):
        M = np.eye(rotations + n)
        M[rotations:, rotations:] = h[:n, :n]
        return M

    return theta


@pytest.fixture
def euclidean3_group_operator():
    return operator_by_name("euclidean(3)")


class TestMatrixGroup:
    """Coordinates, exp/log and the adjoint matrix."""

    def test_exp_log_roundtrip(self):
        """log(exp(x)) = x on a small ball."""
        G = group_by_name("so3")
        x = np.array([0.2, -0.1, 0.3])
        assert np.allclose(G.log(G.exp(x)), x, atol=1e-12)

    def test_so3_adjoint_is_the_rotation(self):
        """In the cross-product basis Ad_R = R."""
        G = group_by_name("so(3)")
        R = G.exp([0.3, 0.2, -0.4])
        assert np.allclose(G.Ad(R), R, atol=1e-12)

    def test_vector_group_is_additive(self):
        """exp on a vector group is I + hat and products add coordinates."""
        V = group_by_name("vectors(2)")
        a, b = V.exp([1.0, 2.0]), V.exp([-3.0, 0.5])
        assert np.allclose(V.log(a @ b), [-2.0, 2.5])

    def test_dependent_basis_rejected(self):
        """A linearly dependent basis fails validation."""
        E = np.array([[0.0, 1.0], [0.0, 0.0]])
        with pytest.raises(DimensionError):
            MatrixGroup("dup", (E, 2.0 * E)).validate()

    def test_loaded_group_descriptors(self):
        """Explicit and registry descriptors both load."""
        explicit = load_group(FIXTURES / "group_so3.json")
        registry = load_group(FIXTURES / "group_euclidean2.json")
        assert explicit.dim == 3 and explicit.ambient_dim == 3
        assert registry.name == "euclidean(2)"

    @pytest.mark.parametrize("name", ["so3", "so(3)", "euclidean(2)", "euclidean3", "up2", "gl(2)", "vectors(2)"])
    def test_registry_groups(self, name):
        """Registry names resolve to valid groups."""
        group_by_name(name).validate()

    @pytest.mark.parametrize("name", ["sl(2)", "euclidean(1)", "so(4)"])
    def test_unknown_groups(self, name):
        """Unknown names raise RegistryError."""
        with pytest.raises(RegistryError):
            group_by_name(name)

    def test_samples_are_seeded_and_inside_the_ball(self):
        """The same seed gives the same samples, all within the radius."""
        G = group_by_name("euclidean(2)")
        first = sample_elements(G, 10, 0.3, seed=5)
        second = sample_elements(G, 10, 0.3, seed=5)
        assert all(np.array_equal(a, b) for a, b in zip(first, second))
        assert all(G.log_norm(g) <= 0.3 + 1e-9 for g in first)
        assert len(sample_tuples(G, 4, 3)) == 4


class TestGroupOperators:
    """The group identity and its consequences on registry operators."""

    @pytest.mark.parametrize("name", OPERATOR_NAMES)
    def test_registry_operators_pass(self, name):
        """Every registry operator satisfies the group identity."""
        o = operator_by_name(name)
        report = check_group_rbo(o, samples=50)
        assert report.passed, report.details

    def test_euclidean_identity_residual(self, euclidean3_group_operator):
        """𝓑(A, α) = (I, −Aᵀα) passes on 100 samples with residual ≤ 1e-10."""
        report = check_group_rbo(euclidean3_group_operator, samples=100, tol=1e-10)
        assert report.passed
        assert report.skipped == 0

    def test_euclidean_star_and_dag_closed_forms(self, euclidean3_group_operator):
        """(A,α)⋆(C,β) = (AC, ACAᵀα + Aβ) and (A,α)^† = (Aᵀ, −(Aᵀ)²α)."""
        o = euclidean3_group_operator
        h1, h2 = sample_tuples(o.H, 1, 2, 0.5, seed=11)[0]
        A, alpha = split(h1, 3)
        C, beta = split(h2, 3)
        expected = euclidean_element(A @ C, A @ C @ A.T @ alpha + A @ beta)
        assert np.allclose(star(o, h1, h2), expected, atol=1e-12)
        assert np.allclose(dag(o, h1), euclidean_element(A.T, -A.T @ A.T @ alpha), atol=1e-12)

    def test_euclidean_theta_closed_form(self, euclidean3_group_operator):
        """Θ((A,α))((C,β)) = (C, CACᵀβ)."""
        o = euclidean3_group_operator
        h, g = sample_tuples(o.H, 1, 2, 0.5, seed=12)[0]
        A, _ = split(h, 3)
        C, beta = split(g, 3)
        assert np.allclose(theta_group_action(o, h, g), euclidean_element(C, C @ A @ C.T @ beta), atol=1e-12)

    def test_euclidean_theta_linearization(self):
        """Θ((A,α)) acts on 𝔤 as (x, u) ↦ (x, Au)."""
        o = operator_by_name("euclidean(2)")
        h = sample_elements(o.H, 1, 0.4, seed=13)[0]
        assert np.allclose(theta_linearized(o, h), euclidean_theta(2)(h), atol=1e-8)

    def test_euclidean_structures(self, euclidean3_group_operator):
        """Graph subgroup, descendent group, Θ and Φ checks pass for e(3)."""
        o = euclidean3_group_operator
        for report in (
            graph_subgroup_check(o, 50),
            check_descendent_group(o, 50),
            check_theta_action(o, 50),
            check_group_action(o.action, 50),
        ):
            assert report.passed, report.name

    def test_gl_block_domain(self):
        """Arguments outside the radius-1 ball raise DomainEscapeError."""
        o = operator_by_name("gl_block(1,1)")
        far = o.H.exp([2.0, 0.0, 0.0, 0.0])
        with pytest.raises(DomainEscapeError):
            o(far)

    def test_gl_block_is_inverse_lower_factor(self):
        """𝓑(g)⁻¹ is lower unipotent and g·𝓑(g) is upper triangular."""
        o = operator_by_name("gl_block(1,1)")
        g = o.H.exp([0.1, 0.2, -0.3, 0.05])
        b = o(g)
        assert b[0, 1] == 0.0 and b[0, 0] == 1.0 and b[1, 1] == 1.0
        assert abs((g @ b)[1, 0]) <= 1e-12

    def test_so3_inverse_operator(self):
        """𝓑(h) = h⁻¹ with Ad passes the descendent group checks."""
        assert check_descendent_group(operator_by_name("so3_inverse"), 30).passed

    def test_unknown_operator(self):
        """Unknown operator names raise RegistryError."""
        with pytest.raises(RegistryError):
            operator_by_name("heisenberg")


class TestActionsAndSemidirect:
    """Group actions and the semidirect exponential."""

    def test_linear_action_needs_vector_group(self):
        """Linear actions are only defined on vector groups."""
        G = group_by_name("so3")
        with pytest.raises(DimensionError):
            GroupAction.linear(G, G, lambda g: g)

    def test_adjoint_closed_form_matches_flow(self):
        """EXP of so(3) ⋉_Ad so(3) agrees with the RK4 flow to 1e-8."""
        G = group_by_name("so3")
        semi = SemidirectGroup(GroupAction.adjoint(G))
        x, u = np.array([0.2, -0.1, 0.25]), np.array([0.1, 0.3, -0.2])
        closed, flowed = semi.EXP(x, u), semi.flow(x, u)
        assert np.allclose(closed[0], flowed[0], atol=1e-8)
        assert np.allclose(closed[1], flowed[1], atol=1e-8)

    def test_linear_closed_form_matches_flow(self):
        """The quadrature form on a vector group agrees with the flow."""
        o = operator_by_name("up2")
        semi = SemidirectGroup(o.action)
        x, u = np.array([0.3, 0.2, -0.1]), np.array([0.4])
        closed, flowed = semi.EXP(x, u), semi.flow(x, u)
        assert np.allclose(closed[1], flowed[1], atol=1e-8)

    def test_semidirect_inverse(self):
        """a·a⁻¹ is the identity pair."""
        G = group_by_name("euclidean(2)")
        semi = SemidirectGroup(GroupAction.adjoint(G))
        g, h = sample_tuples(G, 1, 2, 0.4)[0]
        product = semi.multiply((g, h), semi.inverse((g, h)))
        assert np.allclose(product[0], np.eye(3)) and np.allclose(product[1], np.eye(3))


class TestGroupCochains:
    """The differential of smooth cochains on (H, ⋆)."""

    def test_degree_one_differential(self):
        """dc(h) = Θ(h)c − c for a constant."""
        o = operator_by_name("euclidean(2)")
        theta = euclidean_theta(2)
        c = np.array([1.0, 2.0, -1.0])
        dF = group_cochain_differential(o, GroupCochain.constant(c), theta=theta)
        h = sample_elements(o.H, 1, 0.3, seed=2)[0]
        assert np.allclose(dF(h), theta(h) @ c - c)

    def test_d_squared_vanishes(self):
        """d²F = 0 at 20 random triples for a degree-2 cochain."""
        o = operator_by_name("euclidean(2)")
        M = np.arange(9.0).reshape(3, 3) / 10.0
        F = GroupCochain(2, lambda hs: M @ o.H.log(hs[0]) + np.trace(hs[0]) * np.ones(3))
        for triple in sample_tuples(o.H, 20, 3, 0.3, seed=3):
            assert d_squared(o, F, triple, theta=euclidean_theta(2)) < 1e-8

    def test_arity_enforced(self):
        """A cochain called with the wrong number of arguments raises."""
        with pytest.raises(DimensionError):
            GroupCochain.constant(np.zeros(3))(np.eye(3))


class TestGroupHomomorphisms:
    """Homomorphisms of group operators."""

    def test_conjugation_by_rotation(self):
        """Conjugation by a fixed rotation is an automorphism of the Euclidean operator."""
        o = operator_by_name("euclidean(2)")
        R = o.G.exp([0.7, 0.0, 0.0])
        R_inv = np.linalg.inv(R)

        def conj(g):
            return R @ g @ R_inv

        assert check_group_rbo_hom(conj, conj, o, o, samples=30).passed

    def test_translation_conjugation_fails(self):
        """Conjugation by a translation does not intertwine the operator."""
        o = operator_by_name("euclidean(2)")
        T = o.G.exp([0.0, 1.0, 0.0])
        T_inv = np.linalg.inv(T)

        def conj(g):
            return T @ g @ T_inv

        assert not check_group_rbo_hom(conj, conj, o, o, samples=30).passed
