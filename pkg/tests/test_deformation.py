"""Tests for deformations of operators and of modified r-matrices."""

import numpy as np
import pytest

from rbolab.kernel import DimensionError
from rbolab.rbo import (
    DeformationDirection,
    check_deformation,
    coboundary_of,
    deformation_directions,
    deformation_equivalence,
    r_matrix_deformation_bridge,
    to_modified_r,
    weight_zero_residual,
)

T0 = np.array([0.0, 1.0, 0.0])


@pytest.fixture
def translation_coboundary(euclidean2):
    """B̂ = d(T0): L ↦ −T1, translations ↦ 0."""
    return DeformationDirection(coboundary_of(euclidean2, T0), name="dT0")


class TestDeformations:
    """Weight-0 identity, cocycle condition and deformed operators."""

    def test_coboundary_of_translation(self, translation_coboundary):
        """d(T0) sends the rotation to −T1."""
        expected = np.zeros((3, 3))
        expected[2, 0] = -1.0
        assert np.allclose(translation_coboundary.Bhat, expected)

    def test_coboundary_direction_deforms(self, euclidean2, translation_coboundary):
        """B + t·d(T0) is an operator for every sampled t."""
        report = check_deformation(euclidean2, translation_coboundary)
        assert report.passed
        assert weight_zero_residual(euclidean2, translation_coboundary.Bhat) == 0.0

    def test_identity_direction_fails(self, euclidean2):
        """B + t·Id leaves the operator set."""
        report = check_deformation(euclidean2, DeformationDirection(np.eye(3)))
        assert not report.passed

    def test_search_finds_passing_directions(self, euclidean2):
        """Every direction returned by the search passes check_deformation."""
        directions = deformation_directions(euclidean2)
        assert directions
        for d in directions:
            assert check_deformation(euclidean2, d).passed

    def test_vector_layout_roundtrip(self):
        """from_vector inverts vector() with the g coordinate fastest."""
        Bhat = np.arange(6.0).reshape(3, 2)
        d = DeformationDirection(Bhat)
        assert np.allclose(d.vector(), [0.0, 2.0, 4.0, 1.0, 3.0, 5.0])
        assert np.allclose(DeformationDirection.from_vector(d.vector(), 3, 2).Bhat, Bhat)

    def test_shape_checked(self, euclidean2):
        """B̂ must have the shape of B."""
        with pytest.raises(DimensionError):
            check_deformation(euclidean2, DeformationDirection(np.zeros((2, 3))))


class TestEquivalence:
    """Directions in the same cohomology class."""

    def test_coboundary_is_equivalent_to_zero(self, euclidean2, translation_coboundary):
        """d(T0) and 0 differ by the coboundary of T0."""
        zero = DeformationDirection(np.zeros((3, 3)))
        report = deformation_equivalence(euclidean2, translation_coboundary, zero, T0)
        assert report.passed
        assert "auxiliary_residual" in report.details

    def test_wrong_x_fails(self, euclidean2, translation_coboundary):
        """Using the wrong x breaks the coboundary relation but not the class verdict."""
        zero = DeformationDirection(np.zeros((3, 3)))
        report = deformation_equivalence(euclidean2, translation_coboundary, zero, np.array([0.0, 0.0, 1.0]))
        checks = {c["name"]: c["passed"] for c in report.details["checks"]}
        assert checks == {"coboundary": False, "same_class": True}


class TestModifiedRDeformation:
    """R̂ = 2B̂ deforms R = Id + 2B."""

    def test_bridge_agrees(self, euclidean2, translation_coboundary):
        """R + tR̂ solves the equation exactly when B + tB̂ is an operator."""
        r = to_modified_r(euclidean2)
        report = r_matrix_deformation_bridge(r, 2.0 * translation_coboundary.Bhat)
        assert report.passed

    def test_bridge_with_bad_direction(self, euclidean2):
        """A bad direction fails but verdicts still agree."""
        r = to_modified_r(euclidean2)
        report = r_matrix_deformation_bridge(r, 2.0 * np.eye(3))
        assert not report.passed
        checks = {c["name"]: c["passed"] for c in report.details["checks"]}
        assert checks["verdicts_agree"] is True
