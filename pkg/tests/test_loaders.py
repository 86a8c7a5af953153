"""Tests for JSON input files."""

import json
from pathlib import Path

import numpy as np
import pytest

from rbolab.loaders import FixtureError, load_algebra, load_group, load_modified_r, load_operator

FIXTURES = Path(__file__).parent / "fixtures"


def write(tmp_path, name, payload):
    path = tmp_path / name
    path.write_text(payload if isinstance(payload, str) else json.dumps(payload))
    return path


class TestLoadOperator:
    """Operator files and their algebra references."""

    def test_catalog_reference(self):
        """A catalog algebra with the adjoint action."""
        o = load_operator(FIXTURES / "euclidean2.json")
        assert o.name == "euclidean2"
        assert o.is_adjoint
        assert o.B.shape == (3, 3)

    def test_file_reference_is_relative(self):
        """``ref`` resolves against the referencing file."""
        o = load_operator(FIXTURES / "up2_minus_id.json")
        assert o.g.dim == 3
        assert o.g.labels == ("E00", "E01", "E11")

    def test_explicit_action(self):
        """A list of φ matrices with distinct g and h."""
        o = load_operator(FIXTURES / "ex_up2_scaling.json")
        assert (o.g.dim, o.h.dim) == (3, 1)
        assert o.phi.mats[0, 0, 0] == 1.0

    def test_zero_action(self):
        """``"phi": "zero"`` gives the trivial action."""
        o = load_operator(FIXTURES / "abelian_zero.json")
        assert not np.any(o.phi.mats)

    @pytest.mark.parametrize(
        "name, message",
        [
            ("malformed.json", "invalid JSON"),
            ("missing.json", "file not found"),
            ("wrong_shape.json", r"expected shape \(3, 3\)"),
        ],
    )
    def test_bad_files(self, name, message):
        """Errors name the file and the problem."""
        with pytest.raises(FixtureError, match=message) as exc:
            load_operator(FIXTURES / name)
        assert name in str(exc.value)

    def test_missing_key(self, tmp_path):
        """A missing B is reported by key."""
        path = write(tmp_path, "noB.json", {"g": {"catalog": "so3"}})
        with pytest.raises(FixtureError, match="missing key 'B'"):
            load_operator(path)

    def test_adjoint_needs_equal_algebras(self, tmp_path):
        """``ad`` with a different h is refused."""
        path = write(tmp_path, "adj.json", {"g": {"catalog": "so3"}, "h": {"catalog": "abelian(3)"}, "phi": "ad", "B": np.zeros((3, 3)).tolist()})
        with pytest.raises(FixtureError, match="adjoint action needs h = g"):
            load_operator(path)

    def test_wrong_action_count(self, tmp_path):
        """φ needs one matrix per basis vector of g."""
        path = write(tmp_path, "phi.json", {"g": {"catalog": "abelian(2)"}, "h": {"catalog": "abelian(1)"}, "phi": [[[0.0]]], "B": [[0.0], [0.0]]})
        with pytest.raises(FixtureError, match="expected 2 matrices"):
            load_operator(path)

    def test_non_finite_entries(self, tmp_path):
        """Infinity in a matrix is refused."""
        path = write(tmp_path, "inf.json", '{"g": {"catalog": "abelian(1)"}, "phi": "zero", "B": [[Infinity]]}')
        with pytest.raises(FixtureError, match="finite"):
            load_operator(path)

    def test_unknown_catalog_name(self, tmp_path):
        """Catalog errors surface as input errors."""
        path = write(tmp_path, "cat.json", {"g": {"catalog": "sp(4)"}, "B": [[0.0]]})
        with pytest.raises(FixtureError, match="catalog"):
            load_operator(path)

    def test_reference_cycle(self, tmp_path):
        """A self-referencing algebra stops at the nesting limit."""
        write(tmp_path, "loop.json", {"ref": "loop.json"})
        path = write(tmp_path, "op.json", {"g": {"ref": "loop.json"}, "B": [[0.0]]})
        with pytest.raises(FixtureError, match="nested too deeply"):
            load_operator(path)


class TestLoadAlgebra:
    """Inline algebra files."""

    def test_inline_brackets(self):
        """Brackets are read as [i, j, [k, c], ...]."""
        a = load_algebra(FIXTURES / "up2_algebra.json")
        assert np.allclose(a.structure[0, 1], [0.0, 1.0, 0.0])
        assert np.allclose(a.structure[1, 0], [0.0, -1.0, 0.0])

    def test_bad_bracket_order(self):
        """i > j is refused."""
        with pytest.raises(FixtureError, match="0 <= i < j"):
            load_algebra(FIXTURES / "bad_bracket.json")


class TestLoadOthers:
    """Modified r-matrices and group descriptors."""

    def test_modified_r(self):
        """R is read as a square matrix on g."""
        r = load_modified_r(FIXTURES / "euclidean2_modified_r.json")
        assert np.allclose(r.R, np.diag([1.0, -1.0, -1.0]))

    def test_registry_group(self):
        """``{"registry": name}`` looks up a built-in group."""
        assert load_group(FIXTURES / "group_euclidean2.json").dim == 3

    def test_explicit_group(self):
        """An explicit basis yields the cross-product structure of so(3)."""
        G = load_group(FIXTURES / "group_so3.json")
        assert G.labels == ("L1", "L2", "L3")
        assert np.allclose(G.algebra.structure[0, 1], [0.0, 0.0, 1.0])

    def test_non_closed_group(self):
        """A basis not closed under commutators is an input error."""
        with pytest.raises(FixtureError, match="algebra_basis"):
            load_group(FIXTURES / "group_not_closed.json")

    def test_unknown_registry_group(self, tmp_path):
        """Unknown registry names are input errors."""
        path = write(tmp_path, "g.json", {"registry": "sl(2)"})
        with pytest.raises(FixtureError, match="registry"):
            load_group(path)
