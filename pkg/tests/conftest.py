"""Shared fixtures: fixture paths, loaded operators and an exact-arithmetic rank oracle."""

from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

from rbolab.loaders import load_operator

FIXTURES = Path(__file__).parent / "fixtures"


def exact_rank(matrix, max_denominator: int = 10**6) -> int:
    """Rank by Gaussian elimination over the rationals after rounding entries to nearby fractions."""
    rows = [[Fraction(float(x)).limit_denominator(max_denominator) for x in row] for row in np.asarray(matrix)]
    rank = 0
    n_cols = len(rows[0]) if rows else 0
    for col in range(n_cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col] != 0:
                factor = rows[r][col] / rows[rank][col]
                rows[r] = [a - factor * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@pytest.fixture
def fixtures_dir():
    return FIXTURES


@pytest.fixture
def rank_oracle():
    """Exact rational rank of a float matrix with small-denominator entries."""
    return exact_rank


@pytest.fixture
def up2_scaling():
    return load_operator(FIXTURES / "ex_up2_scaling.json")


@pytest.fixture
def euclidean2():
    return load_operator(FIXTURES / "euclidean2.json")


@pytest.fixture
def euclidean3():
    return load_operator(FIXTURES / "euclidean3.json")


@pytest.fixture
def so3_minus_id():
    return load_operator(FIXTURES / "so3_minus_id.json")


@pytest.fixture
def so3_zero():
    return load_operator(FIXTURES / "so3_zero.json")


@pytest.fixture
def gl2_triangular():
    return load_operator(FIXTURES / "gl2_triangular.json")
