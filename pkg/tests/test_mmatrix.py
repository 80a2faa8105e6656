from __future__ import annotations

import numpy as np
import pytest
from scipy.linalg import eigvalsh

from app.certify.mmatrix import (
    DiagonalScalingNotFoundError,
    build_s_and_find_d,
    build_s_matrix,
    is_m_matrix,
    leading_principal_minors,
)


def test_scalar_case() -> None:
    result = build_s_and_find_d(1, 2.0, np.zeros(1))
    assert result.s.tolist() == [[2.0]]
    assert result.d.tolist() == [1.0]
    assert result.margin == pytest.approx(2.0)


def test_structure_of_s() -> None:
    s = build_s_matrix(3, 2.0, np.array([0.0, 1.0, 0.7]))
    assert s.tolist() == [[2.0, 0.0, 0.0], [0.0, 2.0, -1.0], [0.0, 0.0, 2.0]]


def test_small_platoon_scaling() -> None:
    result = build_s_and_find_d(3, 2.0, np.array([0.0, 1.0, 0.7]))
    assert result.ratio == 1.0
    assert result.margin == pytest.approx(1.5)
    ds = np.diag(result.d) @ result.s
    assert eigvalsh(0.5 * (ds + ds.T)).min() > 0.0


@pytest.mark.parametrize("size", [1, 4, 11])
def test_leading_minors_are_powers_of_alpha(size: int) -> None:
    rng = np.random.default_rng(size)
    s = build_s_matrix(size, 1.7, rng.uniform(0.0, 2.0, size))
    minors = leading_principal_minors(s)
    assert minors == pytest.approx([1.7**k for k in range(1, size + 1)])
    assert is_m_matrix(s)


def test_non_z_matrix_is_not_m_matrix() -> None:
    assert not is_m_matrix(np.array([[1.0, 0.5], [0.0, 1.0]]))


def test_reference_platoon_scaling() -> None:
    k = np.zeros(11)
    k[1:] = 2.0 / np.sqrt(np.arange(1, 11)) * 0.5
    result = build_s_and_find_d(11, 2.0, k)
    assert result.margin > 1e-8
    assert (result.d > 0.0).all()
    assert result.d[-1] == 1.0


def test_search_failure_reports_best_margin() -> None:
    with pytest.raises(DiagonalScalingNotFoundError) as info:
        build_s_and_find_d(60, 1e-3, np.full(60, 10.0))
    assert info.value.best_margin <= 1e-8
    assert info.value.best.s.shape == (60, 60)


def test_alpha_must_be_positive() -> None:
    with pytest.raises(ValueError):
        build_s_and_find_d(2, 0.0, np.zeros(2))
