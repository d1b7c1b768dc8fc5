import numpy as np
import pytest

from pantscurves import _fast
from pantscurves.engine import self_intersection
from pantscurves.words import CurveClass, canonical_words


@pytest.mark.parametrize("n", range(1, 9))
@pytest.mark.parametrize("oriented", [False, True])
def test_vectorised_canonical_words_match_scalar(n, oriented):
    assert _fast.canonical_words_np(n, oriented) == canonical_words(n, oriented)


@pytest.mark.parametrize("n", range(2, 10))
def test_reduced_rows_count(n):
    # cyclically reduced words of length n in a free group of rank 2: 3^n + 2 + (-1)^n
    assert _fast.reduced_rows(n).shape == (3**n + 2 + (-1) ** n, n)


@pytest.mark.parametrize("n", range(2, 9))
def test_vectorised_self_intersection_matches_scalar(n):
    rows = _fast.canonical_rows(n)
    rows = rows[_fast.primitive_mask(rows)]
    words = _fast.rows_to_words(rows)
    values = _fast.self_intersection_rows(rows)
    assert [int(v) for v in values] == [self_intersection(CurveClass(w)) for w in words]


def test_primitive_mask():
    rows = np.array([[0, 2, 0, 2], [0, 2, 0, 3], [0, 0, 0, 0]], dtype=np.uint8)
    assert _fast.primitive_mask(rows).tolist() == [False, True, False]


def test_length_limits():
    with pytest.raises(ValueError):
        _fast.canonical_rows(32)
    with pytest.raises(ValueError):
        _fast.self_intersection_rows(np.zeros((1, 16), dtype=np.uint8))
