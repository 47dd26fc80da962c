import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import vertices
from rateregion.polytope import (
    HPolytope,
    RegionEstimate,
    UnboundedError,
    default_directions,
    region_equal,
    remove_redundant,
    slice_2d,
    slice_csv,
    support_function,
    union_support,
)

SQUARE = HPolytope(np.eye(2), np.ones(2))
TRIANGLE = HPolytope(np.ones((1, 2)), np.ones(1))


def test_support_matches_vertex_oracle():
    rng = np.random.default_rng(11)
    for _ in range(30):
        A = rng.uniform(0.1, 1.0, (5, 3))
        b = rng.uniform(0.5, 2.0, 5)
        P = HPolytope(A, b)
        V = vertices(A, b)
        d = rng.standard_normal(3)
        assert support_function(P, d) == pytest.approx((V @ d).max(), abs=1e-9)


def test_unbounded_direction():
    P = HPolytope(np.array([[1.0, 0.0]]), np.array([1.0]))
    with pytest.raises(UnboundedError):
        support_function(P, [0.0, 1.0])


def test_remove_redundant_drops_implied_rows():
    P = HPolytope.from_halfspaces([([1, 0], 1), ([0, 1], 1), ([1, 1], 3)], 2)
    K = remove_redundant(P)
    assert len(K) == 2
    assert region_equal(P, K)[0]


def test_square_vs_triangle():
    ok, dev, worst = region_equal(SQUARE, TRIANGLE)
    assert not ok and dev == pytest.approx(1.0)
    np.testing.assert_allclose(worst, [1.0, 1.0])


def test_default_directions():
    D = default_directions(3, n_random=5, seed=1)
    assert D.shape == (12, 3)
    np.testing.assert_array_equal(D[0], [1, 0, 0])
    np.testing.assert_allclose(np.linalg.norm(D[7:], axis=1), 1.0)
    np.testing.assert_array_equal(D, default_directions(3, n_random=5, seed=1))


def test_union_support_is_max():
    est = RegionEstimate([SQUARE, TRIANGLE])
    assert union_support(est, [1.0, 1.0]) == pytest.approx(2.0)
    assert region_equal(est, SQUARE)[0]


def test_slice_square_and_triangle():
    rows = slice_2d(RegionEstimate([SQUARE]), 0, 1, grid=5)
    assert [r[0] for r in rows] == [0.0, 22.5, 45.0, 67.5, 90.0]
    assert rows[0][1:] == pytest.approx((1.0, 0.0))
    assert rows[2][1:] == pytest.approx((1.0, 1.0))
    assert rows[-1][1:] == pytest.approx((0.0, 1.0))
    tri = slice_2d(RegionEstimate([TRIANGLE]), 0, 1, grid=3)
    assert tri[1][1:] == pytest.approx((0.5, 0.5))
    text = slice_csv(rows)
    assert text.splitlines()[0] == "theta,R_a,R_b"
    assert text.splitlines()[1] == "0.000000,1.000000,0.000000"


def test_slice_symmetric_under_axis_swap():
    P = HPolytope.from_halfspaces([([1, 0], 1), ([0, 1], 0.7), ([1, 1], 1.4)], 2)
    a = slice_2d(RegionEstimate([P]), 0, 1, grid=7)
    b = slice_2d(RegionEstimate([P]), 1, 0, grid=7)
    for (ta, xa, ya), (tb, xb, yb) in zip(a, reversed(b)):
        assert (xa, ya) == pytest.approx((yb, xb), abs=1e-6)


def test_bad_inputs():
    with pytest.raises(ValueError):
        HPolytope(np.eye(2), np.array([1.0, -1.0]))
    with pytest.raises(ValueError):
        region_equal(SQUARE, HPolytope(np.eye(3), np.ones(3)))
    with pytest.raises(ValueError):
        slice_2d(RegionEstimate([SQUARE]), 0, 0)


pos_rows = st.lists(st.tuples(st.floats(0.1, 1.0), st.floats(0.1, 1.0), st.floats(0.2, 2.0)),
                    min_size=1, max_size=6)
direction = st.tuples(st.floats(-1, 1), st.floats(-1, 1))


@settings(max_examples=80, deadline=None)
@given(pos_rows, direction, direction, st.floats(0.0, 3.0))
def test_support_sublinear_and_homogeneous(rows, d1, d2, t):
    P = HPolytope.from_halfspaces([([a, b], c) for a, b, c in rows], 2)
    d1, d2 = np.array(d1), np.array(d2)
    h = lambda d: support_function(P, d)
    assert h(d1 + d2) <= h(d1) + h(d2) + 1e-9
    assert h(t * d1) == pytest.approx(t * h(d1), abs=1e-9)


@settings(max_examples=60, deadline=None)
@given(pos_rows)
def test_remove_redundant_preserves_region(rows):
    P = HPolytope.from_halfspaces([([a, b], c) for a, b, c in rows], 2)
    K = remove_redundant(P)
    assert len(K) <= len(P)
    assert region_equal(P, K, tol=1e-9)[0]
