import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cflab.errors import ParameterError
from cflab.intervals import IntervalSet, complement_in_window, measure, project_mod


def test_measure_examples():
    assert measure(IntervalSet()) == 0
    assert measure(IntervalSet([(0, 1), (2, 3.5)])) == 2.5
    assert measure(IntervalSet([(-0.5, 0.5)])) == 1


def test_construction_sorts_merges_and_drops_points():
    s = IntervalSet([(2, 3), (0, 1), (1, 1.5), (4, 4), (2.5, 2.7)])
    assert s.intervals == ((0.0, 1.5), (2.0, 3.0))


def test_touching_within_tolerance_is_merged():
    s = IntervalSet([(0, 1), (1 + 5e-13, 2)])
    assert len(s) == 1


def test_project_mod_inside_one_period():
    assert project_mod(IntervalSet([(0.1, 0.4)]), 1.0).intervals == ((0.1, 0.4),)


def test_project_mod_wraps_and_matches_membership_sampling():
    proj = project_mod(IntervalSet([(-0.5, 0.5)]), 2.0)
    assert proj.intervals == ((0.0, 0.5), (1.5, 2.0))
    # point-sampling oracle
    for x in np.linspace(0.01, 1.99, 199):
        expected = any(-0.5 < x + 2.0 * n < 0.5 for n in range(-3, 4))
        if abs(x - 0.5) > 1e-9 and abs(x - 1.5) > 1e-9:
            assert (x in proj) == expected


def test_project_mod_full_cover():
    assert project_mod(IntervalSet([(0, 3)]), 1.0).intervals == ((0.0, 1.0),)


def test_project_mod_rejects_nonpositive_period():
    with pytest.raises(ParameterError):
        project_mod(IntervalSet([(0, 1)]), 0.0)


def test_complement_examples():
    s = IntervalSet([(0, 0.5), (1.5, 2)])
    assert complement_in_window(s, 0, 2).intervals == ((0.5, 1.5),)
    assert complement_in_window(IntervalSet(), 0, 1).intervals == ((0.0, 1.0),)
    assert complement_in_window(IntervalSet([(0, 1)]), 0, 1).intervals == ()


def test_json_round_trip():
    s = IntervalSet([(0, 0.5), (1.5, 2)])
    assert IntervalSet.from_json(s.to_json()) == s


intervals_strategy = st.lists(
    st.tuples(st.floats(-20, 20, allow_nan=False), st.floats(0.01, 5, allow_nan=False)), min_size=0, max_size=6
).map(lambda pairs: IntervalSet([(lo, lo + w) for lo, w in pairs]))


@settings(max_examples=200, deadline=None)
@given(intervals_strategy, st.floats(0.1, 10))
def test_projection_never_increases_measure(s, a):
    proj = project_mod(s, a)
    assert proj.measure <= min(s.measure, a) + 1e-9
    assert all(0 <= lo < hi <= a for lo, hi in proj)


@settings(max_examples=100, deadline=None)
@given(st.floats(-20, 20), st.floats(0.01, 0.9), st.floats(1.0, 5.0))
def test_projection_preserves_measure_when_no_collision(lo, frac, a):
    s = IntervalSet([(lo, lo + frac * a)])
    assert math.isclose(project_mod(s, a).measure, s.measure, rel_tol=1e-9, abs_tol=1e-12)


def _members(s, x):
    inside = np.zeros(x.shape, bool)
    for lo, hi in s:
        inside |= (lo < x) & (x < hi)
    return inside


@settings(max_examples=50, deadline=None)
@given(intervals_strategy, st.floats(0.1, 10), st.integers(0, 2**32 - 1))
def test_projection_membership_oracle(s, a, seed):
    proj = project_mod(s, a)
    x = np.random.default_rng(seed).uniform(0, a, 10_000)
    oracle = np.zeros(x.shape, bool)
    for n in range(math.floor(-30 / a) - 1, math.ceil(30 / a) + 2):
        oracle |= _members(s, x + n * a)
    # points within rounding distance of an endpoint are ambiguous
    ends = np.array([p for iv in proj for p in iv] + [p for iv in s for p in iv])
    if ends.size:
        far = np.min(np.abs(((x[:, None] - ends[None, :]) + 0.5 * a) % a - 0.5 * a), axis=1) > 1e-9
    else:
        far = np.ones(x.shape, bool)
    assert np.array_equal(_members(proj, x)[far], oracle[far])


@settings(max_examples=200, deadline=None)
@given(intervals_strategy, st.floats(-10, 0), st.floats(0.5, 20))
def test_complement_is_an_involution(s, lo, width):
    hi = lo + width
    twice = complement_in_window(complement_in_window(s, lo, hi), lo, hi)
    clipped = s.clip(lo, hi)
    assert math.isclose(twice.measure, clipped.measure, abs_tol=1e-9)
    assert math.isclose(twice.intersection(clipped).measure, clipped.measure, abs_tol=1e-9)
    comp = complement_in_window(s, lo, hi)
    assert math.isclose(comp.measure, width - clipped.measure, abs_tol=1e-9)


def test_projection_of_subnormal_negative_start():
    # lo / a underflows to -0.0, so floor alone leaves the piece below 0
    assert project_mod(IntervalSet([(-5e-324, 1.0)]), 2.0).intervals == ((0.0, 1.0),)
