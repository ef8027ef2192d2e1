import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from rockeropt.errors import DimensionError, ParameterError
from rockeropt.model import (
    DESIGN_FIELDS,
    BoundsSet,
    DesignVector,
    FitnessWeights,
    InitStrategy,
    ScenarioParams,
    SoilParams,
    clamp,
    default_bounds,
    from_design,
    initial_point,
    to_design,
)

B = default_bounds()

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False)
vectors = st.lists(finite, min_size=10, max_size=10)


def test_default_bounds_rows():
    assert B.lower == (100, 100, 100, 90, 100, 100, 100, 20, 50, 1)
    assert B.upper == (500, 300, 200, 180, 200, 300, 300, 100, 500, 5)
    assert B.ndim == 10
    assert all(lo < hi for lo, hi in zip(B.lower, B.upper))


def test_gear_ratio_bounds():
    i = DESIGN_FIELDS.index("gear_j")
    assert (B.lower[i], B.upper[i]) == (1, 5)


def test_bounds_reject_empty_interval():
    with pytest.raises(ValueError):
        BoundsSet((0.0, 1.0), (1.0, 1.0))


def test_clamp_examples():
    x = np.array(B.lower) + 1.0
    np.testing.assert_array_equal(clamp(x, B), x)
    x[0] = 900.0
    assert clamp(x, B)[0] == 500.0


def test_clamp_length_mismatch():
    with pytest.raises(DimensionError):
        clamp([1.0] * 9, B)


@given(vectors)
def test_clamp_idempotent_and_inside(x):
    once = clamp(x, B)
    np.testing.assert_array_equal(clamp(once, B), once)
    assert np.all(once >= B.lower_array) and np.all(once <= B.upper_array)


@given(vectors, vectors)
def test_clamp_monotone(a, b):
    lo = np.minimum(a, b)
    hi = np.maximum(a, b)
    assert np.all(clamp(lo, B) <= clamp(hi, B))


def test_initial_point_fixed_strategies():
    rng = np.random.default_rng(0)
    lo = initial_point(InitStrategy.LOWER_BOUND, B, rng)
    hi = initial_point(InitStrategy.UPPER_BOUND, B, rng)
    mid = initial_point(InitStrategy.MEAN, B, rng)
    np.testing.assert_array_equal(lo, B.lower)
    np.testing.assert_array_equal(hi, B.upper)
    np.testing.assert_array_equal(mid, (lo + hi) / 2)
    assert mid[0] == 300.0


def test_initial_point_random_reproducible():
    a = initial_point("Random", B, np.random.default_rng(7))
    b = initial_point("Random", B, np.random.default_rng(7))
    np.testing.assert_array_equal(a, b)
    assert np.all(a >= B.lower_array) and np.all(a <= B.upper_array)


def test_initial_point_random_seeds_differ():
    same = 0
    for seed in range(100):
        a = initial_point("Random", B, np.random.default_rng(seed))
        b = initial_point("Random", B, np.random.default_rng(seed + 1000))
        same += np.array_equal(a, b)
    assert same == 0


@given(vectors)
def test_design_round_trip(x):
    np.testing.assert_array_equal(from_design(to_design(x)), np.asarray(x, dtype=float))


def test_to_design_order():
    d = to_design(B.lower)
    assert d.x_r == 100 and d.gamma_rb == 90 and d.gear_j == 1
    assert tuple(d.to_dict()) == DESIGN_FIELDS


def test_to_design_length():
    with pytest.raises(DimensionError):
        to_design([1.0] * 11)


def test_json_round_trips():
    d = to_design(B.upper)
    assert DesignVector.from_dict(d.to_dict()) == d
    assert BoundsSet.from_dict(B.to_dict()) == B
    w = FitnessWeights()
    assert FitnessWeights.from_dict(w.to_dict()) == w
    s = ScenarioParams()
    assert ScenarioParams.from_dict(s.to_dict()) == s


def test_default_weights():
    assert FitnessWeights().as_tuple() == (-2, -2, 2, 1, 5, -3, 2, -1, -1)


def test_weights_must_be_finite():
    with pytest.raises(ValueError):
        FitnessWeights(w1=float("nan"))


@pytest.mark.parametrize("field, value", [
    ("n_exp", 3.0), ("n_exp", 0.0), ("mu", 0.0),
])
def test_soil_validation(field, value):
    with pytest.raises(ParameterError):
        SoilParams(**{field: value})


@pytest.mark.parametrize("field, value", [
    ("wheel_diameter", 0.0), ("rover_mass", -1.0), ("torque_const", 0.0), ("obstacle_h", -1.0),
])
def test_scenario_validation(field, value):
    with pytest.raises(ParameterError):
        ScenarioParams(**{field: value})


def test_scenario_alpha_length():
    with pytest.raises((ParameterError, DimensionError)):
        ScenarioParams(alpha=(1.0, 2.0))


@settings(max_examples=50)
@given(st.integers(min_value=0, max_value=2**32))
def test_random_init_within_bounds(seed):
    x = initial_point(InitStrategy.RANDOM, B, np.random.default_rng(seed))
    assert np.all(x >= B.lower_array) and np.all(x <= B.upper_array)
