import math
import random

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from gradualdrift.stats import betainc, regress, t_cdf, t_sf_two_sided

scipy = pytest.importorskip("scipy")
from scipy import integrate, special, stats  # noqa: E402


def t_two_sided_by_quadrature(t, df):
    """Independent oracle: integrate the Student-t density over the tails."""
    c = math.exp(math.lgamma((df + 1) / 2) - math.lgamma(df / 2)) / math.sqrt(df * math.pi)
    dens = lambda x: c * (1 + x * x / df) ** (-(df + 1) / 2)  # noqa: E731
    tail, _ = integrate.quad(dens, abs(t), math.inf, epsabs=1e-13, epsrel=1e-12)
    return 2 * tail


def test_flat_series():
    r = regress([1, 1, 1, 1, 1])
    assert r.slope == 0 and r.p_value == 1.0 and not r.significant()


def test_exact_line():
    r = regress([1.0, 0.9, 0.8, 0.7, 0.6])
    assert r.slope == pytest.approx(-0.1, abs=1e-15)
    assert r.p_value == 0.0 and r.t_stat is None and r.significant()


def test_single_drop_is_not_significant():
    r = regress([1, 1, 1, 1, 0.75])
    assert r.slope == -0.05
    assert r.t_stat == pytest.approx(-math.sqrt(3), abs=1e-12)
    assert r.p_value == pytest.approx(0.18169011381620928, abs=1e-12)
    assert r.p_value == pytest.approx(t_two_sided_by_quadrature(r.t_stat, 3), abs=1e-9)
    assert not r.significant(0.05)


@pytest.mark.parametrize("series, p", [
    ([1, 1, 1, 0.75, 0.75], 0.0577),
    ([1, 1, 0.75, 0.75, 0.5], 0.0154),
])
def test_step_series(series, p):
    assert regress(series).p_value == pytest.approx(p, abs=1e-4)


def test_two_points():
    assert regress([1, 0]).p_value == 0.0
    assert regress([1, 1]).p_value == 1.0


def test_too_short():
    with pytest.raises(ValueError):
        regress([1])


def test_betainc_matches_scipy():
    rng = random.Random(11)
    for _ in range(300):
        a, b, x = rng.uniform(0.1, 60), rng.uniform(0.1, 60), rng.random()
        assert betainc(a, b, x) == pytest.approx(special.betainc(a, b, x), abs=1e-12)
    assert betainc(2, 3, 0) == 0 and betainc(2, 3, 1) == 1
    with pytest.raises(ValueError):
        betainc(0, 1, 0.5)


def test_t_tail_matches_quadrature():
    rng = random.Random(5)
    for _ in range(200):
        df = rng.randint(1, 300)
        t = rng.uniform(-12, 12)
        assert abs(t_sf_two_sided(t, df) - t_two_sided_by_quadrature(t, df)) < 1e-6


def test_t_cdf_matches_scipy():
    for df in (1, 2, 5, 30, 200):
        for t in (-5, -1.3, 0, 0.7, 4):
            assert t_cdf(t, df) == pytest.approx(stats.t.cdf(t, df), abs=1e-12)


def test_regression_matches_scipy():
    rng = random.Random(8)
    for _ in range(200):
        n = rng.randint(3, 60)
        ys = [rng.random() for _ in range(n)]
        mine = regress(ys)
        ref = stats.linregress(range(n), ys)
        assert mine.slope == pytest.approx(ref.slope, abs=1e-12)
        assert mine.intercept == pytest.approx(ref.intercept, abs=1e-12)
        assert mine.stderr_slope == pytest.approx(ref.stderr, abs=1e-12)
        assert mine.p_value == pytest.approx(ref.pvalue, abs=1e-10)


series = st.lists(st.floats(0, 1, allow_nan=False), min_size=3, max_size=40)


@settings(max_examples=200, deadline=None)
@given(series)
def test_p_value_matches_quadrature(ys):
    r = regress(ys)
    assume(r.t_stat is not None)
    assert abs(r.p_value - t_two_sided_by_quadrature(r.t_stat, len(ys) - 2)) < 1e-6


@settings(max_examples=200, deadline=None)
@given(series, st.floats(-5, 5, allow_nan=False))
def test_shift_invariance(ys, c):
    a, b = regress(ys), regress([y + c for y in ys])
    assert b.slope == pytest.approx(a.slope, abs=1e-9)
    if a.t_stat is not None and abs(a.t_stat) < 1e6:
        assert b.p_value == pytest.approx(a.p_value, abs=1e-6)


@settings(max_examples=200, deadline=None)
@given(series, st.floats(0.01, 100, allow_nan=False))
def test_scale_equivariance(ys, k):
    a, b = regress(ys), regress([k * y for y in ys])
    assert b.slope == pytest.approx(k * a.slope, rel=1e-7, abs=1e-12)
    if a.t_stat is not None and b.t_stat is not None and abs(a.t_stat) < 1e6:
        assert b.t_stat == pytest.approx(a.t_stat, rel=1e-6)
        assert b.p_value == pytest.approx(a.p_value, abs=1e-6)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 100), st.floats(0, 20), st.floats(0, 20))
def test_tail_decreases_with_t(df, t1, t2):
    lo, hi = sorted((t1, t2))
    assert t_sf_two_sided(hi, df) <= t_sf_two_sided(lo, df) + 1e-15
    assert 0 <= t_sf_two_sided(lo, df) <= 1
