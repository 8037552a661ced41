import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pwbounds.errors import DomainError
from pwbounds.kernel import (
    Interval,
    LevelInterval,
    Regime,
    check_exponent,
    is_level_start,
    kernel_value,
    midpoint,
    next_level_neighbor,
    positivity_intervals,
    regimes,
)
from pwbounds.sequences import ZeroSequence

exponents = st.floats(2.0, 6.0)


def test_regimes_split_at_four():
    assert regimes(3.0) == (Regime.LOW,)
    assert regimes(4.0) == (Regime.LOW, Regime.HIGH)
    assert regimes(5.0) == (Regime.HIGH,)


@pytest.mark.parametrize("p", [1.5, 6.5, math.nan, math.inf])
def test_check_exponent_rejects(p):
    with pytest.raises(DomainError):
        check_exponent(p)


@pytest.mark.parametrize("p", [2.0, 3.0, 4.0, 5.0, 6.0])
def test_level_intervals_have_positive_sine(p):
    for iv in positivity_intervals(2, p, Interval(0.0, 8.0)):
        for t in (0.1, 0.5, 0.9):
            x = iv.lo + t * (iv.hi - iv.lo)
            assert math.sin(0.5 * math.pi * p * (x - 2)) >= -1e-12


@given(exponents, st.integers(0, 6), st.floats(0.0, 10.0), st.floats(0.01, 5.0))
@settings(max_examples=200, deadline=None)
def test_positivity_intervals_disjoint_and_inside(p, n, a, length):
    window = Interval(a, a + length)
    ivs = positivity_intervals(n, p, window)
    for iv in ivs:
        assert window.a <= iv.lo < iv.hi <= window.b
        assert is_level_start(iv.xi, n, p)
    for left, right in zip(ivs, ivs[1:]):
        assert left.hi <= right.lo


@given(exponents, st.integers(0, 6), st.integers(-3, 3))
def test_neighbour_and_midpoint(p, n, k):
    xi = n + 4.0 * k / p
    nb = next_level_neighbor(xi, n, p)
    assert is_level_start(nb.a, n + 1, p)
    assert nb.b - nb.a == pytest.approx(2.0 / p)
    assert midpoint(xi, p) == pytest.approx(0.5 * (xi + 2.0 / p + nb.a))


def test_level_interval_rejects_bad_start():
    with pytest.raises(DomainError):
        LevelInterval(0.3, 0, 3.0)


def test_kernel_value_follows_stripes():
    tau = ZeroSequence((0.5, 1.5))
    p = 3.0
    assert kernel_value(tau, p, 0.25) == pytest.approx(math.sin(1.5 * math.pi * 0.25) / (math.pi * 0.25))
    assert kernel_value(tau, p, 1.0) == pytest.approx(math.sin(1.5 * math.pi * 0.0) / math.pi)
    assert kernel_value(tau, p, 2.0) == pytest.approx(math.sin(1.5 * math.pi * 0.0) / (2 * math.pi), abs=1e-15)
    assert kernel_value(tau, p, 0.5) == 0.0


@pytest.mark.parametrize(
    "n,p,window,expected",
    [
        (0, 2.0, (0.0, 3.0), [(0.0, 1.0), (2.0, 3.0)]),
        (0, 4.0, (0.0, 2.0), [(0.0, 0.5), (1.0, 1.5)]),
        (1, 3.0, (0.0, 2.0), [(0.0, 1 / 3), (1.0, 5 / 3)]),
    ],
)
def test_positivity_interval_examples(n, p, window, expected):
    got = [(iv.lo, iv.hi) for iv in positivity_intervals(n, p, Interval(*window)) if iv.hi - iv.lo > 1e-12]
    assert len(got) == len(expected)
    for g, e in zip(got, expected):
        assert g == pytest.approx(e)


@pytest.mark.parametrize(
    "xi,n,p,expected",
    [(0.0, 0, 3.0, (-1 / 3, 1 / 3)), (0.8, 0, 5.0, (1.0, 1.4)), (0.0, 0, 4.0, (0.0, 0.5))],
)
def test_next_level_neighbor_examples(xi, n, p, expected):
    nb = next_level_neighbor(xi, n, p)
    assert (nb.a, nb.b) == pytest.approx(expected)


def test_midpoint_examples():
    assert midpoint(0.0, 2.0) == pytest.approx(0.0)
    assert midpoint(1.7, 4.0) == pytest.approx(1.95)
    assert midpoint(0.8, 5.0) == pytest.approx(1.1)


def test_kernel_value_examples():
    lam = ZeroSequence((1.0,))
    assert kernel_value(lam, 2.0, 0.5) == pytest.approx(2 / math.pi)
    assert kernel_value(lam, 2.0, 1.0) == 0.0
    # 1.05 < lambda_1 = 1.1 lies on stripe 0, so the level-0 phase applies: sin(2.625 pi) > 0
    lam5 = ZeroSequence((1.1, 2.1))
    assert kernel_value(lam5, 5.0, 1.05) == pytest.approx(math.sin(2.625 * math.pi) / (1.05 * math.pi))
    assert kernel_value(lam5, 5.0, 1.05) > 0
    # on stripe 1 the level-1 sine is negative for x - 1 in (0.4, 0.8)
    assert kernel_value(lam5, 5.0, 1.6) < 0
    with pytest.raises(DomainError):
        kernel_value(lam, 2.0, 0.0)
