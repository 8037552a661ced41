import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import simpson_hump
from pwbounds.bounds import HIGH_DELTAS, sup_value_high
from pwbounds.errors import DomainError
from pwbounds.kernel import Regime, midpoint
from pwbounds.objective import (
    RayIndex,
    ep,
    ep_breakdown,
    ep_truncated,
    ray_contribution,
    ray_intervals,
    ray_sum,
    s_local,
)
from pwbounds.quadrature import weighted_hump
from pwbounds.sequences import ZeroSequence
from pwbounds.verify.lemmas import postpone
from pwbounds.verify.sampling import lambda_high, separated_sequence, t2_sequence


def test_sinc_half_line():
    b = ep(ZeroSequence((1.0,)), 2.0)
    assert b.contains(0.5)
    assert b.width < 1e-9


def test_high_maximizer_matches_closed_form():
    lam = lambda_high(5.0, 3)
    assert ep(lam, 5.0).overlaps(sup_value_high(5.0, HIGH_DELTAS), slack=1e-12)


def test_ep_against_direct_simpson():
    # explicit part integrated by Simpson on each positive piece; tail taken from ep itself
    p = 3.0
    tau = ZeroSequence((0.7, 1.6, 2.4))
    total = 0.0
    t = [0.0, *tau.explicit]
    from pwbounds.objective import stripe_pieces

    for n in range(3):
        for a, b, m in stripe_pieces(n, t[n], t[n + 1], p):
            total += simpson_hump(a, b, m, p)
    head = math.fsum(ep_breakdown(tau, p, 2))
    assert head == pytest.approx(total, abs=1e-11)


def test_truncation_below_first_positive_piece_vanishes():
    tau = ZeroSequence((0.7, 1.6))
    r = 1e-9
    assert 0 <= ep_truncated(tau, 3.0, r) <= 9 / 4 * r


def test_truncated_is_monotone_in_r():
    tau = ZeroSequence((0.7, 1.6, 2.5))
    vals = [ep_truncated(tau, 3.0, r) for r in (0.5, 1.0, 2.0, 4.0)]
    assert vals == sorted(vals)
    assert vals[-1] <= ep(tau, 3.0).hi


def test_postponing_pattern_a_increases_truncated_objective():
    p, xi, y = 3.2, 2.0, 0.3
    tau = t2_sequence(p, [(2, "a", y)], 9)
    gamma = postpone(tau, 2)
    r = xi + 3 - 2 / p
    assert ep_truncated(tau, p, r) < ep_truncated(gamma, p, r)


@pytest.mark.parametrize("p", [2.5, 3.0, 3.7])
def test_s_local_low_shape(p):
    xi, n = 2.0, 2
    grid = np.linspace(xi + 1 - 4 / p, xi + 1, 41)
    vals = [s_local(t, xi, n, p, "low") for t in grid]
    assert max(vals) == pytest.approx(vals[0], abs=1e-13)
    lo_grid = np.linspace(xi + 1 - 4 / p, xi + 2 / p, 41)
    m = midpoint(xi, p)
    assert s_local(m, xi, n, p, "low") <= min(s_local(t, xi, n, p, "low") for t in lo_grid) + 1e-13


@pytest.mark.parametrize("p", [4.0, 4.5, 5.5])
def test_s_local_high_peak_at_midpoint(p):
    xi, n = 1.0, 1
    m = midpoint(xi, p)
    grid = np.linspace(xi, xi + 4 / p, 41)
    assert s_local(m, xi, n, p, "high") >= max(s_local(t, xi, n, p, "high") for t in grid) - 1e-13


def test_s_local_range_errors():
    with pytest.raises(DomainError):
        s_local(0.1, 2.0, 2, 3.0, "low")
    with pytest.raises(DomainError):
        s_local(2.5, 2.1, 2, 3.0, "low")


def test_ray_interval_examples():
    low = ray_intervals(RayIndex(1, Regime.LOW), 3.0, 2)
    assert [(iv.xi, iv.end, lvl) for iv, lvl in low] == [
        pytest.approx((1, 5 / 3, 1)), pytest.approx((5 / 3, 7 / 3, 3)), pytest.approx((7 / 3, 3, 5))
    ]
    iv, lvl = ray_intervals(RayIndex(1, Regime.HIGH), 5.0, 0)[0]
    assert (iv.xi, iv.end, lvl) == pytest.approx((0.8, 1.2, 0))
    first = ray_intervals(RayIndex(0, Regime.HIGH), 5.0, 1)
    assert len(first) == 1
    assert (first[0][0].xi, first[0][0].end, first[0][1]) == pytest.approx((0.0, 0.4, 0))


@pytest.mark.parametrize("t1", [0.6, 1.1])
def test_first_high_ray_is_the_first_hump(t1):
    # needs tau_1 >= 1 - 2/p, so the level-1 piece (0.2, 0.6) of the ray stays empty
    tau = ZeroSequence((t1, t1 + 1, t1 + 2))
    a = ray_contribution(tau, RayIndex(0, Regime.HIGH), 5.0)
    assert a.contains(weighted_hump(0.0, 0.4, 0, 5.0), slack=1e-12)


def test_low_ray_can_be_empty():
    tau = ZeroSequence.from_rule(lambda n: n + 0.8, 8)
    a = ray_contribution(tau, RayIndex(3, Regime.LOW), 2.5)
    assert a.hi <= 1e-12


@given(st.integers(0, 10_000), st.sampled_from(["low", "high"]))
@settings(max_examples=8, deadline=None)
def test_ray_sum_equals_objective(seed, regime):
    rng = np.random.default_rng(seed)
    if regime == "low":
        p = float(rng.uniform(2, 4))
        tau = separated_sequence(rng, 4, 1 - 2 / p, max(2 - 4 / p, 0.01), [1.0, 2.0, 3.0, 4.0])
    else:
        p = float(rng.uniform(4, 6))
        tau = separated_sequence(rng, 4, 1 - 4 / p, 1 - 4 / p, [n - 0.5 + 3 / p for n in range(1, 5)])
    if tau is None:
        return
    total, full = ray_sum(tau, p, regime), ep(tau, p)
    assert abs(total.mid - full.mid) <= total.width + full.width


@given(st.floats(2.0, 6.0), st.floats(0.2, 1.0), st.floats(0.5, 1.0))
@settings(max_examples=20, deadline=None)
def test_ep_bracket_positive_and_bounded(p, t1, gap):
    tau = ZeroSequence((t1, t1 + gap, t1 + 2 * gap))
    b = ep(tau, p)
    assert 0 < b.lo <= b.hi
    # E_p never exceeds the integral of 1/(pi x)^2 over (t, inf) plus the level-0 hump
    assert b.hi <= weighted_hump(0.0, 2 / p, 0, p) + 1 / (math.pi**2 * min(t1, 2 / p)) + 1e-9
