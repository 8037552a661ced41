import math

import pytest

from pwbounds.errors import DomainError
from pwbounds.objective import ep_truncated
from pwbounds.sequences import ZeroSequence
from pwbounds.verify.appendix import (
    CASES,
    GridSpec,
    appendix_margin,
    appendix_terms,
    final_high_inequality,
    final_high_inequality_printed,
    lemma_a3_value,
    sweep_appendix,
)


def _objective_gain(p, k, pattern, n_terms=14):
    """pi^2 (E(gamma^r) - E(tau^r)) for tau = maximizer prefix + pattern + unit steps, gamma its postponement at k."""
    tau = [n - 1 + 2 / p for n in range(1, k + 1)] + list(pattern)
    while len(tau) < n_terms:
        tau.append(tau[-1] + 1)
    gamma = tau[:k] + [t + 1 for t in tau[k - 1:-1]]
    r = pattern[-1]
    return math.pi**2 * (ep_truncated(ZeroSequence(tuple(gamma)), p, r) - ep_truncated(ZeroSequence(tuple(tau)), p, r))


def _pattern_a(xi, p, y):
    return [xi + y, xi + y + 2 / 3, xi + 2 - 2 / p, xi + 3 - 2 / p]


def _pattern_b(xi, p):
    return [xi - 1 / 3 + 2 / p, xi + 1 - 2 / p, xi + 2 - 2 / p]


COMBOS = {
    "case1": lambda t: t["I1_signed"] - t["I2"] + t["I31"] + t["I32"] - t["I4"],
    "case2": lambda t: t["I2"] + t["I4"] - t["I1"] - t["I3"],
    "case3a": lambda t: t["J1"] + t["J2"] + t["J3"] - t["J4"],
    "case3b": lambda t: t["J1"] + t["J2"] + t["J3"] - t["J4"],
}


@pytest.mark.parametrize("case, p, k, y", [
    ("case1", 3.5, 3, 0.3), ("case1", 3.3, 2, 0.25), ("case1", 3.8, 4, 0.3),
    ("case2", 3.5, 3, 0.5), ("case2", 3.9, 2, 0.5),
    ("case3a", 3.5, 3, 0.42), ("case3a", 3.2, 2, 0.36), ("case3b", 3.5, 3, 0.36),
])
def test_case_integrals_match_objective_difference(case, p, k, y):
    terms = appendix_terms(case, float(k), p, y)
    assert COMBOS[case](terms) == pytest.approx(_objective_gain(p, k, _pattern_a(k, p, y)), abs=1e-9)


@pytest.mark.parametrize("p, k", [(3.7, 3), (3.95, 5)])
def test_case4_integrals_match_objective_difference(p, k):
    t = appendix_terms("case4", float(k), p)
    assert t["I21"] + t["I22"] - t["I1"] - t["I3"] == pytest.approx(_objective_gain(p, k, _pattern_b(k, p)), abs=1e-9)


def test_lemma_a3_values():
    assert lemma_a3_value(3.0) == pytest.approx(21 * math.pi / 50, abs=1e-12)
    assert lemma_a3_value(4.0) == pytest.approx(-math.sqrt(3) / 2 + 0.56 * math.pi, abs=1e-12)
    assert appendix_margin("lemma_a3", None, 4.0) == pytest.approx(0.893, abs=5e-4)


def test_case1_spot_value_positive():
    assert appendix_margin("case1", 1.0, 3.5, 0.3) > 0


def test_typeset_final_inequality_is_negative_but_corrected_one_holds():
    assert final_high_inequality_printed(4.001) < -0.05
    assert final_high_inequality(4.001) > 0


@pytest.mark.parametrize("case, xi, p, y", [
    ("case1", 1.0, 2.9, 0.3),
    ("case1", 1.0, 3.5, 0.4),
    ("case4", 2.0, 3.5, None),
    ("lemma_a3", None, 4.2, None),
])
def test_outside_box_raises(case, xi, p, y):
    with pytest.raises(DomainError):
        appendix_margin(case, xi, p, y)


def test_unknown_case():
    with pytest.raises(DomainError, match="unknown appendix case"):
        appendix_margin("case9", 1.0, 3.5, 0.3)


def test_single_point_grid():
    rep = sweep_appendix("case1", GridSpec(points=((2.0, 3.5, 0.3),)))
    assert rep.samples == 1 and rep.passed


def test_a3_sweep_minimum_is_interior():
    rep = sweep_appendix("lemma_a3", GridSpec(n_p_closed=1000, refine=0))
    assert rep.passed and rep.samples == 1000
    assert 3.0 < rep.witness["p"] < 4.0


@pytest.mark.parametrize("case", ["case1", "case3b", "eq_4to5final"])
def test_small_sweeps_pass(case):
    rep = sweep_appendix(case, GridSpec(xi_values=(1.0, 3.0, 50.0), n_p=4, n_y=3, n_p_closed=50, refine=8), rng_seed=3)
    assert rep.passed and rep.min_margin > 0


def test_cases_registry_is_documented():
    for spec in CASES.values():
        assert spec.description
