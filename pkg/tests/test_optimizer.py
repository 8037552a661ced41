import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pwbounds.errors import DomainError
from pwbounds.objective import ep
from pwbounds.sequences import FamilyT, SeparationParams, validate_membership
from pwbounds.verify.optimizer import (
    GridProblem,
    Mode,
    OptimizerConfig,
    ascent_search,
    brute_force_sup,
    coordinate_ascent,
    exhaustive_search,
    lattice_sequences,
)

D_LOW = SeparationParams(2 / math.pi, 2 / 3)


def _problem(p, n=3, h=0.05, d=D_LOW, **kw):
    return GridProblem(p, d, OptimizerConfig(n, h, **kw))


@pytest.mark.parametrize("p", [2.5, 3.0, 4.5])
def test_dynamic_programme_matches_enumeration(p):
    d = D_LOW if p <= 4 else SeparationParams(0.5, 0.6)
    prob = _problem(p, d=d)
    best_val, best_idx = -math.inf, None
    for idx in lattice_sequences(prob):
        v = prob.objective(idx)
        if v > best_val:
            best_val, best_idx = v, idx
    idx, val = exhaustive_search(prob)
    assert idx == best_idx
    assert val == best_val


@pytest.mark.parametrize("p", [2.5, 4.5])
def test_separable_objective_matches_ep(p):
    prob = _problem(p, n=3)
    for idx in list(lattice_sequences(prob))[::97]:
        b = ep(prob.sequence(idx), p)
        assert abs(prob.objective(idx) - b.mid) <= b.width + 1e-10


def test_ascent_reaches_the_exact_optimum_on_a_small_grid():
    prob = _problem(3.0, n=3, restarts=8, mode=Mode.ASCENT)
    assert ascent_search(prob)[1] == pytest.approx(exhaustive_search(prob)[1], abs=1e-12)


@given(st.integers(0, 2**16))
@settings(max_examples=10, deadline=None)
def test_ascent_never_leaves_the_lattice(seed):
    prob = _problem(3.0, n=3)
    rng = np.random.default_rng(seed)
    from pwbounds.verify.optimizer import _random_start

    start = _random_start(rng, prob)
    idx, val = coordinate_ascent(prob, start)
    assert val >= prob.objective(start) - 1e-15
    assert all(lo <= i <= hi for i, lo, hi in zip(idx, prob.lo, prob.hi))
    assert all(b - a >= prob.gap for a, b in zip(idx, idx[1:]))


def test_brute_force_output_is_feasible():
    tau, val = brute_force_sup(3.0, D_LOW, OptimizerConfig(3, 0.05))
    assert validate_membership(tau, FamilyT(D_LOW))
    assert val.lo > 0


def test_empty_grid():
    with pytest.raises(DomainError, match="empty feasible grid"):
        _problem(3.0, h=0.3, d=SeparationParams(0.9, 1.0), span=0.0)


@pytest.mark.parametrize("kw", [dict(n_explicit=1, grid_step=0.1), dict(n_explicit=3, grid_step=0.0),
                                dict(n_explicit=3, grid_step=0.1, restarts=0)])
def test_config_validation(kw):
    with pytest.raises(DomainError):
        OptimizerConfig(**kw)


def test_mode_parses_strings():
    assert OptimizerConfig(3, 0.1, mode="ascent").mode is Mode.ASCENT
