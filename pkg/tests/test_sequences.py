import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from pwbounds.errors import DomainError
from pwbounds.sequences import (
    FamilyT1,
    FamilyT2,
    SeparationParams,
    ZeroSequence,
    validate_membership,
    y_max,
)
from pwbounds.verify.sampling import lambda_high, lambda_low, t2_sequence


def test_term_and_tail():
    tau = ZeroSequence((0.5, 1.7), tail_step=0.8)
    assert tau.terms(4) == pytest.approx([0.0, 0.5, 1.7, 2.5, 3.3])
    assert tau.stripe_of(2.0) == 2
    assert tau.stripe_of(1.7) is None
    assert tau.replace(1, 0.6).explicit == (0.6, 1.7)
    assert tau.extended(4).explicit == pytest.approx((0.5, 1.7, 2.5, 3.3))


@pytest.mark.parametrize("terms", [(0.0, 1.0), (1.0, 0.9), (math.nan,), ()])
def test_invalid_sequences(terms):
    with pytest.raises(DomainError):
        ZeroSequence(terms)


def test_low_maximizer_in_T():
    p = 3.0
    assert validate_membership(lambda_low(p, 6), SeparationParams(2 / math.pi, 2 / 3))


def test_first_term_violation_reported():
    rep = validate_membership(ZeroSequence((0.1, 1.1)), SeparationParams(2 / math.pi, 2 / 3))
    assert not rep
    assert rep.index == 1


def test_gap_violation_reported():
    rep = validate_membership(ZeroSequence((1.0, 1.5, 2.5)), SeparationParams(0.5, 0.6))
    assert not rep and rep.index == 1 and "gap" in rep.clause


@pytest.mark.parametrize("p", [3.2, 3.5, 3.9])
def test_low_maximizer_in_T2(p):
    assert validate_membership(lambda_low(p, 6), FamilyT2(p))


def test_t2_pattern_a_is_member():
    p = 3.3
    tau = t2_sequence(p, [(2, "a", 0.4)], 9)
    assert validate_membership(tau, FamilyT2(p))


def test_t2_pattern_b_needs_room_for_the_next_level():
    # clause (ii) at level k+1 needs its interval start xi + 1 - 4/p >= 1
    p = 3.8
    assert validate_membership(t2_sequence(p, [(2, "b", None)], 9), FamilyT2(p))
    assert not validate_membership(t2_sequence(p, [(1, "b", None)], 9), FamilyT2(p))


def test_T1_rejects_terms_above_index():
    rep = validate_membership(ZeroSequence((0.7, 2.1, 3.0)), FamilyT1(3.5))
    assert not rep and rep.clause == "tau_n <= n"


@given(st.floats(3.0, 4.0))
def test_y_max_continuous_choice(p):
    assert y_max(p) == (5 / 6 - 1 / p if p <= 3.6 else 2 / p)


@given(st.floats(4.0, 5.0))
def test_high_maximizer_feasible(p):
    assert validate_membership(lambda_high(p, 5), SeparationParams(0.5, 1 - 2 / p))
