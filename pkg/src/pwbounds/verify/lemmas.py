"""Registry of sampled sign checks, one per comparison lemma.

Every check draws parameters from the lemma's hypothesis space with a
seeded generator (serially, so results do not depend on the worker
count), evaluates both sides of the claim and records signed margins.
Comparisons between sequences that agree from some index M on use the
truncated objective at r = tau_M, where the difference is exact; all
other comparisons use the tail brackets of the full objective.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Any, Callable

import numpy as np

from ..errors import DomainError, PWBoundsError
from ..kernel import Regime, midpoint
from ..objective import RayIndex, ep, ep_truncated_with_error, ray_contribution, ray_sum, s_local
from ..parallel import worker_count
from ..quadrature import DEFAULT_SETTINGS, QuadSettings, adaptive_integrate, weighted_hump, weighted_humps
from ..sequences import FamilyT1, FamilyT2, SeparationParams, ZeroSequence, validate_membership, y_max
from .appendix import lemma_a3_value
from .report import Claim, LemmaCheckReport, Sample, membership_sample
from .sampling import first_trigger, lambda_low, sample_chain, t2_sequence

# Strict claims are sampled at least this far from the boundary where they turn into equalities.
GUARD = 1e-2
TAIL_TOL = 1e-12
MAX_DRAW_ATTEMPTS = 200


def _tails_agree_from(tau: ZeroSequence, gamma: ZeroSequence) -> int | None:
    """Smallest M >= 1 with tau_n = gamma_n for all n >= M, or None."""
    if abs(tau.tail_step - gamma.tail_step) > TAIL_TOL:
        return None
    n0 = max(tau.N, gamma.N)
    if abs(tau.term(n0) - gamma.term(n0)) > TAIL_TOL:
        return None
    m = n0
    while m > 1 and abs(tau.term(m - 1) - gamma.term(m - 1)) <= TAIL_TOL:
        m -= 1
    return m


def objective_gap(tau: ZeroSequence, gamma: ZeroSequence, p: float, settings: QuadSettings = DEFAULT_SETTINGS):
    """(E_p(gamma) - E_p(tau), slack)."""
    m = _tails_agree_from(tau, gamma)
    if m is not None:
        r = tau.term(m)
        vg, eg = ep_truncated_with_error(gamma, p, r, settings)
        vt, et = ep_truncated_with_error(tau, p, r, settings)
        return vg - vt, 2.0 * (eg + et + settings.abs_tol)
    bg = ep(gamma, p, settings)
    bt = ep(tau, p, settings)
    return bg.mid - bt.mid, 2.0 * (bg.width + bt.width + settings.abs_tol)


def truncated_gap(tau: ZeroSequence, gamma: ZeroSequence, p: float, r: float, settings: QuadSettings = DEFAULT_SETTINGS):
    """(E_p(gamma^r) - E_p(tau^r), slack) for the vertically truncated sequences."""
    vg, eg = ep_truncated_with_error(gamma, p, r, settings)
    vt, et = ep_truncated_with_error(tau, p, r, settings)
    return vg - vt, 2.0 * (eg + et + settings.abs_tol)


def _seq(terms) -> ZeroSequence:
    return ZeroSequence(tuple(float(t) for t in terms))


def _gap_sample(tau, gamma, p, claim, witness, settings):
    m, slack = objective_gap(tau, gamma, p, settings)
    return Sample(m, slack, claim, dict(witness, check="objective"))


# Replacement maps


def min_with_index(tau: ZeroSequence) -> ZeroSequence:
    """gamma_n = min(tau_n, n)."""
    return _seq([min(tau.term(n), n) for n in range(1, tau.N + 1)])


def min_with_high_maximizer(tau: ZeroSequence, p: float) -> ZeroSequence:
    """gamma_n = min(n - 1/2 + 3/p, tau_n)."""
    return _seq([min(n - 0.5 + 3.0 / p, tau.term(n)) for n in range(1, tau.N + 1)])


def clip_to_level_ends(tau: ZeroSequence, p: float) -> ZeroSequence:
    """gamma_1 = 2/p and gamma_{n+1} = min(tau_{n+1}, xi + 2/p), with xi the level-n start whose
    shifted midpoint window (m_{xi-1}, m_{xi-1} + 4/p] contains tau_n."""
    out = [2.0 / p]
    for n in range(1, tau.N + 1):
        j = math.floor((n - tau.term(n) - 0.5 + 3.0 / p) * p / 4.0)
        xi = n - 4.0 * j / p
        out.append(min(tau.term(n + 1), xi + 2.0 / p))
    return _seq(out)


def postpone(tau: ZeroSequence, keep: int, first: float | None = None) -> ZeroSequence:
    """gamma_n = tau_n for n <= keep, gamma_n = tau_{n-1} + 1 after; ``first`` overrides gamma_1."""
    out = [tau.term(n) for n in range(1, keep + 1)] + [tau.term(n - 1) + 1 for n in range(keep + 1, tau.N + 2)]
    if first is not None:
        out[0] = first
    return _seq(out)


# Hypothesis-space helpers


def _pick_p(rng, p_fixed, lo, hi):
    return float(p_fixed) if p_fixed is not None else float(rng.uniform(lo, hi))


def _chain(rng, lower, upper, gaps, tight=0.15):
    terms = sample_chain(rng, lower, upper, gaps, tight)
    if terms is None or terms[0] <= 0:
        return None
    return terms


def _member(terms, family) -> bool:
    """Draw-time filter: hypotheses that require membership reject samples outside the family."""
    return bool(validate_membership(_seq(terms), family))


@dataclass(frozen=True)
class LemmaSpec:
    lemma_id: str
    statement: str
    default_samples: int
    p_range: tuple[float, float]
    draw: Callable[[np.random.Generator, float | None], Any]
    evaluate: Callable[[dict, QuadSettings], list[Sample]]


REGISTRY: dict[str, LemmaSpec] = {}


def _register(lemma_id, statement, samples, p_range):
    def deco(pair):
        draw, evaluate = pair
        REGISTRY[lemma_id] = LemmaSpec(lemma_id, statement, samples, p_range, draw, evaluate)
        return pair

    return deco


def _level_start(rng, p, n_max=6):
    """A random level n and start xi = n + 4k/p of a positivity interval."""
    n = int(rng.integers(0, n_max + 1))
    k = int(rng.integers(-3, 2))
    return n, n + 4.0 * k / p


# Local comparison quantity, low regime


def _draw_22(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 2.0, 4.0)
    n, xi = _level_start(rng, p)
    if xi < 0 or xi + 1 - 4.0 / p < 0:
        return None
    t = float(rng.uniform(xi + 1 - 4.0 / p, xi + 1))
    return {"p": p, "n": n, "xi": xi, "t": t}


def _eval_22(w, settings):
    p, n, xi, t = w["p"], w["n"], w["xi"], w["t"]
    best = s_local(xi + 1 - 4.0 / p, xi, n, p, "low", settings)
    return [Sample(best - s_local(t, xi, n, p, "low", settings), 4 * settings.abs_tol, Claim.NONNEGATIVE, w)]


_register("2.2", "S(tau_{n+1}) on [xi+1-4/p, xi+1] is largest at xi+1-4/p", 1000, (2.0, 4.0))((_draw_22, _eval_22))


def _draw_23(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 2.0, 4.0)
    n, xi = _level_start(rng, p)
    if xi < 0 or xi + 1 - 4.0 / p < 0:
        return None
    seg = ("decreasing", "increasing", "constant")[int(rng.integers(0, 3))]
    m = midpoint(xi, p)
    lo, hi = {"decreasing": (xi + 1 - 4.0 / p, m), "increasing": (m, xi + 2.0 / p), "constant": (xi + 2.0 / p, xi + 1)}[seg]
    if hi <= lo:
        return None
    t1, t2 = sorted(rng.uniform(lo, hi, 2).tolist())
    return {"p": p, "n": n, "xi": xi, "segment": seg, "t1": t1, "t2": t2}


def _eval_23(w, settings):
    p, n, xi = w["p"], w["n"], w["xi"]
    s1 = s_local(w["t1"], xi, n, p, "low", settings)
    s2 = s_local(w["t2"], xi, n, p, "low", settings)
    slack = 4 * settings.abs_tol
    if w["segment"] == "decreasing":
        return [Sample(s1 - s2, slack, Claim.NONNEGATIVE, w)]
    if w["segment"] == "increasing":
        return [Sample(s2 - s1, slack, Claim.NONNEGATIVE, w)]
    return [Sample(s2 - s1, slack, Claim.ZERO, w)]


_register("2.3", "S decreases up to the midpoint, increases up to xi+2/p, then stays constant", 10_000, (2.0, 4.0))(
    (_draw_23, _eval_23)
)


# Low regime, 2 <= p <= 4


def _draw_31(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 2.0, 4.0)
    d1, d2 = rng.uniform(0.1, 1.0, 2).tolist()
    N = int(rng.integers(3, 11))
    if rng.random() < 0.85:
        caps = [n + float(rng.uniform(0, 0.8)) for n in range(1, N)] + [float(N)]
    else:
        caps = [n + 1.5 for n in range(1, N + 1)]
    terms = _chain(rng, [d1] + [0.0] * (N - 1), caps, [d2] * (N - 1))
    if terms is None:
        return None
    return {"p": p, "delta1": d1, "delta2": d2, "tau": terms}


def _eval_31(w, settings):
    p, d = w["p"], SeparationParams(w["delta1"], w["delta2"])
    tau = _seq(w["tau"])
    gamma = min_with_index(tau)
    return [
        membership_sample(validate_membership(gamma, d), "gamma in T", w),
        _gap_sample(tau, gamma, p, Claim.NONNEGATIVE, w, settings),
    ]


_register("3.1", "gamma_n = min(tau_n, n) stays feasible and does not decrease E_p", 1000, (2.0, 4.0))(
    (_draw_31, _eval_31)
)


def _low_ray_draw(rng, p_fixed, d2_floor):
    p = _pick_p(rng, p_fixed, 2.0, 4.0)
    d1 = float(rng.uniform(1 - 2.0 / p, 1.0))
    lo2 = d2_floor(p)
    d2 = float(rng.uniform(lo2, 1.0)) if lo2 < 1 else 1.0
    N = int(rng.integers(3, 9))
    terms = _chain(rng, [d1] + [0.0] * (N - 1), [float(n) for n in range(1, N + 1)], [d2] * (N - 1))
    if terms is None:
        return None
    return {"p": p, "delta1": d1, "delta2": d2, "tau": terms}


def _draw_32(rng, p_fixed):
    return _low_ray_draw(rng, p_fixed, lambda p: 1 - 2.0 / p)


def _eval_ray_sum(regime):
    def evaluate(w, settings):
        tau = _seq(w["tau"])
        total = ray_sum(tau, w["p"], regime, settings)
        full = ep(tau, w["p"], settings)
        return [Sample(total.mid - full.mid, 2.0 * (total.width + full.width + settings.abs_tol), Claim.ZERO, w)]

    return evaluate


_register("3.2", "E_p equals the sum of the low-regime ray contributions", 200, (2.0, 4.0))(
    (_draw_32, _eval_ray_sum(Regime.LOW))
)


def _draw_33(rng, p_fixed):
    if p_fixed is None and rng.random() < 0.1:
        p_fixed = 4.0
    w = _low_ray_draw(rng, p_fixed, lambda p: 2 - 4.0 / p)
    if w is None:
        return None
    w["k"] = int(rng.integers(0, len(w["tau"])))
    return w


def _eval_33(w, settings):
    p, k = w["p"], w["k"]
    tau = _seq(w["tau"])
    a = ray_contribution(tau, RayIndex(k, Regime.LOW), p, settings)
    cap = weighted_hump(k, k + 2.0 / p, k, p, settings)
    slack = 2.0 * (a.width + settings.abs_tol)
    out = [Sample(cap - a.mid, slack, Claim.NONNEGATIVE, dict(w, check="bound"))]
    t_next = tau.term(k + 1)
    if p == 4.0 or t_next >= k + 2.0 / p:
        out.append(Sample(cap - a.mid, slack, Claim.ZERO, dict(w, check="equality")))
    elif t_next <= k + 2.0 / p - GUARD:
        out.append(Sample(cap - a.mid, slack, Claim.POSITIVE, dict(w, check="strict")))
    return out


_register("3.3", "each low-regime ray carries at most the hump on (k, k+2/p), with equality iff p=4 or tau_{k+1} >= k+2/p",
          1000, (2.0, 4.0))((_draw_33, _eval_33))


# Low regime, 3 < p < 4: the families T1 and T2


def _t1_draw(rng, p, N, lower=None, upper=None, gaps=None):
    """Chain in T(min(2/pi, 2/p), 2/3) with tau_n <= n, optionally with extra per-index bounds."""
    lo = [min(2 / math.pi, 2.0 / p)] + [0.0] * (N - 1)
    hi = [float(n) for n in range(1, N + 1)]
    g = [2.0 / 3.0] * (N - 1) if gaps is None else gaps
    for i, v in (lower or {}).items():
        lo[i - 1] = max(lo[i - 1], v)
    for i, v in (upper or {}).items():
        hi[i - 1] = min(hi[i - 1], v)
    return _chain(rng, lo, hi, g)


def _draw_41(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 3.0, 4.0)
    N = int(rng.integers(3, 10))
    terms = _t1_draw(rng, p, N)
    if terms is None:
        return None
    return {"p": p, "tau": terms}


def _safe(build, w):
    try:
        return build(), None
    except PWBoundsError as exc:
        return None, Sample(-1.0, 0.0, Claim.NONNEGATIVE, dict(w, check="construct gamma", error=str(exc)))


def _eval_41(w, settings):
    p = w["p"]
    tau = _seq(w["tau"])
    gamma, bad = _safe(lambda: clip_to_level_ends(tau, p), w)
    if bad:
        return [bad]
    return [
        membership_sample(validate_membership(gamma, FamilyT1(p)), "gamma in T1", w),
        _gap_sample(tau, gamma, p, Claim.NONNEGATIVE, w, settings),
    ]


_register("4.1", "clipping tau_{n+1} to the end of its level interval stays in T1 and does not decrease E_p",
          1000, (3.0, 4.0))((_draw_41, _eval_41))


def _draw_42(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 3.0, 3.55)
    k = int(rng.integers(1, 7))
    j = int(rng.integers(0, 3))
    xi = k - 4.0 * j / p
    if xi < 1:
        return None
    N = k + 2 + int(rng.integers(0, 4))
    lower = {k + 1: xi + 5 / 6 - 1.0 / p, k + 2: xi + 1.5 - 1.0 / p}
    upper = {k + 1: xi + 2.0 / p - GUARD}
    terms = _t1_draw(rng, p, N, lower, upper)
    if terms is None or not _member(terms, FamilyT1(p)):
        return None
    return {"p": p, "k": k, "xi": xi, "tau": terms}


def _eval_replace(index_of, value_of, family, claim=Claim.POSITIVE):
    def evaluate(w, settings):
        p = w["p"]
        tau = _seq(w["tau"])
        gamma, bad = _safe(lambda: tau.replace(index_of(w), value_of(w, tau)), w)
        if bad:
            return [bad]
        return [
            membership_sample(validate_membership(gamma, family(p)), "gamma in family", w),
            _gap_sample(tau, gamma, p, claim, w, settings),
        ]

    return evaluate


_register("4.2", "for p < 3.6, moving tau_{k+1} from [xi+5/6-1/p, xi+2/p) to xi+2/p strictly increases E_p",
          1000, (3.0, 3.6))(
    (_draw_42, _eval_replace(lambda w: w["k"] + 1, lambda w, tau: w["xi"] + 2.0 / w["p"], FamilyT1))
)


def _non_trigger_lower(p, j, k):
    """tau_n >= (n-1) - 4j/p + 2/p for n <= k, so the first trigger for j is not before k."""
    return {n: n - 1 - 4.0 * j / p + 2.0 / p for n in range(1, k + 1)}


def _draw_43(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 3.6, 3.98)
    j = int(rng.integers(1, 3))
    k = int(rng.integers(1, 8))
    xi = k - 4.0 * j / p
    if xi < 1:
        return None
    N = k + 2 + int(rng.integers(0, 4))
    lower = _non_trigger_lower(p, j, k)
    upper = {k + 1: midpoint(xi, p) - GUARD}
    gaps = [2.0 / 3.0] * (N - 1)
    gaps[k - 1] = 2.0 / 3.0 + GUARD
    terms = _t1_draw(rng, p, N, lower, upper, gaps)
    if terms is None:
        return None
    if first_trigger(_seq(terms), p, j, N) != k or not _member(terms, FamilyT1(p)):
        return None
    return {"p": p, "j": j, "k": k, "xi": xi, "tau": terms}


_register("4.3", "for p > 3.6, a triggered tau_{k+1} below the midpoint is best moved to tau_k + 2/3",
          1000, (3.6, 4.0))(
    (_draw_43, _eval_replace(lambda w: w["k"] + 1, lambda w, tau: tau.term(w["k"]) + 2.0 / 3.0, FamilyT1))
)


def _draw_44(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 3.0, 3.98)
    j = int(rng.integers(0, 3))
    k = int(rng.integers(1, 8))
    xi = k - 4.0 * j / p
    if xi < 1:
        return None
    m = midpoint(xi, p)
    sub = "right" if rng.random() < 0.5 else "left"
    N = k + 3 + int(rng.integers(0, 3))
    lower = _non_trigger_lower(p, j, k)
    lower[k + 1] = m
    upper = {k + 1: xi + 2.0 / p - GUARD}
    gaps = [2.0 / 3.0] * (N - 1)
    if sub == "right":
        lower[k + 2] = m + 1
    else:
        gaps[k] = 2.0 / 3.0 + GUARD
        upper[k + 2] = m + 1 - GUARD
    terms = _t1_draw(rng, p, N, lower, upper, gaps)
    if terms is None:
        return None
    if abs(terms[k + 1] - terms[k] - 2.0 / 3.0) < 1e-9:
        return None
    if first_trigger(_seq(terms), p, j, N) != k or not _member(terms, FamilyT1(p)):
        return None
    return {"p": p, "j": j, "k": k, "xi": xi, "subcase": sub, "tau": terms}


def _index_44(w):
    return w["k"] + 1 if w["subcase"] == "right" else w["k"] + 2


def _value_44(w, tau):
    if w["subcase"] == "right":
        return w["xi"] + 2.0 / w["p"]
    return tau.term(w["k"] + 1) + 2.0 / 3.0


_register("4.4", "a triggered tau_{k+1} past the midpoint is followed by a gap of exactly 2/3 in any maximizer",
          1000, (3.0, 4.0))((_draw_44, _eval_replace(_index_44, _value_44, FamilyT1)))


def _draw_45(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 3.0, 4.0)
    N = int(rng.integers(3, 9))
    slack = 0.0 if rng.random() < 0.5 else 0.5
    caps = [n + slack for n in range(1, N + 1)]
    terms = _chain(rng, [min(2 / math.pi, 2.0 / p)] + [0.0] * (N - 1), caps, [2.0 / 3.0] * (N - 1))
    if terms is None:
        return None
    return {"p": p, "tau": terms}


def _eval_45(w, settings):
    p = w["p"]
    tau = _seq(w["tau"])
    lam = lambda_low(p, max(tau.N, 2))
    return [
        membership_sample(validate_membership(lam, FamilyT2(p)), "lambda in T2", w),
        _gap_sample(tau, lam, p, Claim.NONNEGATIVE, w, settings),
    ]


_register("4.5", "the reduced family T2 contains lambda and nothing in T(min(2/pi,2/p), 2/3) beats it",
          1000, (3.0, 4.0))((_draw_45, _eval_45))


def _random_deviations(rng, p, first_k_max=4, count=None):
    count = count if count is not None else int(rng.integers(1, 3))
    devs = []
    pos = 1
    j = 0
    for _ in range(count):
        k = pos + int(rng.integers(0, first_k_max)) if not devs else pos + int(rng.integers(0, 3))
        if k - 4.0 * j / p < 1:
            k = math.ceil(1 + 4.0 * j / p)
        if p > 3.6 and rng.random() < 0.3:
            devs.append((k, "b", None))
            pos = k + 3
        else:
            y = float(rng.uniform(0.5 - 1.0 / p, y_max(p)))
            devs.append((k, "a", y))
            pos = k + 4
        j += 1
    return devs


def _draw_46(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 3.02, 3.98)
    devs = _random_deviations(rng, p)
    N = devs[-1][0] + 6
    try:
        tau = t2_sequence(p, devs, N)
    except DomainError:
        return None
    if not validate_membership(tau, FamilyT2(p)):
        return None
    return {"p": p, "deviations": [list(d) for d in devs], "tau": list(tau.explicit)}


def _eval_46(w, settings):
    p = w["p"]
    tau = _seq(w["tau"])
    gamma, bad = _safe(lambda: postpone(tau, 0, first=2.0 / p), w)
    if bad:
        return [bad]
    return [
        membership_sample(validate_membership(gamma, FamilyT2(p)), "gamma in T2", w),
        _gap_sample(tau, gamma, p, Claim.POSITIVE, w, settings),
    ]


_register("4.6", "shifting a non-lambda member of T2 one step right strictly increases E_p", 1000, (3.0, 4.0))(
    (_draw_46, _eval_46)
)


def _draw_local(kind):
    def draw(rng, p_fixed):
        lo = 3.02 if kind == "a" else 3.62
        p = _pick_p(rng, p_fixed, lo, 3.98)
        prior = _random_deviations(rng, p, count=int(rng.integers(0, 2))) if rng.random() < 0.5 else []
        pos = 1 if not prior else prior[-1][0] + (4 if prior[-1][1] == "a" else 3)
        j = len(prior)
        k = pos + int(rng.integers(0, 4))
        if k - 4.0 * j / p < 1:
            k = math.ceil(1 + 4.0 * j / p)
        y = float(rng.uniform(0.5 - 1.0 / p, y_max(p))) if kind == "a" else None
        devs = prior + [(k, kind, y)]
        try:
            tau = t2_sequence(p, devs, k + 6)
        except DomainError:
            return None
        if not validate_membership(tau, FamilyT2(p)):
            return None
        xi = k - 4.0 * j / p
        return {"p": p, "k": k, "xi": xi, "y": y, "deviations": [list(d) for d in devs], "tau": list(tau.explicit)}

    return draw


def _eval_local(kind):
    def evaluate(w, settings):
        p, k, xi = w["p"], w["k"], w["xi"]
        tau = _seq(w["tau"])
        gamma, bad = _safe(lambda: postpone(tau, k), w)
        if bad:
            return [bad]
        r = xi + (3 if kind == "a" else 2) - 2.0 / p
        m, slack = truncated_gap(tau, gamma, p, r, settings)
        return [
            membership_sample(validate_membership(gamma, FamilyT2(p)), "gamma in T2", w),
            Sample(m, slack, Claim.POSITIVE, dict(w, check="truncated objective", r=r)),
        ]

    return evaluate


_register("4.7", "postponing a deviation of type (a) by one step increases the objective truncated at xi+3-2/p",
          1000, (3.0, 4.0))((_draw_local("a"), _eval_local("a")))
_register("4.8", "for p > 3.6, postponing a deviation of type (b) increases the objective truncated at xi+2-2/p",
          1000, (3.6, 4.0))((_draw_local("b"), _eval_local("b")))


# High regime, 4 <= p <= 6


def _draw_52(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 4.0, 6.0)
    n, xi = _level_start(rng, p)
    if xi < 0:
        return None
    t = float(rng.uniform(xi, xi + 4.0 / p))
    return {"p": p, "n": n, "xi": xi, "t": t}


def _eval_52(w, settings):
    p, n, xi = w["p"], w["n"], w["xi"]
    best = s_local(midpoint(xi, p), xi, n, p, "high", settings)
    return [Sample(best - s_local(w["t"], xi, n, p, "high", settings), 4 * settings.abs_tol, Claim.NONNEGATIVE, w)]


_register("5.2", "for 4 <= p <= 6, S on [xi, xi+4/p] is largest at the midpoint", 1000, (4.0, 6.0))(
    (_draw_52, _eval_52)
)


def _draw_53(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 4.05, 6.0)
    n = int(rng.integers(1, 6))
    k = int(rng.integers(-2, 2))
    xi = n + 4.0 * k / p
    if xi < 0.3:
        return None
    prefix = sorted(rng.uniform(0.0, xi, n).tolist())
    if prefix[0] <= 0 or any(b <= a for a, b in zip(prefix, prefix[1:])):
        return None
    m = midpoint(xi, p)
    after = xi + 1 + 2.0 / p + float(rng.uniform(0.0, 0.6))
    return {"p": p, "n": n, "xi": xi, "tau": prefix + [m + 4.0 / p, after]}


def _eval_53(w, settings):
    p, n, xi = w["p"], w["n"], w["xi"]
    tau = _seq(w["tau"])
    gamma = tau.replace(n + 1, midpoint(xi, p))
    return [_gap_sample(tau, gamma, p, Claim.POSITIVE, w, settings)]


_register("5.3", "for p > 4, moving tau_{n+1} from m_xi + 4/p back to m_xi strictly increases E_p", 1000, (4.0, 6.0))(
    (_draw_53, _eval_53)
)


def _draw_54(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 4.0, 6.0)
    d1 = float(rng.uniform(0.1, min(1.0, 0.5 + 3.0 / p)))
    d2 = float(rng.uniform(0.1, 1.0))
    N = int(rng.integers(3, 10))
    if rng.random() < 0.85:
        caps = [n + float(rng.uniform(0, 0.8)) for n in range(1, N)] + [N - 0.5 + 3.0 / p]
    else:
        caps = [n + 1.5 for n in range(1, N + 1)]
    terms = _chain(rng, [d1] + [0.0] * (N - 1), caps, [d2] * (N - 1))
    if terms is None:
        return None
    return {"p": p, "delta1": d1, "delta2": d2, "tau": terms}


def _eval_54(w, settings):
    p, d = w["p"], SeparationParams(w["delta1"], w["delta2"])
    tau = _seq(w["tau"])
    gamma = min_with_high_maximizer(tau, p)
    return [
        membership_sample(validate_membership(gamma, d), "gamma in T", w),
        _gap_sample(tau, gamma, p, Claim.NONNEGATIVE, w, settings),
    ]


_register("5.4", "gamma_n = min(n - 1/2 + 3/p, tau_n) stays feasible and does not decrease E_p", 1000, (4.0, 6.0))(
    (_draw_54, _eval_54)
)


def _draw_55(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 4.0, 6.0)
    d1 = float(rng.uniform(1 - 4.0 / p, min(1.0, 0.5 + 3.0 / p)))
    d2 = float(rng.uniform(1 - 4.0 / p, 1.0))
    N = int(rng.integers(3, 9))
    caps = [n - 0.5 + 3.0 / p for n in range(1, N + 1)]
    terms = _chain(rng, [d1] + [0.0] * (N - 1), caps, [d2] * (N - 1))
    if terms is None:
        return None
    return {"p": p, "delta1": d1, "delta2": d2, "tau": terms}


_register("5.5", "E_p equals the sum of the high-regime ray contributions", 200, (4.0, 6.0))(
    (_draw_55, _eval_ray_sum(Regime.HIGH))
)


def high_ray_cap(k: int, p: float, settings: QuadSettings = DEFAULT_SETTINGS) -> float:
    """Level k-1 on (k-1+4/p, k-1/2+3/p) plus level k on (k-1/2+3/p, k+2/p)."""
    return weighted_hump(k - 1 + 4.0 / p, k - 0.5 + 3.0 / p, k - 1, p, settings) + weighted_hump(
        k - 0.5 + 3.0 / p, k + 2.0 / p, k, p, settings
    )


def _draw_56(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 4.0, 6.0)
    d1 = float(rng.uniform(1 - 2.0 / p, min(1.0, 0.5 + 3.0 / p)))
    d2 = float(rng.uniform(1 - 2.0 / p, 1.0))
    N = int(rng.integers(3, 9))
    caps = [n + 1.0 for n in range(1, N + 1)]
    terms = _chain(rng, [d1] + [0.0] * (N - 1), caps, [d2] * (N - 1))
    if terms is None:
        return None
    return {"p": p, "delta1": d1, "delta2": d2, "k": int(rng.integers(1, N + 1)), "tau": terms}


def _eval_56(w, settings):
    p, k = w["p"], w["k"]
    a = ray_contribution(_seq(w["tau"]), RayIndex(k, Regime.HIGH), p, settings)
    return [Sample(high_ray_cap(k, p, settings) - a.mid, 2.0 * (a.width + settings.abs_tol), Claim.NONNEGATIVE, w)]


_register("5.6", "each high-regime ray k >= 1 carries at most the two half-humps around k-1/2+3/p", 1000, (4.0, 6.0))(
    (_draw_56, _eval_56)
)


def techlemstat_margin(p: float, settings: QuadSettings = DEFAULT_SETTINGS) -> tuple[float, float]:
    """Gain of the first two high rays when tau_1 = 1/2, tau_2 = 3/2 - 1/p is replaced by the maximizer.

    Returns (margin, error estimate); zero at p = 4.
    """
    rows = [
        (4.0 / p, 0.5 + 3.0 / p, 0.0, 1.0),
        (0.5 + 3.0 / p, 1 + 2.0 / p, 1.0, 1.0),
        (0.5, 1 - 2.0 / p, 1.0, -1.0),
        (1.0, 1.5 - 1.0 / p, 1.0, -1.0),
        (1.5 - 1.0 / p, 2 - 2.0 / p, 2.0, -1.0),
    ]
    a, b, lvl, sgn = (np.array(c) for c in zip(*rows))
    keep = b > a
    vals, errs = weighted_humps(a[keep], b[keep], lvl[keep], p, settings)
    return math.fsum((sgn[keep] * vals).tolist()), float(np.sum(errs)) + settings.abs_tol


def _draw_57(rng, p_fixed):
    if p_fixed is not None and p_fixed == 4.0:
        return {"p": 4.0, "kind": "display"}
    p = _pick_p(rng, p_fixed, 4.02, 5.0)
    d2 = 1 - 2.0 / p
    N = int(rng.integers(3, 7))
    caps = [n + 1.0 for n in range(1, N + 1)]
    tau = _chain(rng, [0.5] + [0.0] * (N - 1), [0.5] + caps[1:], [d2] * (N - 1))
    gam = _chain(rng, [0.5 + 3.0 / p] + [0.0] * (N - 1), [0.5 + 3.0 / p] + caps[1:], [d2] * (N - 1))
    if tau is None or gam is None:
        return None
    return {"p": p, "kind": "sequences", "tau": tau, "gamma": gam}


def _eval_57(w, settings):
    p = w["p"]
    m, err = techlemstat_margin(p, settings)
    claim = Claim.ZERO if p == 4.0 else Claim.POSITIVE
    out = [Sample(m, 2.0 * err, claim, dict(w, check="display"))]
    if w["kind"] == "display":
        return out
    d = SeparationParams(0.5, 1 - 2.0 / p)
    tau, gam = _seq(w["tau"]), _seq(w["gamma"])

    def first_two(seq):
        a0 = ray_contribution(seq, RayIndex(0, Regime.HIGH), p, settings)
        a1 = ray_contribution(seq, RayIndex(1, Regime.HIGH), p, settings)
        return a0 + a1

    bt, bg = first_two(tau), first_two(gam)
    out += [
        membership_sample(validate_membership(tau, d), "tau in T(1/2, 1-2/p)", w),
        membership_sample(validate_membership(gam, d), "gamma in T(1/2, 1-2/p)", w),
        Sample(bg.mid - bt.mid, 2.0 * (bg.width + bt.width + settings.abs_tol), Claim.POSITIVE, dict(w, check="rays")),
    ]
    return out


_register("5.7", "tau_1 = 1/2 loses to gamma_1 = 1/2 + 3/p on the first two high rays (equality of the display at p=4)",
          1000, (4.0, 5.0))((_draw_57, _eval_57))


# Elementary estimates


def _decreasing_f(c, s, q):
    return lambda x: c / (x + s) ** q


def _draw_a1(rng, p_fixed):
    p = _pick_p(rng, p_fixed, 2.0, 6.0)
    a = float(rng.uniform(0.0, 4.0))
    b = a + float(rng.uniform(0.01, 2.0))
    return {"p": p, "a": a, "b": b, "c": float(rng.uniform(0.1, 3.0)), "s": float(rng.uniform(0.1, 3.0)),
            "q": float(rng.uniform(0.5, 3.0))}


def _sin2_mass(a, b, p):
    return 0.5 * (b - a + (math.sin(p * math.pi * a) - math.sin(p * math.pi * b)) / (p * math.pi))


def _eval_a1(w, settings):
    p, a, b = w["p"], w["a"], w["b"]
    f = _decreasing_f(w["c"], w["s"], w["q"])
    val, err = adaptive_integrate(lambda x, idx: f(x) * np.sin(0.5 * math.pi * p * x) ** 2, a, b, settings.abs_tol)
    v = float(val[0])
    mass = _sin2_mass(a, b, p)
    slack = 2.0 * (float(err[0]) + settings.abs_tol)
    return [
        Sample(v - f(b) * mass, slack, Claim.NONNEGATIVE, dict(w, check="lower")),
        Sample(f(a) * mass - v, slack, Claim.NONNEGATIVE, dict(w, check="upper")),
    ]


_register("A.1", "sin^2-weighted integrals of a decreasing function lie between its endpoint values times the sine mass",
          1000, (2.0, 6.0))((_draw_a1, _eval_a1))


def sin2_range(t: float, a: float, b: float) -> tuple[float, float]:
    """Exact (min, max) of sin^2(t x) over [a, b]."""
    lo_u, hi_u = sorted((t * a, t * b))
    ends = [math.sin(lo_u) ** 2, math.sin(hi_u) ** 2]
    has_zero = math.floor(hi_u / math.pi) >= math.ceil(lo_u / math.pi)
    has_peak = math.floor(hi_u / math.pi - 0.5) >= math.ceil(lo_u / math.pi - 0.5)
    return (0.0 if has_zero else min(ends)), (1.0 if has_peak else max(ends))


def _draw_a2(rng, p_fixed):
    a = float(rng.uniform(0.0, 4.0))
    return {"t": float(rng.uniform(0.1, 10.0)), "a": a, "b": a + float(rng.uniform(0.01, 1.5)),
            "c": float(rng.uniform(0.1, 3.0)), "s": float(rng.uniform(0.1, 3.0))}


def _eval_a2(w, settings):
    t, a, b, c, s = w["t"], w["a"], w["b"], w["c"], w["s"]
    big_f = lambda x: -c / (x + s)  # antiderivative of c/(x+s)^2
    val, err = adaptive_integrate(lambda x, idx: c / (x + s) ** 2 * np.sin(t * x) ** 2, a, b, settings.abs_tol)
    v = float(val[0])
    c1, c2 = sin2_range(t, a, b)
    mass = big_f(b) - big_f(a)
    slack = 2.0 * (float(err[0]) + settings.abs_tol)
    return [
        Sample(v - c1 * mass, slack, Claim.NONNEGATIVE, dict(w, check="lower")),
        Sample(c2 * mass - v, slack, Claim.NONNEGATIVE, dict(w, check="upper")),
    ]


_register("A.2", "bounds on sin^2(t x) transfer to bounds on the weighted integral", 1000, (2.0, 6.0))(
    (_draw_a2, _eval_a2)
)


def _draw_a3(rng, p_fixed):
    return {"p": _pick_p(rng, p_fixed, 3.0, 4.0)}


def _eval_a3(w, settings):
    v = float(lemma_a3_value(w["p"]))
    return [Sample(v, 1e-14 * (abs(v) + 1.0), Claim.NONNEGATIVE, w)]


_register("A.3", "2 sin(2 p pi/3) cos(p pi/3) + (7/50) p pi >= 0 on [3, 4]", 1000, (3.0, 4.0))((_draw_a3, _eval_a3))


LEMMA_IDS = tuple(REGISTRY)


def _spec(lemma_id: str) -> LemmaSpec:
    try:
        return REGISTRY[str(lemma_id)]
    except KeyError:
        raise DomainError(f"unknown lemma_id {lemma_id!r}; registered: {', '.join(REGISTRY)}") from None


def draw_parameters(lemma_id: str, samples: int, rng_seed: int = 0, p: float | None = None) -> list[dict]:
    """The parameter tuples a check would evaluate, in order."""
    spec = _spec(lemma_id)
    if p is not None and not (spec.p_range[0] <= p <= spec.p_range[1]):
        raise DomainError(f"lemma {lemma_id} needs {spec.p_range[0]:g} <= p <= {spec.p_range[1]:g}, got {p!r}")
    rng = np.random.default_rng(rng_seed)
    out: list[dict] = []
    attempts = 0
    while len(out) < samples:
        attempts += 1
        if attempts > MAX_DRAW_ATTEMPTS * max(samples, 1):
            raise DomainError(f"lemma {lemma_id}: could not sample its hypothesis space at p={p!r}")
        w = spec.draw(rng, p)
        if w is not None:
            out.append(dict(w, sample=len(out)))
    return out


def check_lemma(
    lemma_id: str,
    samples: int | None = None,
    rng_seed: int = 0,
    settings: QuadSettings = DEFAULT_SETTINGS,
    p: float | None = None,
) -> LemmaCheckReport:
    """Sample the lemma's hypotheses and report the most adverse signed margin.

    ``p`` pins the exponent instead of drawing it from the lemma's range.
    """
    spec = _spec(lemma_id)
    n = spec.default_samples if samples is None else int(samples)
    if n < 1:
        raise DomainError("samples must be positive")
    params = draw_parameters(lemma_id, n, rng_seed, p)
    workers = worker_count()

    def run(w):
        return spec.evaluate(w, settings)

    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            results = list(pool.map(run, params))
    else:
        results = [run(w) for w in params]
    flat = [s for group in results for s in group]
    return LemmaCheckReport.from_samples(spec.lemma_id, flat, rng_seed)


__all__ = [
    "GUARD",
    "LEMMA_IDS",
    "REGISTRY",
    "LemmaSpec",
    "check_lemma",
    "draw_parameters",
    "objective_gap",
    "truncated_gap",
    "min_with_index",
    "min_with_high_maximizer",
    "clip_to_level_ends",
    "postpone",
    "high_ray_cap",
    "techlemstat_margin",
    "sin2_range",
]
