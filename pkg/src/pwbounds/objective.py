"""The objective E_p(tau), its truncations, the local quantity S, and rays.

E_p(tau) is the integral over (0, inf) of the squared positive part of
K_p(tau; x). On the stripe (tau_n, tau_{n+1}) the kernel is the level-n
sine, so E_p is a sum over stripes of weighted humps restricted to the
level-n positivity intervals. The explicit prefix of a sequence is
integrated stripe by stripe; the arithmetic tail goes through the
bracketed series machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError
from .kernel import (
    Interval,
    LevelInterval,
    Regime,
    check_exponent,
    is_level_start,
    positivity_intervals,
)
from .quadrature import (
    DEFAULT_SETTINGS,
    Bracket,
    GeneralSeries,
    PeriodicSeries,
    QuadSettings,
    hump_mass,
    level_series,
    trigamma_tail,
    weighted_humps,
)
from .sequences import ZeroSequence

UNIT_TOL = 1e-12


def stripe_pieces(n: int, lo: float, hi: float, p: float) -> list[tuple[float, float, float]]:
    """(a, b, n) for each part of the stripe (lo, hi) where the level-n sine is positive."""
    if hi <= lo:
        return []
    return [(iv.lo, iv.hi, float(n)) for iv in positivity_intervals(n, p, Interval(max(lo, 0.0), hi))]


def integrate_pieces(pieces, p: float, settings: QuadSettings = DEFAULT_SETTINGS) -> tuple[float, float]:
    """Sum of weighted humps over (a, b, m) triples: (value, error estimate)."""
    if not pieces:
        return 0.0, 0.0
    arr = np.asarray(pieces, dtype=float)
    vals, errs = weighted_humps(arr[:, 0], arr[:, 1], arr[:, 2], p, settings)
    return math.fsum(vals.tolist()), math.fsum(errs.tolist())


def stripe_values(levels, los, his, p: float, settings: QuadSettings = DEFAULT_SETTINGS):
    """Vectorized stripe contributions: one value per (level, lo, hi) triple."""
    owners: list[int] = []
    rows: list[tuple[float, float, float]] = []
    for i, (n, lo, hi) in enumerate(zip(levels, los, his)):
        for pc in stripe_pieces(int(n), float(lo), float(hi), p):
            owners.append(i)
            rows.append(pc)
    out = np.zeros(len(levels))
    err = np.zeros(len(levels))
    if rows:
        arr = np.asarray(rows, dtype=float)
        vals, errs = weighted_humps(arr[:, 0], arr[:, 1], arr[:, 2], p, settings)
        np.add.at(out, np.asarray(owners), vals)
        np.add.at(err, np.asarray(owners), errs)
    return out, err


def _unit_tail_series(last: float, start: int, p: float) -> PeriodicSeries:
    # Levels n >= start sit on stripes (n + d, n + d + 1); relative to n the
    # positivity pattern is the same at every level.
    d = last - start
    pieces = []
    period = 4.0 / p
    k = math.floor((d - 2.0 / p) / period)
    while True:
        xi = k * period
        if xi >= d + 1:
            break
        a, b = max(xi, d), min(xi + 2.0 / p, d + 1)
        if b > a:
            pieces.append((a, b, 0.0))
        k += 1
    return PeriodicSeries(1.0, tuple(pieces), 1.0, start)


def tail_bracket(last: float, start: int, step: float, p: float, settings: QuadSettings = DEFAULT_SETTINGS) -> Bracket:
    """Contribution of the levels n >= start, where tau_n = last + (n - start) * step."""
    if abs(step - 1.0) <= UNIT_TOL:
        return level_series(_unit_tail_series(last, start, p), p, settings)

    def pieces(i):
        lo = last + (i - start) * step
        return stripe_pieces(i, lo, lo + step, p)

    max_pieces = math.ceil(step * p / 4.0) + 1
    series = GeneralSeries(pieces, growth=step, offset=start * step - last, max_pieces=max_pieces, first=start)
    return level_series(series, p, settings)


def ep(tau: ZeroSequence, p: float, settings: QuadSettings = DEFAULT_SETTINGS) -> Bracket:
    """Bracket enclosing E_p(tau)."""
    check_exponent(p)
    t = tau.terms(tau.N)
    pieces = [pc for n in range(tau.N) for pc in stripe_pieces(n, t[n], t[n + 1], p)]
    head, err = integrate_pieces(pieces, p, settings)
    return Bracket(head - err, head + err) + tail_bracket(tau.last, tau.N, tau.tail_step, p, settings)


def ep_breakdown(tau: ZeroSequence, p: float, upto: int, settings: QuadSettings = DEFAULT_SETTINGS) -> list[float]:
    """Per-stripe contributions for levels 0..upto."""
    t = tau.terms(upto + 1)
    vals, _ = stripe_values(list(range(upto + 1)), t[:-1], t[1:], p, settings)
    return vals.tolist()


def ep_truncated_with_error(tau: ZeroSequence, p: float, r: float, settings: QuadSettings = DEFAULT_SETTINGS):
    check_exponent(p)
    if not r > 0:
        raise DomainError("truncation point r must be positive")
    pieces = []
    n = 0
    while tau.term(n) < r:
        pieces.extend(stripe_pieces(n, tau.term(n), min(tau.term(n + 1), r), p))
        n += 1
    return integrate_pieces(pieces, p, settings)


def ep_truncated(tau: ZeroSequence, p: float, r: float, settings: QuadSettings = DEFAULT_SETTINGS) -> float:
    """E_p of the sequence min(tau_n, r), integrated over (0, r)."""
    return ep_truncated_with_error(tau, p, r, settings)[0]


def _regime_bounds(regime: Regime) -> tuple[float, float]:
    return (2.0, 4.0) if Regime(regime) is Regime.LOW else (4.0, 6.0)


def s_local(tau_next: float, xi: float, n: int, p: float, regime, settings: QuadSettings = DEFAULT_SETTINGS) -> float:
    """Local objective around a level-n interval (xi, xi + 2/p) and its level-(n+1) neighbour.

    The level-n hump counts up to tau_next, the neighbour from tau_next on.
    """
    regime = Regime(regime)
    check_exponent(p, *_regime_bounds(regime))
    if not is_level_start(xi, n, p):
        raise DomainError(f"{xi!r} does not start a positivity interval at level {n}")
    if regime is Regime.LOW:
        lo, hi = xi + 1 - 4.0 / p, xi + 1
    else:
        lo, hi = xi, xi + 4.0 / p
    if not (lo - 1e-12 <= tau_next <= hi + 1e-12):
        raise DomainError(f"tau_next={tau_next!r} outside [{lo:.12g}, {hi:.12g}] for the {regime.value} regime")
    pieces = []
    a, b = xi, min(tau_next, xi + 2.0 / p)
    if b > a:
        pieces.append((a, b, float(n)))
    a, b = max(tau_next, xi + 1 - 4.0 / p), xi + 1 - 2.0 / p
    if b > a:
        pieces.append((a, b, float(n + 1)))
    if any(pc[0] < 0 for pc in pieces):
        raise DomainError("local window reaches left of 0")
    return integrate_pieces(pieces, p, settings)[0]


@dataclass(frozen=True)
class RayIndex:
    k: int
    regime: Regime

    def __post_init__(self):
        if self.k < 0:
            raise DomainError("ray index must be nonnegative")
        object.__setattr__(self, "regime", Regime(self.regime))


def ray_step(p: float, regime: Regime) -> float:
    return 2.0 - 4.0 / p if Regime(regime) is Regime.LOW else 1.0 - 4.0 / p


def ray_member(ray: RayIndex, j: int, p: float) -> tuple[LevelInterval, int] | None:
    """j-th interval of the ray with its stripe index, or None for the omitted I_{0,0}."""
    rho = ray_step(p, ray.regime)
    k = ray.k
    if ray.regime is Regime.LOW:
        level = k + 2 * j
        xi = k + j * rho
    else:
        if k == 0 and j == 0:
            return None
        level = k - 1 + j
        xi = k - 1 + 4.0 / p + j * rho
    return LevelInterval(xi, level, p), level


def ray_intervals(ray: RayIndex, p: float, j_max: int) -> list[tuple[LevelInterval, int]]:
    check_exponent(p, *_regime_bounds(ray.regime))
    out = []
    for j in range(j_max + 1):
        item = ray_member(ray, j, p)
        if item is not None:
            out.append(item)
    return out


def _ray_levels_per_step(regime: Regime) -> int:
    return 2 if regime is Regime.LOW else 1


def ray_contribution(tau: ZeroSequence, ray: RayIndex, p: float, settings: QuadSettings = DEFAULT_SETTINGS) -> Bracket:
    """Bracket for A_p(tau; k): the part of E_p carried by the k-th ray."""
    check_exponent(p, *_regime_bounds(ray.regime))
    rho = ray_step(p, ray.regime)
    drift = _ray_levels_per_step(ray.regime) * tau.tail_step
    pieces = []
    j = 0
    cap = settings.tail_level_cutoff
    while True:
        item = ray_member(ray, j, p)
        if item is not None:
            iv, n = item
            lo, hi = tau.term(n), tau.term(n + 1)
            a, b = max(iv.xi, lo), min(iv.end, hi)
            if b > a:
                pieces.append((a, b, float(n)))
            if n >= tau.N and iv.end <= lo and drift >= rho:
                break
        if j >= cap:
            value, err = integrate_pieces(pieces, p, settings)
            start = ray.k - 1 + 4.0 / p if ray.regime is Regime.HIGH else ray.k
            tail = hump_mass(p) * trigamma_tail(j + 1, start, rho) / math.pi**2
            return Bracket(value - err, value + err + tail)
        j += 1
    value, err = integrate_pieces(pieces, p, settings)
    return Bracket(value - err, value + err)


def _ray_tail_series(tau: ZeroSequence, p: float, regime: Regime, first: int) -> PeriodicSeries:
    """Rays k >= first, all living in the unit-step tail, as one periodic series in k."""
    d = tau.last - tau.N
    rho = ray_step(p, regime)
    pieces = []
    j = 0
    while True:
        if regime is Regime.LOW:
            u, off = j * rho, 2.0 * j
            s_lo = 2.0 * j + d
        else:
            u, off = -1 + 4.0 / p + j * rho, j - 1.0
            s_lo = j - 1.0 + d
        v = u + 2.0 / p
        a, b = max(u, s_lo), min(v, s_lo + 1)
        if b > a:
            pieces.append((a, b, off))
        if v <= s_lo:
            break
        j += 1
    return PeriodicSeries(1.0, tuple(pieces), 1.0, first)


def ray_sum(tau: ZeroSequence, p: float, regime, settings: QuadSettings = DEFAULT_SETTINGS) -> Bracket:
    """Bracket for the sum of A_p(tau; k) over all rays k >= 0.

    Rays starting inside the unit-step tail are summed as one periodic
    series, so the whole sum is finite work.
    """
    regime = Regime(regime)
    check_exponent(p, *_regime_bounds(regime))
    if abs(tau.tail_step - 1.0) > UNIT_TOL:
        raise DomainError("ray sums are implemented for unit tail steps only")
    first = tau.N + 1
    total = Bracket(0.0, 0.0)
    for k in range(first):
        total = total + ray_contribution(tau, RayIndex(k, regime), p, settings)
    return total + level_series(_ray_tail_series(tau, p, regime, first), p, settings)


__all__ = [
    "stripe_pieces",
    "integrate_pieces",
    "stripe_values",
    "tail_bracket",
    "ep",
    "ep_breakdown",
    "ep_truncated",
    "ep_truncated_with_error",
    "s_local",
    "RayIndex",
    "ray_step",
    "ray_member",
    "ray_intervals",
    "ray_contribution",
    "ray_sum",
]
