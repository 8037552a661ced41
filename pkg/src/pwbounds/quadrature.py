"""Integration of sin^2-humps against 1/(pi x)^2, and bracketed series of them.

Everything here is vectorized over batches of intervals: a level series
with tens of thousands of terms is integrated in a handful of numpy
passes instead of one Python call per term.

The adaptive scheme is plain recursive bisection. Every piece carries a
10-point Gauss-Legendre estimate of itself; it is split in two, and the
piece is accepted once the halves agree with the whole to within the
share of the tolerance proportional to its length.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.special import polygamma

from .errors import ConvergenceError, DomainError

_GL_NODES, _GL_WEIGHTS = np.polynomial.legendre.leggauss(10)

# Pieces shorter than this fraction of their parent are accepted as-is;
# below it the bisection only reshuffles rounding error.
_MIN_RELATIVE_LENGTH = 2.0**-45


@dataclass(frozen=True)
class Bracket:
    """Closed enclosure [lo, hi] of a real number."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (self.lo <= self.hi):
            raise ValueError(f"bracket with lo > hi: [{self.lo!r}, {self.hi!r}]")

    @classmethod
    def point(cls, value: float, err: float = 0.0) -> "Bracket":
        return cls(value - abs(err), value + abs(err))

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def mid(self) -> float:
        return 0.5 * (self.lo + self.hi)

    def contains(self, value: float, slack: float = 0.0) -> bool:
        return self.lo - slack <= value <= self.hi + slack

    def overlaps(self, other: "Bracket", slack: float = 0.0) -> bool:
        return self.lo - slack <= other.hi and other.lo - slack <= self.hi

    def __add__(self, other):
        if isinstance(other, Bracket):
            return Bracket(self.lo + other.lo, self.hi + other.hi)
        return Bracket(self.lo + other, self.hi + other)

    __radd__ = __add__

    def __sub__(self, other: "Bracket") -> "Bracket":
        return Bracket(self.lo - other.hi, self.hi - other.lo)

    def scale(self, factor: float) -> "Bracket":
        """Multiply by a nonnegative constant."""
        if factor < 0:
            raise ValueError("scale factor must be nonnegative")
        return Bracket(self.lo * factor, self.hi * factor)

    def __str__(self) -> str:
        return f"[{self.lo:.12g}, {self.hi:.12g}]"


@dataclass(frozen=True)
class QuadSettings:
    """Accuracy knobs.

    ``abs_tol`` is the absolute tolerance per finite interval,
    ``max_subdivisions`` the maximum bisection depth, and
    ``tail_level_cutoff`` the last index of a series that is integrated
    numerically; everything beyond it is bounded in closed form.
    """

    abs_tol: float = 1e-12
    max_subdivisions: int = 48
    tail_level_cutoff: int = 20000
    rel_tol: float = 0.0

    def __post_init__(self):
        if not self.abs_tol > 0:
            raise DomainError("abs_tol must be positive")
        if self.tail_level_cutoff < 2:
            raise DomainError("tail_level_cutoff must be at least 2")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be at least 1")
        if self.rel_tol < 0:
            raise DomainError("rel_tol must be nonnegative")


DEFAULT_SETTINGS = QuadSettings()


def _check_p(p, lo=2.0, hi=6.0):
    arr = np.asarray(p, dtype=float)
    if not np.all(np.isfinite(arr)) or np.any(arr < lo - 1e-12) or np.any(arr > hi + 1e-12):
        raise DomainError(f"p must lie in [{lo:g}, {hi:g}], got {p!r}")


def _panel(f, lo, hi, idx):
    half = 0.5 * (hi - lo)
    mid = 0.5 * (hi + lo)
    x = mid[:, None] + half[:, None] * _GL_NODES[None, :]
    return half * (f(x, idx) @ _GL_WEIGHTS)


def adaptive_integrate(
    f: Callable[[np.ndarray, np.ndarray], np.ndarray],
    a,
    b,
    abs_tol: float = 1e-12,
    rel_tol: float = 0.0,
    max_depth: int = 48,
) -> tuple[np.ndarray, np.ndarray]:
    """Integrate a batch of problems by vectorized bisection.

    ``f(x, idx)`` receives nodes of shape (k, 10) and the index (shape
    (k,)) of the problem each row belongs to, and returns values of shape
    (k, 10). Problem i is integrated over [a[i], b[i]]; reversed limits
    give the negated integral. ``abs_tol`` may be a scalar or one value
    per problem. Returns (values, error estimates).
    """
    a = np.atleast_1d(np.asarray(a, dtype=float))
    b = np.atleast_1d(np.asarray(b, dtype=float))
    a, b = np.broadcast_arrays(a, b)
    sign = np.where(b < a, -1.0, 1.0)
    lo0 = np.minimum(a, b)
    hi0 = np.maximum(a, b)
    n = lo0.size
    values = np.zeros(n)
    errors = np.zeros(n)
    abs_tol = np.broadcast_to(np.asarray(abs_tol, dtype=float), (n,))

    owner = np.nonzero(hi0 > lo0)[0]
    lo, hi = lo0[owner], hi0[owner]
    if owner.size == 0:
        return values, errors
    span = hi0 - lo0
    whole = _panel(f, lo, hi, owner)
    scale = np.abs(whole.copy())
    full_scale = np.zeros(n)
    full_scale[owner] = scale

    for depth in range(max_depth + 1):
        mid = 0.5 * (lo + hi)
        left = _panel(f, lo, mid, owner)
        right = _panel(f, mid, hi, owner)
        refined = left + right
        diff = np.abs(refined - whole)
        frac = (hi - lo) / span[owner]
        allowed = np.maximum(abs_tol[owner], rel_tol * full_scale[owner]) * frac
        done = (diff <= allowed) | (frac < _MIN_RELATIVE_LENGTH)
        if done.any():
            np.add.at(values, owner[done], refined[done])
            np.add.at(errors, owner[done], diff[done])
        keep = ~done
        if not keep.any():
            break
        if depth == max_depth:
            np.add.at(values, owner[keep], refined[keep])
            np.add.at(errors, owner[keep], diff[keep])
            raise ConvergenceError(
                f"adaptive quadrature did not reach tolerance within depth {max_depth}",
                estimate=sign * values,
                error=errors,
            )
        lo_k, mid_k, hi_k, own_k = lo[keep], mid[keep], hi[keep], owner[keep]
        lo = np.concatenate([lo_k, mid_k])
        hi = np.concatenate([mid_k, hi_k])
        owner = np.concatenate([own_k, own_k])
        whole = np.concatenate([left[keep], right[keep]])
    return sign * values, errors


def hump_mass(p: float) -> float:
    """Unweighted mass of one positive hump: the integral of sin^2 over it, 1/p."""
    if not p > 0:
        raise DomainError("p must be positive")
    return 1.0 / p


def sine_mass(a, b, m, p):
    """Closed form of the integral of sin^2((p/2)pi(x-m)) over [a, b]."""
    a, b, m, p = (np.asarray(v, dtype=float) for v in (a, b, m, p))
    c = 0.5 * np.pi * p
    return 0.5 * (b - a) - (np.sin(2 * c * (b - m)) - np.sin(2 * c * (a - m))) / (4 * c)


def _hump_integrand(c, m):
    def f(x, idx):
        ci = c[idx][:, None]
        s = np.sin(ci * (x - m[idx][:, None]))
        return (s / (np.pi * x)) ** 2

    return f


def _phase_aligned(m, p, tol=1e-9):
    # sin((p/2)pi(0 - m)) vanishes iff m*p/2 is an integer
    t = np.asarray(m, dtype=float) * np.asarray(p, dtype=float) / 2
    return np.abs(t - np.round(t)) <= tol


def weighted_humps(a, b, m, p, settings: QuadSettings = DEFAULT_SETTINGS):
    """Vectorized integral of sin^2((p/2)pi(x-m))/(pi x)^2 over [a, b].

    Returns (values, error estimates) with the broadcast shape of the inputs.
    """
    a, b, m, p = np.broadcast_arrays(*(np.asarray(v, dtype=float) for v in (a, b, m, p)))
    shape = a.shape
    a, b, m, p = (v.ravel() for v in (a, b, m, p))
    _check_p(p)
    if np.any(a < 0) or np.any(b < a):
        raise DomainError("weighted_hump needs 0 <= a <= b")
    touches_zero = (a == 0) & (b > 0)
    if np.any(touches_zero & ~_phase_aligned(m, p)):
        raise DomainError("integrand is not integrable at 0 for this phase level")
    c = 0.5 * np.pi * p
    vals, errs = adaptive_integrate(
        _hump_integrand(c, m), a, b, settings.abs_tol, settings.rel_tol, settings.max_subdivisions
    )
    return vals.reshape(shape), errs.reshape(shape)


def weighted_hump(a: float, b: float, n: float, p: float, settings: QuadSettings = DEFAULT_SETTINGS) -> float:
    """Integral of sin^2((p/2)pi(x-n))/(pi x)^2 over [a, b]."""
    if a > b:
        raise DomainError(f"weighted_hump needs a <= b, got ({a}, {b})")
    if a == b:
        return 0.0
    vals, _ = weighted_humps(a, b, n, p, settings)
    return float(vals[()])


def hump_integrand_value(x: float, n: float, p: float) -> float:
    """Pointwise integrand, with the removable value p^2/4 at x = 0."""
    c = 0.5 * math.pi * p
    if x == 0:
        if not _phase_aligned(n, p):
            raise DomainError("integrand is singular at 0 for this phase level")
        return p * p / 4
    return (math.sin(c * (x - n)) / (math.pi * x)) ** 2


def trigamma_tail(first: int, offset: float, step: float) -> float:
    """Closed form of sum_{i >= first} 1/(step*i + offset)^2."""
    z = first + offset / step
    if z <= 0:
        raise DomainError("tail sum includes a nonpositive denominator")
    return float(polygamma(1, z)) / (step * step)


@dataclass(frozen=True)
class PeriodicSeries:
    """Series whose i-th term integrates pieces at a fixed offset from step*i.

    Term i is the sum over pieces (u, v, off) of the weighted hump over
    [step*i + u, step*i + v] with phase level phase_step*i + off. The
    geometry must repeat from term to term, i.e. (step - phase_step)*p/2
    is an integer, so the unweighted mass of every piece is constant and
    the tail can be summed in closed form.
    """

    step: float
    pieces: tuple[tuple[float, float, float], ...]
    phase_step: float
    first: int = 0

    def nonempty(self) -> tuple[tuple[float, float, float], ...]:
        return tuple(pc for pc in self.pieces if pc[1] > pc[0])


@dataclass(frozen=True)
class GeneralSeries:
    """Series with arbitrary pieces per term and linear growth.

    ``pieces(i)`` lists (a, b, m) triples for term i. Every piece of every
    term beyond the cutoff must satisfy a >= growth*i - offset and carry
    unweighted mass at most one hump. Only an upper tail bound is
    available, so the bracket is one-sided beyond the cutoff.
    """

    pieces: Callable[[int], Sequence[tuple[float, float, float]]]
    growth: float
    offset: float
    max_pieces: int
    first: int = 0


def _sum_pieces(a, b, m, p, settings):
    if a.size == 0:
        return 0.0, 0.0
    vals, errs = weighted_humps(a, b, m, p, settings)
    return math.fsum(vals.tolist()), math.fsum(errs.tolist())


def level_series(series, p: float, settings: QuadSettings = DEFAULT_SETTINGS) -> Bracket:
    """Bracket for an infinite series of weighted humps.

    Terms up to ``settings.tail_level_cutoff`` are integrated; the rest is
    enclosed termwise between U/(pi b)^2 and U/(pi a)^2 and summed in
    closed form through the trigamma function.
    """
    _check_p(p)
    if isinstance(series, PeriodicSeries):
        return _periodic_series(series, p, settings)
    if isinstance(series, GeneralSeries):
        return _general_series(series, p, settings)
    raise TypeError(f"unsupported series descriptor {type(series).__name__}")


def _periodic_series(series: PeriodicSeries, p, settings) -> Bracket:
    if not series.step > 0:
        raise DomainError("series step must be positive; terms would not escape to infinity")
    turns = (series.step - series.phase_step) * p / 2
    if abs(turns - round(turns)) > 1e-9:
        raise DomainError("series geometry does not repeat from term to term")
    pieces = series.nonempty()
    if not pieces:
        return Bracket(0.0, 0.0)
    if any(series.step * series.first + u < 0 for u, _, _ in pieces):
        raise DomainError("series pieces start left of 0")

    last = max(series.first, settings.tail_level_cutoff)
    idx = np.arange(series.first, last + 1, dtype=float)
    u = np.array([pc[0] for pc in pieces])
    v = np.array([pc[1] for pc in pieces])
    off = np.array([pc[2] for pc in pieces])
    a = (series.step * idx[:, None] + u[None, :]).ravel()
    b = (series.step * idx[:, None] + v[None, :]).ravel()
    m = (series.phase_step * idx[:, None] + off[None, :]).ravel()
    total, err = _sum_pieces(a, b, m, p, settings)

    first_a = series.step * series.first + u
    first_m = series.phase_step * series.first + off
    masses = sine_mass(first_a, first_a + (v - u), first_m, p)
    tail_lo = []
    tail_hi = []
    for mass, lo_off, hi_off in zip(masses, v, u):
        tail_lo.append(mass * trigamma_tail(last + 1, lo_off, series.step))
        tail_hi.append(mass * trigamma_tail(last + 1, hi_off, series.step))
    lo = total - err + math.fsum(tail_lo) / math.pi**2
    hi = total + err + math.fsum(tail_hi) / math.pi**2
    return Bracket(lo, hi)


def _general_series(series: GeneralSeries, p, settings) -> Bracket:
    if not series.growth > 0:
        raise DomainError("series terms must grow linearly (growth > 0)")
    last = max(series.first, settings.tail_level_cutoff)
    if series.growth * (last + 1) - series.offset <= 0:
        raise DomainError("cutoff too small for the declared growth bound")
    rows = [pc for i in range(series.first, last + 1) for pc in series.pieces(i) if pc[1] > pc[0]]
    if rows:
        arr = np.array(rows, dtype=float)
        total, err = _sum_pieces(arr[:, 0], arr[:, 1], arr[:, 2], p, settings)
    else:
        total, err = 0.0, 0.0
    tail = series.max_pieces * hump_mass(p) * trigamma_tail(last + 1, -series.offset, series.growth)
    return Bracket(total - err, total + err + tail / math.pi**2)


__all__ = [
    "Bracket",
    "QuadSettings",
    "DEFAULT_SETTINGS",
    "adaptive_integrate",
    "hump_mass",
    "sine_mass",
    "weighted_hump",
    "weighted_humps",
    "hump_integrand_value",
    "trigamma_tail",
    "PeriodicSeries",
    "GeneralSeries",
    "level_series",
]
