"""Level geometry of the shifted sines sin((p/2)pi(x - n)).

At level n the sine is positive exactly on the intervals (xi, xi + 2/p)
with xi = n + (4/p)k. Everything downstream (the objective, rays, the
local comparison quantity) is assembled from these intervals.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from enum import Enum

from .errors import DomainError

LEVEL_TOL = 1e-9


class Regime(str, Enum):
    LOW = "low"
    HIGH = "high"


def regimes(p: float) -> tuple[Regime, ...]:
    """Regimes containing p; p = 4 belongs to both."""
    check_exponent(p)
    out = []
    if p <= 4:
        out.append(Regime.LOW)
    if p >= 4:
        out.append(Regime.HIGH)
    return tuple(out)


def check_exponent(p: float, lo: float = 2.0, hi: float = 6.0) -> float:
    if not isinstance(p, (int, float)) or not math.isfinite(p) or not (lo <= p <= hi):
        raise DomainError(f"p must lie in [{lo:g}, {hi:g}], got {p!r}")
    return float(p)


@dataclass(frozen=True)
class Interval:
    """Open interval (a, b); empty when b <= a."""

    a: float
    b: float

    @property
    def empty(self) -> bool:
        return self.b <= self.a

    @property
    def length(self) -> float:
        return max(0.0, self.b - self.a)

    def intersect(self, other: "Interval") -> "Interval":
        a = max(self.a, other.a)
        b = min(self.b, other.b)
        return Interval(a, max(a, b))

    def __contains__(self, x: float) -> bool:
        return self.a < x < self.b


@dataclass(frozen=True)
class LevelInterval:
    """A positivity interval (xi, xi + 2/p) of the level-`level` sine.

    ``lo``/``hi`` hold the part actually kept after clipping to a window;
    they default to the full interval.
    """

    xi: float
    level: int
    p: float
    lo: float | None = None
    hi: float | None = None

    def __post_init__(self):
        if not is_level_start(self.xi, self.level, self.p):
            raise DomainError(f"{self.xi!r} does not start a positivity interval at level {self.level}")
        if self.lo is None:
            object.__setattr__(self, "lo", self.xi)
        if self.hi is None:
            object.__setattr__(self, "hi", self.xi + 2.0 / self.p)

    @property
    def length(self) -> float:
        return 2.0 / self.p

    @property
    def end(self) -> float:
        return self.xi + 2.0 / self.p

    @property
    def piece(self) -> Interval:
        return Interval(self.lo, self.hi)


def level_offset(xi: float, n: float, p: float) -> float:
    """(xi - n)/(4/p): an integer exactly when xi starts a level-n interval."""
    return (xi - n) * p / 4.0


def is_level_start(xi: float, n: float, p: float, tol: float = LEVEL_TOL) -> bool:
    k = level_offset(xi, n, p)
    return abs(k - round(k)) <= tol


def positivity_intervals(n: int, p: float, window: Interval) -> list[LevelInterval]:
    """Level-n positivity intervals meeting the window, clipped to it and to x > 0."""
    check_exponent(p)
    if window.a < 0 or not (math.isfinite(window.a) and math.isfinite(window.b)):
        raise DomainError("window must be a finite subset of [0, inf)")
    lo = max(window.a, 0.0)
    hi = window.b
    out: list[LevelInterval] = []
    if hi <= lo:
        return out
    period = 4.0 / p
    k = math.floor((lo - n - 2.0 / p) / period)
    while True:
        xi = n + k * period
        if xi >= hi:
            break
        a = max(xi, lo)
        b = min(xi + 2.0 / p, hi)
        if b > a:
            out.append(LevelInterval(xi, n, p, a, b))
        k += 1
    return out


def next_level_neighbor(xi: float, n: int, p: float) -> Interval:
    """The unique level-(n+1) interval overlapping (xi, xi + 2/p)."""
    check_exponent(p)
    if not is_level_start(xi, n, p):
        raise DomainError(f"{xi!r} does not start a positivity interval at level {n}")
    return Interval(xi + 1.0 - 4.0 / p, xi + 1.0 - 2.0 / p)


def midpoint(xi: float, p: float) -> float:
    """Centre of the overlap of (xi, xi+2/p) with its next-level neighbour."""
    check_exponent(p)
    return xi + 0.5 - 1.0 / p


def stripe_index(terms: list[float], x: float) -> int | None:
    """Index n with terms[n] < x < terms[n+1]; None on a partition point.

    ``terms`` must start with 0 and extend past x.
    """
    i = bisect.bisect_left(terms, x)
    if i < len(terms) and terms[i] == x:
        return None
    return i - 1


def kernel_value(tau, p: float, x: float) -> float:
    """K_p(tau; x) = sin((p/2)pi(x - n))/(pi x) on the stripe tau_n < x < tau_{n+1}."""
    check_exponent(p)
    if not x > 0:
        raise DomainError("kernel_value needs x > 0")
    n = tau.stripe_of(x)
    if n is None:
        return 0.0
    return math.sin(0.5 * math.pi * p * (x - n)) / (math.pi * x)


__all__ = [
    "Regime",
    "regimes",
    "check_exponent",
    "Interval",
    "LevelInterval",
    "is_level_start",
    "positivity_intervals",
    "next_level_neighbor",
    "midpoint",
    "stripe_index",
    "kernel_value",
]
