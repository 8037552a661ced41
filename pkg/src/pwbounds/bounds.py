"""Closed-form suprema, the resulting upper bounds for C_p, and reference bounds."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum

from .errors import RangeError
from .parallel import worker_count
from .quadrature import DEFAULT_SETTINGS, Bracket, PeriodicSeries, QuadSettings, level_series, weighted_hump
from .sequences import SeparationParams

RANGE_TOL = 1e-12


class Method(str, Enum):
    COROLLARY_LOW = "corollary_low"
    COROLLARY_HIGH = "corollary_high"
    BREVIG = "brevig"
    POWER_TRICK_CEIL = "power_trick_ceil"
    HALF_P = "half_p"


@dataclass(frozen=True)
class BoundResult:
    p: float
    value: Bracket
    method: Method
    hypotheses: str = ""

    @property
    def ratio_to_p(self) -> Bracket:
        return self.value.scale(1.0 / self.p)


def _within(x, lo, hi):
    return lo - RANGE_TOL <= x <= hi + RANGE_TOL


# Hypothesis boxes for the low-regime closed form. Each entry: label, p-range, d1-range, d2-range.
def _low_boxes(p):
    return [
        ("2 <= p <= 4, min(2/pi, 2/p) <= delta1 <= 1, 2/3 <= delta2 <= 1",
         (2, 4), (min(2 / math.pi, 2 / p), 1), (2 / 3, 1)),
        ("2 <= p <= 4, 1 - 2/p <= delta1 <= 1, 2 - 4/p <= delta2 <= 1",
         (2, 4), (1 - 2 / p, 1), (2 - 4 / p, 1)),
    ]


def _high_boxes(p):
    return [
        ("4 <= p <= 5, 1/2 <= delta1 <= 1/2 + 3/p, 1 - 2/p <= delta2 <= 1",
         (4, 5), (0.5, 0.5 + 3 / p), (1 - 2 / p, 1)),
        ("4 <= p <= 6, 1 - 2/p <= delta1 <= 1/2 + 3/p, 1 - 2/p <= delta2 <= 1",
         (4, 6), (1 - 2 / p, 0.5 + 3 / p), (1 - 2 / p, 1)),
    ]


def _select_box(boxes, p, d: SeparationParams) -> str:
    failures = []
    for label, pr, d1r, d2r in boxes:
        if not _within(p, *pr):
            failures.append(f"p={p:.12g} violates {pr[0]} <= p <= {pr[1]} ({label})")
        elif not _within(d.delta1, *d1r):
            failures.append(f"delta1={d.delta1:.12g} violates {label}")
        elif not _within(d.delta2, *d2r):
            failures.append(f"delta2={d.delta2:.12g} violates {label}")
        else:
            return label
    raise RangeError("no proven range applies: " + "; ".join(failures))


def low_series(p: float) -> PeriodicSeries:
    """Sum over n of the level-n hump (n, n + 2/p)."""
    return PeriodicSeries(1.0, ((0.0, 2.0 / p, 0.0),), 1.0)


def high_series(p: float) -> PeriodicSeries:
    """The two interleaved sums: (n + 4/p, n + 1/2 + 3/p) at level n, (n + 1/2 + 3/p, n + 1 + 2/p) at level n + 1."""
    return PeriodicSeries(
        1.0,
        ((4.0 / p, 0.5 + 3.0 / p, 0.0), (0.5 + 3.0 / p, 1.0 + 2.0 / p, 1.0)),
        1.0,
    )


def sup_value_low(p: float, d: SeparationParams, settings: QuadSettings = DEFAULT_SETTINGS) -> Bracket:
    """Supremum of E_p over T(d1, d2) for 2 <= p <= 4."""
    _select_box(_low_boxes(p), p, d)
    return level_series(low_series(p), p, settings)


def sup_value_high(p: float, d: SeparationParams, settings: QuadSettings = DEFAULT_SETTINGS) -> Bracket:
    """Supremum of E_p over T(d1, d2) for 4 <= p <= 6 (Theorem-range permitting)."""
    _select_box(_high_boxes(p), p, d)
    head = weighted_hump(0.0, 2.0 / p, 0, p, settings)
    return level_series(high_series(p), p, settings) + head


LOW_DELTAS = SeparationParams(2 / math.pi, 2 / 3)
HIGH_DELTAS = SeparationParams(0.5, 0.6)


def _corollary_low(p, settings):
    d = LOW_DELTAS
    return BoundResult(p, sup_value_low(p, d, settings).scale(2.0), Method.COROLLARY_LOW,
                       _select_box(_low_boxes(p), p, d))


def _corollary_high(p, settings):
    d = HIGH_DELTAS
    return BoundResult(p, sup_value_high(p, d, settings).scale(2.0), Method.COROLLARY_HIGH,
                       _select_box(_high_boxes(p), p, d))


def cp_upper(p: float, settings: QuadSettings = DEFAULT_SETTINGS) -> BoundResult:
    """Upper bound C_p <= 2 * sup E_p for 2 <= p <= 5.

    At p = 4 both closed forms apply; they are computed and required to agree.
    """
    if not _within(p, 2, 5):
        raise RangeError(f"p outside [2,5]: p={p!r}")
    if p < 4:
        return _corollary_low(p, settings)
    if p > 4:
        return _corollary_high(p, settings)
    low = _corollary_low(4.0, settings)
    high = _corollary_high(4.0, settings)
    if not low.value.overlaps(high.value, slack=1e-12):
        raise ArithmeticError(f"closed forms disagree at p=4: {low.value} vs {high.value}")
    return low


def brevig_value(p: float, settings: QuadSettings = DEFAULT_SETTINGS) -> Bracket:
    """B(p) = 2 (integral over (0, 2/p) of the level-0 hump + integral over (1, inf) of the level-1 sin^2)."""
    if not _within(p, 2, 4):
        raise RangeError(f"the Brevig bound is stated for 2 <= p <= 4, got p={p!r}")
    head = weighted_hump(0.0, 2.0 / p, 0, p, settings)
    # sin^2 is 2/p-periodic, so (1, inf) splits into whole periods with a fixed phase.
    rest = level_series(PeriodicSeries(2.0 / p, ((1.0, 1.0 + 2.0 / p, 1.0),), 0.0), p, settings)
    return (rest + head).scale(2.0)


def cp_reference(p: float, method, settings: QuadSettings = DEFAULT_SETTINGS) -> BoundResult:
    method = Method(method)
    if method is Method.HALF_P:
        if not _within(p, 2, math.inf):
            raise RangeError("half_p needs p >= 2")
        return BoundResult(p, Bracket(p / 2, p / 2), method, "C_p < p/2")
    if method is Method.POWER_TRICK_CEIL:
        if not p >= 2:
            raise RangeError("power_trick_ceil needs p >= 2")
        c = float(math.ceil(p / 2 - 1e-12))
        return BoundResult(p, Bracket(c, c), method, "C_p <= ceil(p/2)")
    if method is Method.BREVIG:
        if _within(p, 2, 4):
            return BoundResult(p, brevig_value(min(p, 4.0), settings), method, "B(p), 2 <= p <= 4")
        if 4 < p <= 5 + RANGE_TOL:
            return BoundResult(p, brevig_value(p / 2, settings).scale(2.0), method,
                               "2 B(p/2) (reconstructed), 4 < p <= 5")
        raise RangeError(f"brevig reference defined for 2 <= p <= 5, got p={p!r}")
    raise RangeError(f"method {method.value} is not a reference bound")


@dataclass(frozen=True)
class Figure1Row:
    p: float
    new_over_p: Bracket
    brevig_over_p: float

    def csv_fields(self) -> list[str]:
        return [f"{self.p:.12g}", f"{self.new_over_p.lo:.12g}", f"{self.new_over_p.hi:.12g}",
                f"{self.brevig_over_p:.12g}"]


FIGURE1_HEADER = ["p", "new_over_p_lo", "new_over_p_hi", "brevig_over_p"]


def p_grid(p_min: float, p_max: float, step: float) -> list[float]:
    """Inclusive grid, rounded to 12 decimals to avoid drift."""
    if not step > 0:
        raise RangeError("step must be positive")
    count = int(math.floor((p_max - p_min) / step + 1e-9))
    return [round(p_min + i * step, 12) for i in range(count + 1)]


def figure1_row(p: float, settings: QuadSettings = DEFAULT_SETTINGS) -> Figure1Row:
    new = cp_upper(p, settings)
    ref = cp_reference(p, Method.BREVIG, settings)
    return Figure1Row(p, new.ratio_to_p, ref.ratio_to_p.mid)


def figure1_table(p_min: float, p_max: float, step: float, settings: QuadSettings = DEFAULT_SETTINGS) -> list[Figure1Row]:
    if not (_within(p_min, 2, 5) and _within(p_max, 2, 5) and p_min < p_max):
        raise RangeError("figure1 needs 2 <= p_min < p_max <= 5")
    grid = p_grid(p_min, p_max, step)
    workers = worker_count()
    if workers > 1:
        with ThreadPoolExecutor(workers) as pool:
            return list(pool.map(lambda q: figure1_row(q, settings), grid))
    return [figure1_row(q, settings) for q in grid]


@dataclass(frozen=True)
class BranchJump:
    new_low: Bracket
    new_high: Bracket
    brevig_left: Bracket
    brevig_right_limit: Bracket

    @property
    def new_jump(self) -> float:
        return abs(self.new_low.mid - self.new_high.mid)

    @property
    def new_width(self) -> float:
        return self.new_low.width + self.new_high.width

    @property
    def brevig_jump(self) -> float:
        return self.brevig_right_limit.mid - self.brevig_left.mid


def branch_jump_at_4(settings: QuadSettings = DEFAULT_SETTINGS) -> BranchJump:
    """Both branches of each curve evaluated at p = 4 (all divided by p).

    The new bound's branches meet; the reference curve's right branch
    2 B(p/2) tends to 2 B(2) = 2 while its left branch is B(4).
    """
    return BranchJump(
        _corollary_low(4.0, settings).ratio_to_p,
        _corollary_high(4.0, settings).ratio_to_p,
        brevig_value(4.0, settings).scale(0.25),
        brevig_value(2.0, settings).scale(0.5),
    )


__all__ = [
    "Method",
    "BoundResult",
    "sup_value_low",
    "sup_value_high",
    "low_series",
    "high_series",
    "cp_upper",
    "cp_reference",
    "brevig_value",
    "LOW_DELTAS",
    "HIGH_DELTAS",
    "Figure1Row",
    "FIGURE1_HEADER",
    "p_grid",
    "figure1_row",
    "figure1_table",
    "BranchJump",
    "branch_jump_at_4",
]
