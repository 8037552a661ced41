"""Grid search for sup E_p over T(delta1, delta2).

Sequences have n_explicit free terms on the lattice delta1 + i*h with
tau_n <= n + span, followed by a unit tail anchored at the last term.
On such sequences the objective splits into one function per term:
with H_n the running integral of the level-n positive part,

    E_p(tau) = sum_{n<N} (H_n(tau_{n+1}) - H_n(tau_n)) + tail(tau_N)
             = sum_n phi_n(tau_n),

phi_n = H_{n-1} - H_n for n < N and phi_N = H_{N-1} + tail. Exhaustive
mode maximizes the sum exactly over all feasible lattice sequences by
dynamic programming over the gap constraints; ascent mode does
single-coordinate line searches, each of which is a maximization of one
phi_n over the admissible window.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from enum import Enum
from functools import cached_property

import numpy as np

from ..errors import ConvergenceError, DomainError, InfeasibleError
from ..kernel import check_exponent
from ..objective import ep, stripe_values, tail_bracket
from ..parallel import worker_count
from ..quadrature import DEFAULT_SETTINGS, Bracket, QuadSettings
from ..sequences import FEAS_TOL, SeparationParams, ZeroSequence, validate_membership

MAX_SWEEPS = 10_000


class Mode(str, Enum):
    EXHAUSTIVE = "exhaustive"
    ASCENT = "ascent"


@dataclass(frozen=True)
class OptimizerConfig:
    n_explicit: int
    grid_step: float
    restarts: int = 10
    rng_seed: int = 0
    mode: Mode = Mode.EXHAUSTIVE
    span: float = 0.5  # tau_n <= n + span

    def __post_init__(self):
        object.__setattr__(self, "mode", Mode(self.mode))
        if int(self.n_explicit) != self.n_explicit or self.n_explicit < 2:
            raise DomainError(f"n_explicit must be an integer >= 2, got {self.n_explicit!r}")
        if not (math.isfinite(self.grid_step) and self.grid_step > 0):
            raise DomainError(f"grid_step must be positive, got {self.grid_step!r}")
        if self.restarts < 1:
            raise DomainError("restarts must be positive")
        if not (math.isfinite(self.span) and self.span >= 0):
            raise DomainError("span must be nonnegative")


@dataclass
class GridProblem:
    """The lattice, its per-index windows and the separable objective pieces."""

    p: float
    d: SeparationParams
    cfg: OptimizerConfig
    settings: QuadSettings = DEFAULT_SETTINGS

    def __post_init__(self):
        check_exponent(self.p)
        h, N = self.cfg.grid_step, self.cfg.n_explicit
        self.gap = math.ceil((self.d.delta2 - FEAS_TOL) / h - 1e-9)
        lo = [0]
        for _ in range(N - 1):
            lo.append(lo[-1] + self.gap)
        hi = [math.floor((n + self.cfg.span - self.d.delta1) / h + 1e-9) for n in range(1, N + 1)]
        for n in range(N - 2, -1, -1):
            hi[n] = min(hi[n], hi[n + 1] - self.gap)
        if any(a > b for a, b in zip(lo, hi)):
            raise DomainError(
                f"empty feasible grid: delta=({self.d.delta1:.12g}, {self.d.delta2:.12g}), "
                f"grid_step={h:.12g}, n_explicit={N}, span={self.cfg.span:.12g}"
            )
        self.lo, self.hi = lo, hi
        self._tail_cache: dict[int, float] = {}

    def value(self, i: int) -> float:
        return self.d.delta1 + i * self.cfg.grid_step

    def values(self, lo: int, hi: int) -> np.ndarray:
        return self.d.delta1 + np.arange(lo, hi + 1) * self.cfg.grid_step

    def _running(self, level: int, lo: int, hi: int) -> np.ndarray:
        """H_level at lattice points lo..hi, relative to the point lo (or to 0 for level 0)."""
        x = self.values(lo, hi)
        starts = np.concatenate(([0.0 if level == 0 else x[0]], x[:-1]))
        inc, _ = stripe_values([level] * len(x), starts, x, self.p, self.settings)
        return np.cumsum(inc)

    def tails(self, lo: int, hi: int) -> np.ndarray:
        missing = [i for i in range(lo, hi + 1) if i not in self._tail_cache]
        N = self.cfg.n_explicit

        def one(i):
            return tail_bracket(self.value(i), N, 1.0, self.p, self.settings).mid

        workers = worker_count()
        if workers > 1 and len(missing) > 1:
            with ThreadPoolExecutor(workers) as pool:
                vals = list(pool.map(one, missing))
        else:
            vals = [one(i) for i in missing]
        self._tail_cache.update(zip(missing, vals))
        return np.array([self._tail_cache[i] for i in range(lo, hi + 1)])

    @cached_property
    def phi(self) -> list[np.ndarray]:
        """phi[n-1][i - lo[n-1]] for every lattice point i of term n."""
        N = self.cfg.n_explicit
        # H_L couples tau_L and tau_{L+1}; both reads must share one origin
        running = [self._running(0, self.lo[0], self.hi[0])]
        for L in range(1, N):
            running.append(self._running(L, self.lo[L - 1], self.hi[L]))
        out = []
        for n in range(1, N + 1):
            lo, hi = self.lo[n - 1], self.hi[n - 1]
            base = 0 if n == 1 else self.lo[n - 2]
            f = running[n - 1][lo - base: hi - base + 1].copy()
            if n < N:
                f -= running[n][: hi - lo + 1]
            else:
                f += self.tails(lo, hi)
            out.append(f)
        return out

    def objective(self, idx) -> float:
        return math.fsum(float(self.phi[n][i - self.lo[n]]) for n, i in enumerate(idx))

    def sequence(self, idx) -> ZeroSequence:
        return ZeroSequence(tuple(self.value(i) for i in idx))


def _first_argmax(v: np.ndarray) -> int:
    return int(np.flatnonzero(v == v.max())[0])


def exhaustive_search(prob: GridProblem) -> tuple[list[int], float]:
    """Exact lattice maximizer, lexicographically smallest among ties."""
    N, g = prob.cfg.n_explicit, prob.gap
    phi = prob.phi
    # best[n][i]: max of phi_n(i) + phi_{n+1} + ... over feasible continuations
    best = [None] * N
    best[N - 1] = phi[N - 1].copy()
    for n in range(N - 2, -1, -1):
        nxt = best[n + 1]
        suffix = np.maximum.accumulate(nxt[::-1])[::-1]
        lo, hi, lo1 = prob.lo[n], prob.hi[n], prob.lo[n + 1]
        first = np.arange(lo, hi + 1) + g - lo1
        best[n] = phi[n] + suffix[first]
    idx = []
    floor = prob.lo[0]
    for n in range(N):
        lo = prob.lo[n]
        cand = best[n][max(floor, lo) - lo:]
        i = max(floor, lo) + _first_argmax(cand)
        idx.append(i)
        floor = i + g
    return idx, prob.objective(idx)


def _random_start(rng: np.random.Generator, prob: GridProblem) -> list[int]:
    idx = []
    floor = prob.lo[0]
    for n in range(prob.cfg.n_explicit):
        lo, hi = max(floor, prob.lo[n]), prob.hi[n]
        i = int(rng.integers(lo, hi + 1))
        idx.append(i)
        floor = i + prob.gap
    return idx


def coordinate_ascent(prob: GridProblem, start: list[int]) -> tuple[list[int], float]:
    """Line searches over one coordinate at a time until no move improves."""
    idx = list(start)
    N, g = prob.cfg.n_explicit, prob.gap
    for _ in range(MAX_SWEEPS):
        moved = False
        for n in range(N):
            lo = max(prob.lo[n], idx[n - 1] + g if n else prob.lo[n])
            hi = min(prob.hi[n], idx[n + 1] - g if n < N - 1 else prob.hi[n])
            window = prob.phi[n][lo - prob.lo[n]: hi - prob.lo[n] + 1]
            j = lo + _first_argmax(window)
            if window[j - lo] > window[idx[n] - lo]:
                idx[n] = j
                moved = True
        if not moved:
            return idx, prob.objective(idx)
    raise ConvergenceError("coordinate ascent did not settle", prob.objective(idx), math.inf)


def ascent_search(prob: GridProblem) -> tuple[list[int], float]:
    rng = np.random.default_rng(prob.cfg.rng_seed)
    starts = [_random_start(rng, prob) for _ in range(prob.cfg.restarts)]
    results = [coordinate_ascent(prob, s) for s in starts]
    top = max(v for _, v in results)
    return min(i for i, v in results if v == top), top


def brute_force_sup(
    p: float, d: SeparationParams, cfg: OptimizerConfig, settings: QuadSettings = DEFAULT_SETTINGS
) -> tuple[ZeroSequence, Bracket]:
    """Best lattice sequence in T(d) and the bracket of E_p at it."""
    prob = GridProblem(p, d, cfg, settings)
    idx, _ = exhaustive_search(prob) if cfg.mode is Mode.EXHAUSTIVE else ascent_search(prob)
    best = prob.sequence(idx)
    report = validate_membership(best, d)
    if not report:
        raise InfeasibleError(f"optimizer produced an infeasible sequence: {report}", report)
    return best, ep(best, p, settings)


def lattice_sequences(prob: GridProblem):
    """Every feasible lattice index tuple, in lexicographic order (small instances only)."""
    import itertools

    ranges = [range(lo, hi + 1) for lo, hi in zip(prob.lo, prob.hi)]
    for idx in itertools.product(*ranges):
        if all(b - a >= prob.gap for a, b in zip(idx, idx[1:])):
            yield list(idx)


__all__ = [
    "Mode",
    "OptimizerConfig",
    "GridProblem",
    "brute_force_sup",
    "exhaustive_search",
    "coordinate_ascent",
    "ascent_search",
    "lattice_sequences",
]
