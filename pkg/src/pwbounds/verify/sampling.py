"""Seeded samplers for feasible sequences under box and gap constraints."""

from __future__ import annotations

import math

import numpy as np

from ..errors import DomainError
from ..sequences import ZeroSequence, y_max


def propagate(lower, upper, gaps):
    """Tighten per-index bounds so that x[i+1] - x[i] >= gaps[i] is satisfiable.

    Returns (lower, upper) lists or None when the box is empty.
    """
    lo = [float(v) for v in lower]
    hi = [float(v) for v in upper]
    n = len(lo)
    for i in range(n - 1):
        lo[i + 1] = max(lo[i + 1], lo[i] + gaps[i])
    for i in range(n - 2, -1, -1):
        hi[i] = min(hi[i], hi[i + 1] - gaps[i])
    if any(a > b for a, b in zip(lo, hi)):
        return None
    return lo, hi


def sample_chain(rng: np.random.Generator, lower, upper, gaps, tight: float = 0.15):
    """Draw x_1 < ... < x_N inside the box with the given minimal gaps.

    With probability ``tight`` a coordinate is set to its smallest
    admissible value, so gap-equality boundaries get sampled too.
    Returns None when the constraints are infeasible.
    """
    box = propagate(lower, upper, gaps)
    if box is None:
        return None
    lo, hi = box
    out = []
    prev = -math.inf
    for i in range(len(lo)):
        a = max(lo[i], prev + (gaps[i - 1] if i else 0.0))
        b = hi[i]
        if a > b:
            return None
        x = a if rng.random() < tight else float(rng.uniform(a, b))
        out.append(x)
        prev = x
    return out


def separated_sequence(rng, n_terms: int, delta1: float, delta2: float, caps, tight: float = 0.15):
    """Sequence with tau_1 >= delta1, gaps >= delta2 and tau_n <= caps[n-1]; unit tail."""
    lower = [delta1] + [0.0] * (n_terms - 1)
    terms = sample_chain(rng, lower, caps, [delta2] * (n_terms - 1), tight)
    return None if terms is None else ZeroSequence(tuple(terms))


def lambda_low(p: float, n_terms: int) -> ZeroSequence:
    """tau_n = n - 1 + 2/p: the low-regime maximizer."""
    return ZeroSequence.from_rule(lambda n: n - 1 + 2.0 / p, n_terms)


def lambda_high(p: float, n_terms: int) -> ZeroSequence:
    """tau_n = n - 1/2 + 3/p: the high-regime maximizer."""
    return ZeroSequence.from_rule(lambda n: n - 0.5 + 3.0 / p, n_terms)


def t2_sequence(p: float, deviations, n_terms: int) -> ZeroSequence:
    """A reduced-family sequence built from lambda by shifted deviation patterns.

    ``deviations`` lists (k, kind, y) with kind "a" (needs y) or "b".
    Before the first deviation tau_n = n - 1 + 2/p; every pattern shifts
    the baseline by -4/p. Unit tail after the last explicit term.
    """
    terms: dict[int, float] = {}
    j = 0
    pos = 1
    for k, kind, y in sorted(deviations, key=lambda d: d[0]):
        if k + 1 < pos:
            raise DomainError(f"deviation at k={k} overlaps the previous pattern")
        for n in range(pos, k + 1):
            terms[n] = n - 1 + 2.0 / p - 4.0 * j / p
        xi = k - 4.0 * j / p
        if xi < 1 - 1e-12:
            raise DomainError(f"deviation at k={k} has xi={xi:.12g} < 1")
        if kind == "a":
            if not (0.5 - 1.0 / p - 1e-12 <= y < y_max(p)):
                raise DomainError(f"y={y!r} outside [1/2 - 1/p, y_max)")
            terms[k + 1] = xi + y
            terms[k + 2] = xi + y + 2.0 / 3.0
            terms[k + 3] = xi + 2 - 2.0 / p
            pos = k + 4
        elif kind == "b":
            if not p > 3.6:
                raise DomainError("pattern (b) needs p > 3.6")
            terms[k + 1] = xi - 1.0 / 3.0 + 2.0 / p
            terms[k + 2] = xi + 1 - 2.0 / p
            pos = k + 3
        else:
            raise DomainError(f"unknown pattern {kind!r}")
        j += 1
    last = max(n_terms, pos)
    for n in range(pos, last + 1):
        terms[n] = n - 1 + 2.0 / p - 4.0 * j / p
    return ZeroSequence(tuple(terms[n] for n in range(1, last + 1)))


def first_trigger(tau: ZeroSequence, p: float, j: int, horizon: int) -> int | None:
    """Smallest k >= 0 with tau_{k+1} < k + 2/p - 4j/p."""
    for k in range(horizon + 1):
        if tau.term(k + 1) < k + 2.0 / p - 4.0 * j / p:
            return k
    return None


__all__ = [
    "propagate",
    "sample_chain",
    "separated_sequence",
    "lambda_low",
    "lambda_high",
    "t2_sequence",
    "first_trigger",
]
