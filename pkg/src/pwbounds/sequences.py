"""Zero sequences and the feasible families T(d1, d2), T1(p), T2(p)."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .errors import DomainError
from .kernel import check_exponent, is_level_start, midpoint

FEAS_TOL = 1e-12
EQ_TOL = 1e-9


@dataclass(frozen=True)
class SeparationParams:
    """Separation constraints: tau_1 >= delta1 and every later gap >= delta2."""

    delta1: float
    delta2: float

    def __post_init__(self):
        for name in ("delta1", "delta2"):
            v = getattr(self, name)
            if not (isinstance(v, (int, float)) and math.isfinite(v) and 0 < v <= 1 + FEAS_TOL):
                raise DomainError(f"{name} must lie in (0, 1], got {v!r}")


@dataclass(frozen=True)
class ZeroSequence:
    """tau_0 = 0 < tau_1 < ... < tau_N given explicitly, then tau_n = tau_N + (n - N) * tail_step."""

    explicit: tuple[float, ...]
    tail_step: float = 1.0
    tail_start: int | None = None

    def __post_init__(self):
        ex = tuple(float(t) for t in self.explicit)
        object.__setattr__(self, "explicit", ex)
        if not ex:
            raise DomainError("a zero sequence needs at least one explicit term")
        if self.tail_start is None:
            object.__setattr__(self, "tail_start", len(ex))
        elif self.tail_start != len(ex):
            raise DomainError(f"tail_start={self.tail_start} but {len(ex)} explicit terms given")
        if not all(math.isfinite(t) for t in ex):
            raise DomainError("sequence terms must be finite")
        prev = 0.0
        for i, t in enumerate(ex, start=1):
            if not t > prev:
                raise DomainError(f"sequence must be strictly increasing (tau_{i} = {t!r} <= {prev!r})")
            prev = t
        s = float(self.tail_step)
        object.__setattr__(self, "tail_step", s)
        if not (0 < s <= 1 + FEAS_TOL):
            raise DomainError(f"tail_step must lie in (0, 1], got {s!r}")

    @classmethod
    def from_rule(cls, rule: Callable[[int], float], n_explicit: int, tail_step: float = 1.0) -> "ZeroSequence":
        return cls(tuple(rule(n) for n in range(1, n_explicit + 1)), tail_step)

    @property
    def N(self) -> int:
        return len(self.explicit)

    @property
    def last(self) -> float:
        return self.explicit[-1]

    def term(self, n: int) -> float:
        if n < 0:
            raise IndexError(n)
        if n == 0:
            return 0.0
        if n <= self.N:
            return self.explicit[n - 1]
        return self.last + (n - self.N) * self.tail_step

    def terms(self, upto: int) -> list[float]:
        """[tau_0, ..., tau_upto]."""
        return [self.term(n) for n in range(upto + 1)]

    def stripe_of(self, x: float) -> int | None:
        """n with tau_n < x < tau_{n+1}, or None if x is a term."""
        if x > self.last:
            q = (x - self.last) / self.tail_step
            n = self.N + math.floor(q)
            if self.term(n) == x:
                return None
            if self.term(n) > x:
                n -= 1
            elif self.term(n + 1) <= x:
                n += 1
            return None if self.term(n + 1) == x else n
        terms = [0.0, *self.explicit]
        lo, hi = 0, len(terms) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if terms[mid] < x:
                lo = mid
            else:
                hi = mid
        if terms[hi] == x:
            return None
        return lo

    def truncated_below(self, r: float) -> int:
        """Number of terms tau_1.. strictly below r."""
        n = 0
        while self.term(n + 1) < r:
            n += 1
        return n

    def replace(self, index: int, value: float) -> "ZeroSequence":
        if not 1 <= index <= self.N:
            raise IndexError(index)
        ex = list(self.explicit)
        ex[index - 1] = value
        return ZeroSequence(tuple(ex), self.tail_step)

    def extended(self, upto: int) -> "ZeroSequence":
        """Same sequence with terms up to `upto` written out explicitly."""
        if upto <= self.N:
            return self
        return ZeroSequence(tuple(self.terms(upto)[1:]), self.tail_step)

    def to_json(self) -> dict:
        return {"explicit": list(self.explicit), "tail_step": self.tail_step, "tail_start": self.N}


@dataclass(frozen=True)
class MembershipReport:
    ok: bool
    family: str
    index: int | None = None
    clause: str | None = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return f"member of {self.family}"
        return f"not in {self.family}: n={self.index}, clause {self.clause}: {self.detail}"


@dataclass(frozen=True)
class FamilyT:
    params: SeparationParams

    @property
    def name(self) -> str:
        return f"T({self.params.delta1:.12g}, {self.params.delta2:.12g})"


@dataclass(frozen=True)
class FamilyT1:
    p: float

    @property
    def name(self) -> str:
        return f"T1({self.p:.12g})"


@dataclass(frozen=True)
class FamilyT2:
    p: float

    @property
    def name(self) -> str:
        return f"T2({self.p:.12g})"


def y_max(p: float) -> float:
    return 5.0 / 6.0 - 1.0 / p if p <= 3.6 else 2.0 / p


def _fail(family, n, clause, detail):
    return MembershipReport(False, family, n, clause, detail)


def _check_T(tau: ZeroSequence, fam: FamilyT) -> MembershipReport:
    d1, d2 = fam.params.delta1, fam.params.delta2
    if tau.term(1) < d1 - FEAS_TOL:
        return _fail(fam.name, 1, "tau_1 >= delta1", f"tau_1 = {tau.term(1):.12g} < {d1:.12g}")
    for n in range(1, tau.N):
        gap = tau.term(n + 1) - tau.term(n)
        if gap < d2 - FEAS_TOL:
            return _fail(fam.name, n, "gap >= delta2", f"tau_{n+1} - tau_{n} = {gap:.12g} < {d2:.12g}")
    if tau.tail_step < d2 - FEAS_TOL:
        return _fail(fam.name, tau.N, "gap >= delta2", f"tail step {tau.tail_step:.12g} < {d2:.12g}")
    return MembershipReport(True, fam.name)


def _t1_clause(t: list[float], n: int, p: float) -> str | None:
    """Which of the clauses (i)-(iii) holds at index n, if any."""
    if t[n + 1] - t[n] >= 2.0 / 3.0 - FEAS_TOL:
        return "i"
    xi = t[n + 1] - 2.0 / p
    if (
        xi >= 1 - EQ_TOL
        and is_level_start(xi, n, p)
        and t[n] < midpoint(xi - 1, p) + 4.0 / p
        and t[n + 2] >= midpoint(xi, p) + 4.0 / p - EQ_TOL
    ):
        return "ii"
    xi = t[n] - 2.0 / p + 1
    if xi >= 1 - EQ_TOL and is_level_start(xi, n, p) and t[n + 1] >= midpoint(xi, p) - EQ_TOL:
        return "iii"
    return None


def _horizon(tau: ZeroSequence) -> int:
    return tau.N + 12


def _check_T1(tau: ZeroSequence, fam: FamilyT1) -> MembershipReport:
    p = check_exponent(fam.p, 2.0, 4.0)
    H = _horizon(tau)
    t = tau.terms(H + 2)
    first = min(2.0 / math.pi, 2.0 / p)
    if t[1] < first - FEAS_TOL:
        return _fail(fam.name, 1, "tau_1 >= min(2/pi, 2/p)", f"tau_1 = {t[1]:.12g}")
    # with tail steps <= 1, tau_n - n never increases past the explicit part
    for n in range(1, tau.N + 1):
        if t[n] > n + FEAS_TOL:
            return _fail(fam.name, n, "tau_n <= n", f"tau_{n} = {t[n]:.12g}")
    for n in range(1, H + 1):
        if _t1_clause(t, n, p) is None:
            return _fail(fam.name, n, "(i)/(ii)/(iii)", "no clause holds")
    return MembershipReport(True, fam.name)


def _check_T2(tau: ZeroSequence, fam: FamilyT2) -> MembershipReport:
    p = check_exponent(fam.p, 2.0, 4.0)
    base = _check_T1(tau, FamilyT1(p))
    if not base:
        return MembershipReport(False, fam.name, base.index, f"T1 {base.clause}", base.detail)
    H = _horizon(tau)
    t = tau.terms(H + 5)
    if abs(t[1] - 2.0 / p) > EQ_TOL:
        return _fail(fam.name, 1, "I", f"tau_1 = {t[1]:.12g} != 2/p")

    for k in range(0, H + 1):
        slack = midpoint(k, p) - t[k + 1]
        if slack < -EQ_TOL:
            continue
        j = max(0, math.floor(slack * p / 4.0 + EQ_TOL))
        cap = -1 - 4.0 * j / p + 2.0 / p
        for n in range(k + 2, max(tau.N, k + 2) + 2):
            if t[n] > n + cap + EQ_TOL:
                return _fail(fam.name, k, "II", f"j={j}: tau_{n} = {t[n]:.12g} > {n + cap:.12g}")

    lowest = min(t[k + 1] - k for k in range(0, H + 1))
    j_top = math.floor((2.0 - p * lowest) / 4.0) + 1
    ym = y_max(p)
    for j in range(0, max(j_top, 0) + 1):
        shift = 4.0 * j / p
        k = next((k for k in range(0, H + 1) if t[k + 1] < k + 2.0 / p - shift - EQ_TOL), None)
        if k is None:
            continue
        xi = k - shift
        m = midpoint(xi, p)
        clause_a = (
            m - EQ_TOL <= t[k + 1] < xi + ym
            and abs(t[k + 2] - (t[k + 1] + 2.0 / 3.0)) <= EQ_TOL
            and t[k + 2] < m + 1
            and abs(t[k + 3] - (xi + 2 - 2.0 / p)) <= EQ_TOL
            and t[k + 4] >= m + 2 - EQ_TOL
        )
        clause_b = (
            p > 3.6
            and abs(t[k + 1] - (xi - 1.0 / 3.0 + 2.0 / p)) <= EQ_TOL
            and abs(t[k + 2] - (xi + 1 - 2.0 / p)) <= EQ_TOL
            and t[k + 3] >= m + 1 - EQ_TOL
        )
        if not (clause_a or clause_b):
            return _fail(fam.name, k, "III", f"j={j}, xi={xi:.12g}: neither (a) nor (b) holds")
    return MembershipReport(True, fam.name)


def validate_membership(tau: ZeroSequence, family) -> MembershipReport:
    """Check tau against T(d1, d2), T1(p) or T2(p); the report names the first violation.

    For the p-dependent families the clauses are checked on the explicit
    part plus a fixed horizon of tail terms; a unit tail step repeats
    the last pattern forever, so that horizon is exhaustive for it.
    """
    if isinstance(family, SeparationParams):
        family = FamilyT(family)
    if isinstance(family, FamilyT):
        return _check_T(tau, family)
    if isinstance(family, FamilyT1):
        return _check_T1(tau, family)
    if isinstance(family, FamilyT2):
        return _check_T2(tau, family)
    raise TypeError(f"unknown family {family!r}")


__all__ = [
    "SeparationParams",
    "ZeroSequence",
    "MembershipReport",
    "FamilyT",
    "FamilyT1",
    "FamilyT2",
    "y_max",
    "validate_membership",
    "FEAS_TOL",
    "EQ_TOL",
]
