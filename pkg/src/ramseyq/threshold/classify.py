"""Validation, inversion and four-way asymptotic classification."""

from __future__ import annotations

import enum
from functools import lru_cache
from dataclasses import dataclass, replace
from fractions import Fraction

from .asymptotics import LINEAR, LOG, ZERO, Unsupported, expand
from .expr import Expr, Opaque, Sub, LogQuotient, Var, ceil_log2

DENSE_LIMIT = 4096
SCHEDULE_EXP = 40
N_MAX = 1 << SCHEDULE_EXP
TAIL_EXP = 20  # samples 2**20 .. 2**40 form the tail
C_SCAN = 64
INVERSE_HORIZON = 1 << 48


class ThresholdValidationError(ValueError):
    pass


class FunctionCase(enum.Enum):
    BOUNDED = "Case1_Bounded"
    SUBLINEAR_UNBOUNDED = "Case2_SublinearUnbounded"
    LINEAR_FAR_FROM_N = "Case3_LinearButFarFromN"
    NEAR_N = "Case4_NearN"

    @property
    def number(self) -> int:
        return list(FunctionCase).index(self) + 1


class Certainty(enum.Enum):
    PROVED = "Proved"
    EMPIRICAL = "Empirical"


class Reason(enum.Enum):
    CONSTANT_LOG_BOUNDED = "ConstantLogBounded"
    NOT_POLY_COMPUTABLE = "NotPolyComputable"
    SUBLINEAR_UNBOUNDED_ETH = "SublinearUnbounded_ETH"
    LINEAR_NOT_CLB_ETH = "LinearNotCLB_ETH"


@dataclass(frozen=True)
class FunctionClass:
    case: FunctionCase
    certainty: Certainty
    constant: int | None = None  # witness c for cases 1 and 4
    n0: int | None = None
    linear_constant: Fraction | None = None  # case 3: f(n) >= r*n on the tail
    schedule: tuple[tuple[int, Fraction], ...] = ()  # s(n) = n/f(n) or deficit/log ratios
    horizon: int | None = None  # N_max for empirical results
    poly_time: bool = True
    nondecreasing: bool = True  # dense sampling found no decrease
    note: str = ""


@dataclass(frozen=True)
class Verdict:
    tractable: bool
    reason: Reason
    assumption: str | None


def doubling_schedule() -> list[int]:
    return [1 << k for k in range(1, SCHEDULE_EXP + 1)]


def validation_points() -> list[int]:
    pts = set(range(1, DENSE_LIMIT + 1))
    for k in range(12, SCHEDULE_EXP + 1):
        pts.update(((1 << k) - 1, 1 << k))
    return sorted(pts)


def monotone_by_construction(f: Expr) -> bool:
    """True when every node preserves monotonicity, so sampling is a formality."""
    return not any(isinstance(node, (Sub, LogQuotient, Opaque)) for node in f.walk())


def _check_values(f: Expr) -> None:
    first_ok = None
    for n in validation_points():
        v = f(n)
        if v > n + 1:
            if first_ok is not None:
                raise ThresholdValidationError(
                    f"f({n}) = {v} exceeds n + 1 = {n + 1} after f({first_ok}) <= {first_ok + 1}"
                )
        elif first_ok is None:
            first_ok = n
    if first_ok is None:
        raise ThresholdValidationError(f"f(n) exceeds n + 1 at every sampled n up to {N_MAX}")


def first_decrease(f: Expr) -> int | None:
    """Least sampled n with f(n) > f(n + 1), or None."""
    if monotone_by_construction(f):
        return None
    pts = validation_points()
    prev = f(1)
    for n in range(1, DENSE_LIMIT + 1):
        nxt = f(n + 1)
        if nxt < prev:
            return n
        prev = nxt
    for n in pts:
        if n > DENSE_LIMIT and f(n + 1) < f(n):
            return n
    return None


@lru_cache(maxsize=256)
def validate_threshold(f: Expr, require_monotone: bool = True) -> None:
    """Reject f unless it is usable as a quantifier threshold.

    Values above n + 1 are tolerated on an initial segment only (a constant c
    exceeds n + 1 for n < c - 1); they make the quantifier false there, the
    same as n + 1 would. With ``require_monotone`` f must also satisfy
    f(n) <= f(n + 1) at every sampled n.
    """
    _check_values(f)
    if require_monotone:
        n = first_decrease(f)
        if n is not None:
            raise ThresholdValidationError(f"f is decreasing: f({n}) = {f(n)} > f({n + 1}) = {f(n + 1)}")


def inverse_threshold(
    f: Expr, h: int, horizon: int = INVERSE_HORIZON, validate: bool = True
) -> int | None:
    """min{q >= 1 : f(q) >= h}, or None when no q up to the horizon qualifies.

    The search is exponential then binary, so f must be nondecreasing.
    """
    if h < 0:
        raise ValueError("h must be nonnegative")
    if validate:
        validate_threshold(f, require_monotone=True)
    if f(1) >= h:
        return 1
    hi = 2
    while f(hi) < h:
        if hi >= horizon:
            return None
        hi = min(hi * 2, horizon)
    lo = hi // 2  # f(lo) < h
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if f(mid) >= h:
            hi = mid
        else:
            lo = mid
    return hi


def _samples(f: Expr) -> list[tuple[int, int]]:
    out = [(n, f(n)) for n in doubling_schedule()]
    for (n1, v1), (n2, v2) in zip(out, out[1:]):
        if v2 < v1:
            raise ThresholdValidationError(f"f is decreasing: f({n1}) = {v1} > f({n2}) = {v2}")
    return out


def _n0(samples, holds) -> int | None:
    """Least sampled n from which `holds` is true through the end of the schedule."""
    n0 = None
    for n, v in reversed(samples):
        if not holds(n, v):
            break
        n0 = n
    return n0


def _tail(samples):
    return [(n, v) for n, v in samples if n >= 1 << TAIL_EXP]


def _deficit_ratio(n: int, v: int) -> Fraction:
    return Fraction(n - v, ceil_log2(n))


def _case1(samples, certainty, constant=None, note="") -> FunctionClass:
    c = max(v for _, v in _tail(samples)) if constant is None else constant
    return FunctionClass(
        FunctionCase.BOUNDED, certainty, constant=c,
        n0=_n0(samples, lambda n, v: v <= c),
        horizon=N_MAX if certainty is Certainty.EMPIRICAL else None, note=note,
    )


def _case2(samples, certainty) -> FunctionClass:
    sched = tuple((n, Fraction(n, v)) for n, v in samples if v > 0)
    return FunctionClass(
        FunctionCase.SUBLINEAR_UNBOUNDED, certainty, schedule=sched,
        horizon=N_MAX if certainty is Certainty.EMPIRICAL else None,
    )


def _case3(samples, certainty, note="") -> FunctionClass:
    tail = _tail(samples)
    r = min(Fraction(v, n) for n, v in tail)
    sched = tuple((n, _deficit_ratio(n, v)) for n, v in tail)
    return FunctionClass(
        FunctionCase.LINEAR_FAR_FROM_N, certainty, linear_constant=r, schedule=sched,
        n0=_n0(samples, lambda n, v: Fraction(v, n) >= r),
        horizon=N_MAX if certainty is Certainty.EMPIRICAL else None, note=note,
    )


def _near_n_constant(samples) -> int:
    ratios = [_deficit_ratio(n, v) for n, v in _tail(samples)]
    worst = max(ratios)
    return max(0, -(-worst.numerator // worst.denominator))


def _case4(samples, certainty, c: int) -> FunctionClass:
    return FunctionClass(
        FunctionCase.NEAR_N, certainty, constant=c,
        n0=_n0(samples, lambda n, v: v >= n - c * ceil_log2(n)),
        horizon=N_MAX if certainty is Certainty.EMPIRICAL else None,
    )


def _symbolic(f: Expr, samples) -> FunctionClass | None:
    try:
        e = expand(f)
    except Unsupported:
        return None
    top = e.top
    if top is None:  # identically zero from some point on
        return _case1(samples, Certainty.PROVED, constant=0)
    if top <= ZERO:
        c = e.constant()
        if c is None:
            return None
        return _case1(samples, Certainty.PROVED, constant=int(c))
    lead_order, coef = e.lead if e.lead else (None, None)
    if lead_order is None or coef <= 0:
        return None
    if lead_order < LINEAR:
        return _case2(samples, Certainty.PROVED)
    if lead_order > LINEAR or coef > 1:
        return None
    if coef < 1:
        return _case3(samples, Certainty.PROVED)
    deficit = expand(Var()) - e
    dtop = deficit.top
    if dtop is None or dtop <= LOG:
        return _case4(samples, Certainty.PROVED, _near_n_constant(samples))
    if deficit.lead is not None and deficit.lead[0] > LOG and deficit.lead[1] > 0:
        return _case3(samples, Certainty.PROVED)
    return None


def _empirical(samples) -> FunctionClass:
    tail = _tail(samples)
    first, last = tail[0][1], tail[-1][1]
    if first == last:
        note = "" if last <= C_SCAN else f"plateau above scan limit {C_SCAN}"
        return _case1(samples, Certainty.EMPIRICAL, note=note)
    (n_mid, v_mid), (n_end, v_end) = tail[0], tail[-1]
    # s(n) = n / f(n) must grow by a visible margin across the tail
    if v_mid == 0 or Fraction(n_end, v_end) >= Fraction(9, 8) * Fraction(n_mid, v_mid):
        return _case2(samples, Certainty.EMPIRICAL)
    half = len(tail) // 2

    def ceil_ratio(n, v):
        r = _deficit_ratio(n, v)
        return -(-r.numerator // r.denominator)

    early = max(ceil_ratio(n, v) for n, v in tail[: half + 1])
    late = max(ceil_ratio(n, v) for n, v in tail[half:])
    c = max(0, early, late)
    if late <= early and c <= C_SCAN:
        return _case4(samples, Certainty.EMPIRICAL, c)
    note = "deficit/log ratio keeps growing" if late > early else f"witness constant above scan limit {C_SCAN}"
    return _case3(samples, Certainty.EMPIRICAL, note=note)


@lru_cache(maxsize=256)
def classify(f: Expr, validate: bool = True) -> FunctionClass:
    """Place f in exactly one of the four asymptotic cases.

    Monotonicity is only enforced on the doubling schedule; a decrease
    elsewhere is recorded in ``nondecreasing`` rather than rejected, since the
    tractability criteria do not depend on it.
    """
    if validate:
        validate_threshold(f, require_monotone=False)
    samples = _samples(f)
    opaque = [x for x in f.walk() if isinstance(x, Opaque)]
    cls = None if opaque else _symbolic(f, samples)
    if cls is None:
        cls = _empirical(samples)
    return replace(
        cls,
        poly_time=all(x.poly_time for x in opaque),
        nondecreasing=first_decrease(f) is None,
    )


def dichotomy_verdict(cls: FunctionClass) -> Verdict:
    if not cls.poly_time:
        return Verdict(False, Reason.NOT_POLY_COMPUTABLE, None)
    if cls.case in (FunctionCase.BOUNDED, FunctionCase.NEAR_N):
        return Verdict(True, Reason.CONSTANT_LOG_BOUNDED, None)
    if cls.case is FunctionCase.SUBLINEAR_UNBOUNDED:
        return Verdict(False, Reason.SUBLINEAR_UNBOUNDED_ETH, "ETH")
    return Verdict(False, Reason.LINEAR_NOT_CLB_ETH, "ETH")
