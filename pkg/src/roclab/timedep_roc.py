"""Cumulative/dynamic time-dependent ROC under right censoring.

Cases at horizon ``t`` are subjects with onset by ``t``; controls are
disease-free beyond ``t``.  The accuracy fractions combine Kaplan-Meier
estimates through Bayes' rule:

    TPF(c, t) = P(Y >= c) * (1 - S(t | Y >= c)) / (1 - S(t))
    TNF(c, t) = P(Y <  c) * S(t | Y < c) / S(t)

with marker-subset and overall product-limit estimates.  All internal
survival arithmetic is exact rational (``fractions.Fraction``); floats are
produced by one final conversion.  With zero censoring everything
telescopes to plain counts, so these estimates agree bit-for-bit with the
binary-label estimators applied to ``D = I(T <= t)``.

The resulting curve is not automatically monotone under censoring; an
optional pool-adjacent-violators correction is available and off by
default, leaving the raw estimator untouched.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .core import as_prob_grid, default_prob_grid
from .errors import AllCensoredWarning, InvalidInputError, TimeOutOfRangeError
from .pooled_roc import RocCurveEstimate

__all__ = ["SurvivalSample", "StepSurvival", "kaplan_meier",
           "cumdyn_fractions", "timedep_roc", "timedep_auc"]


@dataclass(frozen=True)
class SurvivalSample:
    """Marker, follow-up time and event indicator (1 = onset observed)."""

    marker: np.ndarray
    time: np.ndarray
    event: np.ndarray

    def __post_init__(self):
        y = np.asarray(self.marker, dtype=float)
        t = np.asarray(self.time, dtype=float)
        e = np.asarray(self.event)
        if not (y.ndim == t.ndim == e.ndim == 1) or not (y.size == t.size == e.size):
            raise InvalidInputError("marker, time and event must be equal-length vectors")
        if y.size < 1:
            raise InvalidInputError("survival sample is empty")
        if not np.all(np.isfinite(y)):
            raise InvalidInputError("marker contains non-finite values")
        if not np.all(np.isfinite(t)) or np.any(t < 0.0):
            raise InvalidInputError("times must be finite and nonnegative")
        if not np.all(np.isin(np.asarray(e), (0, 1, True, False))):
            raise InvalidInputError("event indicators must be 0 or 1")
        object.__setattr__(self, "marker", y)
        object.__setattr__(self, "time", t)
        object.__setattr__(self, "event", np.asarray(e).astype(int))

    @property
    def n(self) -> int:
        return int(np.asarray(self.marker).size)


def _km_steps(times: np.ndarray, events: np.ndarray):
    """Distinct event times with the exact product-limit values after each."""
    event_times, counts = np.unique(times[events == 1], return_counts=True)
    t_sorted = np.sort(times)
    surv = []
    running = Fraction(1)
    for et, d in zip(event_times, counts):
        at_risk = times.size - int(np.searchsorted(t_sorted, et, side="left"))
        running *= Fraction(at_risk - int(d), at_risk)
        surv.append(running)
    return event_times, surv


def _km_exact_at(times: np.ndarray, events: np.ndarray, t: float) -> Fraction:
    """Exact Kaplan-Meier survival at one time, skipping curve assembly."""
    event_times, counts = np.unique(times[events == 1], return_counts=True)
    t_sorted = np.sort(times)
    running = Fraction(1)
    for et, d in zip(event_times, counts):
        if et > t:
            break
        at_risk = times.size - int(np.searchsorted(t_sorted, et, side="left"))
        running *= Fraction(at_risk - int(d), at_risk)
    return running


@dataclass(frozen=True)
class StepSurvival:
    """Right-continuous product-limit survival curve.

    ``jump_times`` are distinct times with at least one event;
    ``surv_values`` hold S just after each jump.  ``exact`` carries the
    same values as exact rationals; ``surv_values`` are their correctly
    rounded float images.
    """

    jump_times: np.ndarray
    surv_values: np.ndarray
    exact: tuple = field(repr=False, default=())

    def __post_init__(self):
        jt = np.asarray(self.jump_times, dtype=float)
        sv = np.asarray(self.surv_values, dtype=float)
        if jt.shape != sv.shape or jt.ndim != 1:
            raise InvalidInputError("jump_times and surv_values must be matching vectors")
        if jt.size and np.any(np.diff(jt) <= 0.0):
            raise InvalidInputError("jump times must be strictly increasing")
        if jt.size and (np.any(np.diff(sv) > 0.0) or sv[0] > 1.0 or np.any(sv < 0.0)):
            raise InvalidInputError("survival values must be nonincreasing within [0, 1]")

    def at(self, t):
        """S(t), right continuous; 1 before the first event time."""
        tv = np.asarray(t, dtype=float)
        if np.any(np.isnan(tv)):
            raise InvalidInputError("time is NaN")
        jt = np.asarray(self.jump_times, dtype=float)
        sv = np.concatenate([[1.0], np.asarray(self.surv_values, dtype=float)])
        out = sv[np.searchsorted(jt, tv, side="right")]
        return float(out) if np.isscalar(t) or tv.ndim == 0 else out

    def exact_at(self, t: float) -> Fraction:
        """S(t) as an exact rational."""
        idx = int(np.searchsorted(np.asarray(self.jump_times, dtype=float),
                                  float(t), side="right"))
        return Fraction(1) if idx == 0 else self.exact[idx - 1]


def _as_survival_arrays(times, events):
    t = np.asarray(times, dtype=float)
    e = np.asarray(events)
    if t.ndim != 1 or e.shape != t.shape or t.size < 1:
        raise InvalidInputError("times and events must be equal-length nonempty vectors")
    if not np.all(np.isfinite(t)) or np.any(t < 0.0):
        raise InvalidInputError("times must be finite and nonnegative")
    if not np.all(np.isin(e, (0, 1, True, False))):
        raise InvalidInputError("event indicators must be 0 or 1")
    return t, e.astype(int)


def kaplan_meier(times, events) -> StepSurvival:
    """Product-limit survival estimate.

    Ties at an event time follow the usual convention: subjects censored at
    that exact time stay in the risk set (events are processed first).  An
    input with no events at all is valid and yields S identically 1, with a
    warning.
    """
    t, e = _as_survival_arrays(times, events)
    if not np.any(e == 1):
        warnings.warn("no events observed: survival curve is identically 1",
                      AllCensoredWarning)
        return StepSurvival(jump_times=np.empty(0), surv_values=np.empty(0), exact=())
    jump_times, exact = _km_steps(t, e)
    return StepSurvival(jump_times=jump_times,
                        surv_values=np.array([float(f) for f in exact]),
                        exact=tuple(exact))


def _clamp01(f: Fraction) -> Fraction:
    return Fraction(0) if f < 0 else (Fraction(1) if f > 1 else f)


def _check_horizon(t: float) -> float:
    t = float(t)
    if not np.isfinite(t) or t <= 0.0:
        raise InvalidInputError(f"horizon must be a positive real, got {t}")
    return t


def cumdyn_fractions(s: SurvivalSample, c: float, t: float) -> tuple[float, float]:
    """Cumulative TPF and dynamic TNF at threshold ``c`` and horizon ``t``.

    Requires ``0 < 1 - S(t)`` and ``S(t) > 0``; otherwise the corresponding
    fraction is undefined and a time-out-of-range error names ``t``.
    Values are clamped to [0, 1] (the raw ratios can spill out under heavy
    censoring).
    """
    t = _check_horizon(t)
    if np.isnan(c):
        raise InvalidInputError("threshold is NaN")
    y, times, events = s.marker, s.time, s.event
    s_t = _km_exact_at(times, events, t)
    if s_t == 1:
        raise TimeOutOfRangeError(
            f"no event mass at or before t={t}: TPF denominator 1-S(t) is zero", t=t)
    if s_t == 0:
        raise TimeOutOfRangeError(
            f"no survival mass beyond t={t}: TNF denominator S(t) is zero", t=t)
    n = y.size
    ge = y >= c
    n_ge = int(ge.sum())
    if n_ge == 0:
        tpf = Fraction(0)
    else:
        s_ge = _km_exact_at(times[ge], events[ge], t)
        tpf = _clamp01(Fraction(n_ge, n) * (1 - s_ge) / (1 - s_t))
    if n_ge == n:
        tnf = Fraction(0)
    else:
        s_lt = _km_exact_at(times[~ge], events[~ge], t)
        tnf = _clamp01(Fraction(n - n_ge, n) * s_lt / s_t)
    return float(tpf), float(tnf)


def _sweep(s: SurvivalSample, t: float):
    """Exact (fpf, tpf) pairs at every observed threshold plus a top sentinel.

    Thresholds ascend, so fpf starts at exactly 1 (every marker is >= its
    minimum) and the sentinel contributes the (0, 0) corner.
    """
    y, times, events = s.marker, s.time, s.event
    s_t = _km_exact_at(times, events, t)
    if s_t == 1:
        raise TimeOutOfRangeError(
            f"no event mass at or before t={t}: TPF denominator 1-S(t) is zero", t=t)
    if s_t == 0:
        raise TimeOutOfRangeError(
            f"no survival mass beyond t={t}: FPF denominator S(t) is zero", t=t)
    order = np.argsort(y, kind="stable")
    times_sorted = times[order]
    events_sorted = events[order]
    y_sorted = y[order]
    uniq = np.unique(y_sorted)
    n = y.size
    fpf = []
    tpf = []
    for c in uniq:
        i = int(np.searchsorted(y_sorted, c, side="left"))
        share = Fraction(n - i, n)
        s_ge = _km_exact_at(times_sorted[i:], events_sorted[i:], t)
        fpf.append(_clamp01(share * s_ge / s_t))
        tpf.append(_clamp01(share * (1 - s_ge) / (1 - s_t)))
    fpf.append(Fraction(0))
    tpf.append(Fraction(0))
    return fpf, tpf


def _pav_nonincreasing(values: np.ndarray) -> np.ndarray:
    # pool-adjacent-violators projection onto nonincreasing sequences
    vals: list[float] = []
    wts: list[int] = []
    for x in reversed(values.tolist()):
        vals.append(x)
        wts.append(1)
        while len(vals) > 1 and vals[-2] > vals[-1]:
            w = wts[-2] + wts[-1]
            merged = (vals[-2] * wts[-2] + vals[-1] * wts[-1]) / w
            vals[-2:] = [merged]
            wts[-2:] = [w]
    out: list[float] = []
    for v, w in zip(vals, wts):
        out.extend([v] * w)
    return np.asarray(out[::-1])


def timedep_roc(s: SurvivalSample, t: float, grid=None, *,
                isotonic: bool = False) -> RocCurveEstimate:
    """Time-dependent ROC at horizon ``t``: ``ROC(p, t) = TPF(FPF^{-1}(p))``.

    The threshold sweep runs over all observed marker values; the
    generalized inverse picks, for each grid ``p``, the smallest threshold
    whose FPF is at most ``p`` (decided by exact rational comparison).  The
    attached ``auc`` is the exact trapezoid over the swept curve from
    ``timedep_auc``, not a grid integration.

    With ``isotonic=True`` both swept fraction sequences are first
    projected onto monotone sequences by pool-adjacent-violators;
    comparisons then run in float arithmetic.
    """
    t = _check_horizon(t)
    grid = default_prob_grid() if grid is None else as_prob_grid(grid)
    fpf, tpf = _sweep(s, t)
    roc = np.empty(grid.size)
    if isotonic:
        fpf_f = _pav_nonincreasing(np.array([float(f) for f in fpf]))
        tpf_f = _pav_nonincreasing(np.array([float(f) for f in tpf]))
        for i, p in enumerate(grid):
            for k in range(len(fpf)):
                if fpf_f[k] <= p:
                    roc[i] = tpf_f[k]
                    break
    else:
        tpf_f = [float(f) for f in tpf]
        for i, p in enumerate(grid):
            target = Fraction(float(p))
            for k in range(len(fpf)):
                if fpf[k] <= target:
                    roc[i] = tpf_f[k]
                    break
    return RocCurveEstimate(grid=grid, roc=roc, auc=timedep_auc(s, t))


def timedep_auc(s: SurvivalSample, t: float) -> float:
    """Area under the swept time-dependent curve (exact trapezoid).

    The trapezoid over the swept vertices reproduces the Mann-Whitney
    half-tie convention, so without censoring this equals the empirical
    AUC of the induced labels bit-for-bit.
    """
    t = _check_horizon(t)
    fpf, tpf = _sweep(s, t)
    area = Fraction(0)
    for k in range(len(fpf) - 1):
        area += (tpf[k] + tpf[k + 1]) * (fpf[k] - fpf[k + 1])
    area /= 2
    return float(_clamp01(area))
