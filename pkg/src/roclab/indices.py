"""Scalar summaries of ROC curves and CDF pairs: AUC, Youden index, cutoffs.

The Youden index is the largest vertical gap between the two population
CDFs, ``max_c {F_nondiseased(c) - F_diseased(c)}``, equivalently
``max_p {roc(p) - p}``.  Its maximizer is the optimal threshold ``c*`` and
``p* = 1 - F_nondiseased(c*)`` is the false positive fraction in use there.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .core import as_prob_grid, validate_sample
from .errors import InvalidInputError, NegativeYoudenWarning, NumericError

_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class YoudenResult:
    """Youden index with the threshold and FPF at which it is attained."""

    yi: float
    c_star: float
    p_star: float

    def __post_init__(self):
        if np.isnan(self.yi) or not -1.0 <= self.yi <= 1.0 + 1e-12:
            raise InvalidInputError(f"Youden index {self.yi} outside [-1, 1]")
        if np.isnan(self.c_star):
            raise InvalidInputError("threshold is NaN")
        if np.isnan(self.p_star) or not 0.0 <= self.p_star <= 1.0:
            raise InvalidInputError(f"p_star {self.p_star} is not a probability")


def auc_from_curve(curve) -> float:
    """Trapezoidal area under ``curve.roc`` over ``curve.grid``, clamped to [0, 1]."""
    grid = as_prob_grid(curve.grid)
    if grid.size < 2:
        raise InvalidInputError("AUC needs a grid with at least two points")
    roc = np.asarray(curve.roc, dtype=float)
    if roc.shape != grid.shape:
        raise InvalidInputError("curve and grid lengths differ")
    return float(min(1.0, max(0.0, np.trapezoid(roc, grid))))


def _golden_max(f, lo: float, hi: float, iters: int = 100):
    # golden-section search for the maximum of f on [lo, hi]
    a, b = lo, hi
    x1 = b - _INVPHI * (b - a)
    x2 = a + _INVPHI * (b - a)
    f1, f2 = f(x1), f(x2)
    for _ in range(iters):
        if b - a <= 1e-13 * (1.0 + abs(a) + abs(b)):
            break
        if f1 < f2:
            a, x1, f1 = x1, x2, f2
            x2 = a + _INVPHI * (b - a)
            f2 = f(x2)
        else:
            b, x2, f2 = x2, x1, f1
            x1 = b - _INVPHI * (b - a)
            f1 = f(x1)
    return (x1, f1) if f1 >= f2 else (x2, f2)


def youden_from_cdfs(cdf_d, cdf_dbar, search_lo: float, search_hi: float,
                     candidates=None, grid_size: int = 1000) -> YoudenResult:
    """Maximize ``cdf_dbar(c) - cdf_d(c)`` over ``[search_lo, search_hi]``.

    A dense grid scan (``grid_size`` points) locates the rough maximizer and
    a golden-section pass refines it; the refined point is kept only when it
    strictly improves the gap, so piecewise-constant (empirical) inputs keep
    their exact grid/candidate maximum.

    Parameters
    ----------
    cdf_d, cdf_dbar : callable
        CDFs of the diseased and nondiseased populations.
    search_lo, search_hi : float
        Search interval; must cover both supports for a meaningful answer.
    candidates : array_like, optional
        Extra thresholds evaluated exactly, e.g. pooled sample values.  With
        empirical CDFs, passing the pooled observations makes the scan hit
        every jump, so the result is the two-sample Kolmogorov-Smirnov
        statistic up to one rounding of the CDF difference (use
        ``youden_empirical`` on raw samples for the exact-rational value).
    grid_size : int
        Number of scan points, default 1000.

    Notes
    -----
    Ties are broken toward the smallest threshold.  A negative best gap is
    returned as computed, with a warning; reversing the positivity rule is
    left to the caller.
    """
    if not np.isfinite(search_lo) or not np.isfinite(search_hi) or search_lo >= search_hi:
        raise InvalidInputError("need finite search_lo < search_hi")
    pts = np.linspace(search_lo, search_hi, max(2, grid_size))
    if candidates is not None:
        extra = np.asarray(candidates, dtype=float).ravel()
        extra = extra[(extra >= search_lo) & (extra <= search_hi)]
        pts = np.unique(np.concatenate([pts, extra]))

    gaps = np.asarray(cdf_dbar(pts), dtype=float) - np.asarray(cdf_d(pts), dtype=float)
    if not np.all(np.isfinite(gaps)):
        raise NumericError("non-finite CDF evaluation during Youden search")
    best = int(np.argmax(gaps))  # first max = smallest c
    c_star, yi = float(pts[best]), float(gaps[best])

    def scalar(cdf, c):
        # tolerate callables that return a length-1 array for scalar input
        return float(np.asarray(cdf(c), dtype=float).ravel()[0])

    lo = float(pts[best - 1]) if best > 0 else search_lo
    hi = float(pts[best + 1]) if best + 1 < pts.size else search_hi
    c_ref, yi_ref = _golden_max(lambda c: scalar(cdf_dbar, c) - scalar(cdf_d, c),
                                lo, hi)
    if not np.isfinite(yi_ref):
        raise NumericError("non-finite CDF evaluation during Youden refinement")
    if yi_ref > yi:
        c_star, yi = float(c_ref), float(yi_ref)

    if yi < 0.0:
        warnings.warn("best Youden gap is negative; marker orders the groups "
                      "the other way", NegativeYoudenWarning)
    p_star = min(1.0, max(0.0, 1.0 - scalar(cdf_dbar, c_star)))
    return YoudenResult(yi=yi, c_star=c_star, p_star=p_star)


def youden_from_curve(curve, nondiseased_quantile) -> YoudenResult:
    """Maximize ``roc(p) - p`` over the curve grid.

    ``c* = nondiseased_quantile(1 - p*)``.  Ties are broken toward the
    largest ``p`` (equivalently the smallest threshold).  When the maximizer
    is ``p* = 1`` the threshold is ``-inf``: everything classified positive.
    """
    grid = as_prob_grid(curve.grid)
    roc = np.asarray(curve.roc, dtype=float)
    if roc.shape != grid.shape:
        raise InvalidInputError("curve and grid lengths differ")
    gaps = roc - grid
    best = int(gaps.size - 1 - np.argmax(gaps[::-1]))  # last max = largest p
    yi, p_star = float(gaps[best]), float(grid[best])
    if yi < 0.0:
        warnings.warn("best Youden gap is negative; marker orders the groups "
                      "the other way", NegativeYoudenWarning)
    c_star = -math.inf if p_star >= 1.0 else float(nondiseased_quantile(1.0 - p_star))
    return YoudenResult(yi=yi, c_star=c_star, p_star=p_star)


def youden_empirical(diseased, nondiseased) -> YoudenResult:
    """Youden index from the two empirical CDFs, exact over pooled values.

    The ECDF gap at every pooled observation is carried as an integer count
    (``#{nd <= c} n_D - #{d <= c} n_ND``) and divided once at the end, so
    ``yi`` is the correctly rounded one-sided two-sample Kolmogorov-Smirnov
    statistic, bit-identical to an exact-rational evaluation.  Ties break
    toward the smallest threshold; a candidate below the pooled minimum
    (gap zero: everything classified positive) is included, matching the
    search-interval behaviour of ``youden_from_cdfs``.
    """
    d = np.sort(validate_sample(diseased, "diseased"))
    nd = np.sort(validate_sample(nondiseased, "nondiseased"))
    cand = np.unique(np.concatenate([[d[0] - 1.0, nd[0] - 1.0], d, nd]))
    k_nd = np.searchsorted(nd, cand, side="right").astype(np.int64)
    k_d = np.searchsorted(d, cand, side="right").astype(np.int64)
    num = k_nd * d.size - k_d * nd.size
    best = int(np.argmax(num))  # first max = smallest threshold
    yi = float(num[best] / (d.size * nd.size))
    p_star = float((nd.size - k_nd[best]) / nd.size)
    return YoudenResult(yi=yi, c_star=float(cand[best]), p_star=p_star)
