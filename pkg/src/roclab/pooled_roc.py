"""Pooled (no-covariate) ROC estimation.

Four estimators of ``ROC(p) = 1 - F_D(F_ND^{-1}(1-p))`` from two samples:

* ``empirical_roc`` / ``empirical_auc``: plug-in ECDFs; the AUC is the
  Mann-Whitney statistic with half credit for ties.
* ``kernel_roc`` / ``kernel_auc``: normal-kernel smoothed CDFs with
  Silverman or cross-validated bandwidths; the AUC has a closed form.
* ``bb_roc``: Bayesian bootstrap ensemble; each draw reweights both
  samples with flat Dirichlet weights.
* ``dpm_fit`` / ``dpm_roc`` / ``dpm_auc``: Dirichlet process mixture of
  normals per group, fit by truncated stick-breaking blocked Gibbs; the
  per-draw AUC again has a closed form.

Smooth CDFs (kernel and mixture) are inverted by vectorized bisection; the
empirical estimator resolves quantile ranks in exact integer arithmetic so
grid probabilities that sit exactly on ECDF jumps are handled
deterministically.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import ndtr
from scipy.stats import rankdata

from .core import (SeedSpec, as_prob_grid, default_prob_grid, dirichlet_uniform,
                   validate_sample)
from .errors import DegenerateSampleError, InvalidInputError, NumericError
from .indices import youden_from_cdfs


@dataclass(frozen=True)
class RocCurveEstimate:
    """A ROC curve on a probability grid, with its AUC and optional bands."""

    grid: np.ndarray
    roc: np.ndarray
    auc: float
    band_lo: np.ndarray | None = None
    band_hi: np.ndarray | None = None
    auc_ci: tuple[float, float] | None = None

    def __post_init__(self):
        grid = as_prob_grid(self.grid)
        roc = np.asarray(self.roc, dtype=float)
        if roc.shape != grid.shape:
            raise InvalidInputError("roc and grid lengths differ")
        if np.any(roc < -1e-9) or np.any(roc > 1.0 + 1e-9):
            raise InvalidInputError("roc values outside [0, 1]")
        if grid[-1] == 1.0 and abs(roc[-1] - 1.0) > 1e-6:
            raise InvalidInputError("roc at p=1 must equal 1")
        if not np.isfinite(self.auc) or not -1e-9 <= self.auc <= 1.0 + 1e-9:
            raise InvalidInputError(f"auc {self.auc} is not a probability")
        for name in ("band_lo", "band_hi"):
            band = getattr(self, name)
            if band is not None and np.asarray(band).shape != grid.shape:
                raise InvalidInputError(f"{name} and grid lengths differ")
        if self.band_lo is not None and self.band_hi is not None:
            lo = np.asarray(self.band_lo, dtype=float)
            hi = np.asarray(self.band_hi, dtype=float)
            if np.any(lo > roc + 1e-12) or np.any(hi < roc - 1e-12):
                raise InvalidInputError("bands must bracket the curve")


@dataclass(frozen=True)
class PosteriorEnsemble:
    """S posterior ROC draws on a common grid, with per-draw AUCs.

    ``yis``, ``thresholds`` and ``p_stars`` are filled when the producing
    estimator was asked to track the Youden index per draw.
    """

    grid: np.ndarray
    curves: np.ndarray
    aucs: np.ndarray
    yis: np.ndarray | None = None
    thresholds: np.ndarray | None = None
    p_stars: np.ndarray | None = None

    def __post_init__(self):
        grid = as_prob_grid(self.grid)
        curves = np.asarray(self.curves, dtype=float)
        aucs = np.asarray(self.aucs, dtype=float)
        if curves.ndim != 2 or curves.shape[1] != grid.size:
            raise InvalidInputError("curves must have shape (S, len(grid))")
        if curves.shape[0] < 1:
            raise InvalidInputError("ensemble needs at least one draw")
        if aucs.shape != (curves.shape[0],):
            raise InvalidInputError("one auc per draw required")
        if np.any(curves < -1e-9) or np.any(curves > 1.0 + 1e-9):
            raise InvalidInputError("curve values outside [0, 1]")

    @property
    def n_draws(self) -> int:
        return int(np.asarray(self.curves).shape[0])

    def summarize(self, level: float = 0.95) -> RocCurveEstimate:
        """Ensemble mean curve with equal-tail pointwise percentile bands."""
        if not 0.0 < level < 1.0:
            raise InvalidInputError("level must be in (0, 1)")
        tail = 100.0 * (1.0 - level) / 2.0
        curves = np.asarray(self.curves, dtype=float)
        mean = curves.mean(axis=0)
        lo = np.percentile(curves, tail, axis=0)
        hi = np.percentile(curves, 100.0 - tail, axis=0)
        # percentile bands bracket the mean in all but pathological
        # ensembles; nudge so the estimate invariant always holds
        lo = np.minimum(lo, mean)
        hi = np.maximum(hi, mean)
        aucs = np.asarray(self.aucs, dtype=float)
        auc_ci = (float(np.percentile(aucs, tail)), float(np.percentile(aucs, 100.0 - tail)))
        return RocCurveEstimate(grid=self.grid, roc=mean, auc=float(aucs.mean()),
                                band_lo=lo, band_hi=hi, auc_ci=auc_ci)

    def youden_summary(self, level: float = 0.95) -> dict | None:
        """Posterior mean and equal-tail interval for yi, c* and p*."""
        if self.yis is None:
            return None
        tail = 100.0 * (1.0 - level) / 2.0
        out = {}
        for name, vals in (("yi", self.yis), ("c_star", self.thresholds),
                           ("p_star", self.p_stars)):
            v = np.asarray(vals, dtype=float)
            out[name] = (float(v.mean()), float(np.percentile(v, tail)),
                         float(np.percentile(v, 100.0 - tail)))
        return out


@dataclass(frozen=True)
class MixtureDraw:
    """One finite normal mixture: weights, component means and variances."""

    weights: np.ndarray
    means: np.ndarray
    variances: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        mu = np.asarray(self.means, dtype=float)
        var = np.asarray(self.variances, dtype=float)
        if not (w.shape == mu.shape == var.shape) or w.ndim != 1 or w.size < 1:
            raise InvalidInputError("weights, means, variances must be equal-length vectors")
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(mu)) and np.all(np.isfinite(var))):
            raise InvalidInputError("mixture draw contains non-finite values")
        if np.any(w < 0.0) or abs(w.sum() - 1.0) > 1e-10:
            raise InvalidInputError("weights must be a simplex vector (sum 1 within 1e-10)")
        if np.any(var <= 0.0):
            raise InvalidInputError("variances must be strictly positive")


@dataclass(frozen=True)
class DpmConfig:
    """Settings for the truncated Dirichlet process mixture sampler.

    ``centre_mean``, ``centre_var`` and ``rate`` default to data-driven
    values at fit time: sample mean, 10x sample variance, and sample
    variance respectively.  ``shape``/``rate`` parameterize the Gamma prior
    on component precisions (rate parameterization).
    """

    seed: SeedSpec
    truncation: int = 10
    alpha: float = 1.0
    centre_mean: float | None = None
    centre_var: float | None = None
    shape: float = 2.0
    rate: float | None = None
    burn_in: int = 500
    n_save: int = 1000

    def __post_init__(self):
        if not isinstance(self.seed, SeedSpec):
            raise InvalidInputError("seed must be a SeedSpec")
        if self.truncation < 2:
            raise InvalidInputError("truncation must be at least 2")
        if self.alpha <= 0.0 or self.shape <= 0.0:
            raise InvalidInputError("alpha and shape must be positive")
        if self.centre_var is not None and self.centre_var <= 0.0:
            raise InvalidInputError("centre_var must be positive")
        if self.rate is not None and self.rate <= 0.0:
            raise InvalidInputError("rate must be positive")
        if self.burn_in < 0 or self.n_save < 1:
            raise InvalidInputError("need burn_in >= 0 and n_save >= 1")


# ---------------------------------------------------------------------------
# empirical estimator


def empirical_auc(diseased, nondiseased) -> float:
    """Mann-Whitney AUC: Pr(Y_D > Y_ND) + 0.5 Pr(Y_D = Y_ND), exactly.

    Computed through midranks; the rank sums are dyadic rationals held
    exactly in floats, so the result is bit-identical to the brute-force
    double loop over all pairs.
    """
    d = validate_sample(diseased, "diseased")
    nd = validate_sample(nondiseased, "nondiseased")
    ranks = rankdata(np.concatenate([d, nd]))
    rank_sum = ranks[: d.size].sum()
    return (rank_sum - d.size * (d.size + 1) / 2.0) / (d.size * nd.size)


def _inverse_rank(n: int, one_minus_p_num: int, den: int) -> int:
    # smallest j with j/n >= (den - num)/den for p = num/den, as exact ints
    return -((-n * one_minus_p_num) // den)


def empirical_roc(diseased, nondiseased, grid=None) -> RocCurveEstimate:
    """Plug-in ECDF estimate of the ROC curve on a probability grid.

    ``roc(p) = 1 - F_D(q)`` with ``q`` the smallest nondiseased order
    statistic whose ECDF level reaches ``1 - p``; ``roc(1) = 1`` by
    convention and ``roc(0)`` is the right limit (the fraction of diseased
    above the nondiseased maximum).  Rank selection uses exact integer
    arithmetic on the binary value of each grid probability.
    """
    d = np.sort(validate_sample(diseased, "diseased"))
    nd = np.sort(validate_sample(nondiseased, "nondiseased"))
    grid = default_prob_grid() if grid is None else as_prob_grid(grid)
    roc = np.empty(grid.size)
    for i, p in enumerate(grid):
        if p == 1.0:
            roc[i] = 1.0
            continue
        num, den = float(p).as_integer_ratio()
        j = _inverse_rank(nd.size, den - num, den)
        q = nd[j - 1]
        roc[i] = (d.size - np.searchsorted(d, q, side="right")) / d.size
    return RocCurveEstimate(grid=grid, roc=roc, auc=empirical_auc(d, nd))


# ---------------------------------------------------------------------------
# kernel estimator


def silverman_bandwidth(sample) -> float:
    """Rule-of-thumb bandwidth ``0.9 min(sd, IQR/1.34) n^(-1/5)``."""
    y = validate_sample(sample, "sample", min_size=2)
    sd = float(np.std(y, ddof=1))
    q25, q75 = np.percentile(y, [25.0, 75.0])
    spread = min(sd, (q75 - q25) / 1.34)
    if spread <= 0.0:
        raise DegenerateSampleError("sample has no usable spread for a bandwidth")
    return 0.9 * spread * y.size ** (-0.2)


def lscv_bandwidth(sample, n_steps: int = 60) -> float:
    """Least-squares cross-validation bandwidth for the normal kernel.

    Minimizes the closed-form LSCV criterion over a log-spaced band around
    the rule-of-thumb value.  Quadratic in the sample size.
    """
    y = validate_sample(sample, "sample", min_size=3)
    h0 = silverman_bandwidth(y)
    diff2 = (y[:, None] - y[None, :]) ** 2
    n = y.size

    def crit(h: float) -> float:
        # integral of fhat^2 minus twice the leave-one-out mean density
        quad = np.exp(-diff2 / (4.0 * h * h)).sum() / (2.0 * math.sqrt(math.pi) * h * n * n)
        loo = np.exp(-diff2 / (2.0 * h * h)).sum() - n  # drop i == j terms
        loo /= math.sqrt(2.0 * math.pi) * h * n * (n - 1)
        return quad - 2.0 * loo

    hs = np.geomspace(h0 / 20.0, 5.0 * h0, n_steps)
    vals = [crit(float(h)) for h in hs]
    return float(hs[int(np.argmin(vals))])


def kernel_cdf(sample, h: float, y):
    """Normal-kernel CDF estimate ``(1/n) sum Phi((y - y_i)/h)``."""
    s = validate_sample(sample, "sample")
    if not np.isfinite(h) or h <= 0.0:
        raise InvalidInputError(f"bandwidth must be positive, got {h}")
    yv = np.asarray(y, dtype=float)
    out = ndtr((yv[..., None] - s) / h).mean(axis=-1)
    return float(out) if np.isscalar(y) or yv.ndim == 0 else out


def _mixture_cdf(w, mu, sigma, x):
    # w, mu, sigma: (..., L); x: (..., K) broadcastable; returns (..., K)
    z = (x[..., :, None] - mu[..., None, :]) / sigma[..., None, :]
    return (ndtr(z) * w[..., None, :]).sum(axis=-1)


def _invert_mixture_cdf(w, mu, sigma, targets):
    """Solve F(x) = q by bisection for mixture CDFs, vectorized.

    ``w, mu, sigma`` have shape (S, L); ``targets`` has shape (K,) with
    values strictly inside (0, 1); returns roots of shape (S, K).  Raises
    when the residual in CDF scale exceeds 1e-10.
    """
    lo = float((mu - 10.0 * sigma).min())
    hi = float((mu + 10.0 * sigma).max())
    qmin, qmax = float(targets.min()), float(targets.max())
    for _ in range(60):
        if _mixture_cdf(w, mu, sigma, np.array([lo])).min() <= qmin:
            break
        lo -= hi - lo
    for _ in range(60):
        if _mixture_cdf(w, mu, sigma, np.array([hi])).max() >= qmax:
            break
        hi += hi - lo
    shape = (w.shape[0], targets.size)
    lo_a = np.full(shape, lo)
    hi_a = np.full(shape, hi)
    tgt = np.broadcast_to(targets, shape)
    for _ in range(90):
        mid = 0.5 * (lo_a + hi_a)
        below = _mixture_cdf(w, mu, sigma, mid) < tgt
        lo_a = np.where(below, mid, lo_a)
        hi_a = np.where(below, hi_a, mid)
    roots = 0.5 * (lo_a + hi_a)
    resid = np.abs(_mixture_cdf(w, mu, sigma, roots) - tgt)
    worst = float(resid.max())
    if worst > 1e-10:
        s, k = np.unravel_index(int(resid.argmax()), resid.shape)
        raise NumericError(
            f"CDF inversion residual {worst:.2e} at target {targets[k]:.6g} "
            f"(draw {s}) exceeds 1e-10"
        )
    return roots


def _roc_from_mixtures(w_d, mu_d, sg_d, w_nd, mu_nd, sg_nd, grid):
    """Per-draw ROC curves for paired mixture arrays of shape (S, L)."""
    interior = (grid > 0.0) & (grid < 1.0)
    curves = np.empty((w_d.shape[0], grid.size))
    curves[:, grid == 0.0] = 0.0
    curves[:, grid == 1.0] = 1.0
    if np.any(interior):
        q = 1.0 - grid[interior]
        roots = _invert_mixture_cdf(w_nd, mu_nd, sg_nd, q)
        curves[:, interior] = 1.0 - _mixture_cdf(w_d, mu_d, sg_d, roots)
    return np.clip(curves, 0.0, 1.0)


def kernel_roc(diseased, nondiseased, h_d: float | None = None,
               h_nd: float | None = None, grid=None) -> RocCurveEstimate:
    """Normal-kernel smoothed ROC curve.

    Bandwidths default to ``silverman_bandwidth`` of each sample.  The
    nondiseased CDF is inverted by bisection (residual below 1e-10 in CDF
    scale); the attached ``auc`` is the closed form from ``kernel_auc``,
    not a grid integration.
    """
    d = validate_sample(diseased, "diseased")
    nd = validate_sample(nondiseased, "nondiseased")
    h_d = silverman_bandwidth(d) if h_d is None else h_d
    h_nd = silverman_bandwidth(nd) if h_nd is None else h_nd
    if h_d <= 0.0 or h_nd <= 0.0:
        raise InvalidInputError("bandwidths must be positive")
    grid = default_prob_grid() if grid is None else as_prob_grid(grid)
    curves = _roc_from_mixtures(
        np.full((1, d.size), 1.0 / d.size), d[None, :], np.full((1, d.size), h_d),
        np.full((1, nd.size), 1.0 / nd.size), nd[None, :], np.full((1, nd.size), h_nd),
        grid,
    )
    return RocCurveEstimate(grid=grid, roc=curves[0],
                            auc=kernel_auc(d, nd, h_d, h_nd))


def kernel_auc(diseased, nondiseased, h_d: float | None = None,
               h_nd: float | None = None) -> float:
    """Closed-form AUC of the kernel-smoothed ROC.

    ``(1/(n_D n_ND)) sum_j sum_i Phi((y_Dj - y_NDi) / sqrt(h_D^2 + h_ND^2))``.
    """
    d = validate_sample(diseased, "diseased")
    nd = validate_sample(nondiseased, "nondiseased")
    h_d = silverman_bandwidth(d) if h_d is None else h_d
    h_nd = silverman_bandwidth(nd) if h_nd is None else h_nd
    if h_d <= 0.0 or h_nd <= 0.0:
        raise InvalidInputError("bandwidths must be positive")
    scale = math.hypot(h_d, h_nd)
    total = 0.0
    for start in range(0, d.size, 512):  # chunked to bound the pair matrix
        block = d[start:start + 512]
        total += float(ndtr((block[:, None] - nd[None, :]) / scale).sum())
    return total / (d.size * nd.size)


# ---------------------------------------------------------------------------
# Bayesian bootstrap


def bb_roc(diseased, nondiseased, n_draws: int, grid=None, *,
           seed: SeedSpec, youden: bool = False) -> PosteriorEnsemble:
    """Bayesian bootstrap ROC ensemble.

    Each draw ``s`` reweights the nondiseased sample with flat Dirichlet
    weights to form weighted placement values
    ``U_j = sum_i q1_i I(y_NDi >= y_Dj)``, then reweights the diseased
    sample to form the curve ``ROC(p) = sum_j q2_j I(U_j <= p)`` and the
    closed-form ``auc = 1 - sum_j q2_j U_j``.  Draw ``s`` uses the child
    stream ``seed.rng(s)``, so results do not depend on evaluation order.

    With ``youden=True`` the per-draw weighted-ECDF Youden index, threshold
    and FPF are tracked (candidate thresholds are the pooled data values).
    """
    d = validate_sample(diseased, "diseased")
    nd = validate_sample(nondiseased, "nondiseased")
    if n_draws < 1:
        raise InvalidInputError("n_draws must be at least 1")
    if not isinstance(seed, SeedSpec):
        raise InvalidInputError("seed must be a SeedSpec")
    grid = default_prob_grid() if grid is None else as_prob_grid(grid)

    nd_order = np.argsort(nd, kind="stable")
    nd_sorted = nd[nd_order]
    d_order = np.argsort(d, kind="stable")
    d_sorted = d[d_order]
    # position of each diseased value in the sorted nondiseased sample:
    # weights at or above that position make up U_j
    pos = np.searchsorted(nd_sorted, d_sorted, side="left")
    if youden:
        cand = np.unique(np.concatenate([d, nd]))
        cand_nd = np.searchsorted(nd_sorted, cand, side="right")
        cand_d = np.searchsorted(d_sorted, cand, side="right")

    curves = np.empty((n_draws, grid.size))
    aucs = np.empty(n_draws)
    yis = np.empty(n_draws) if youden else None
    thresholds = np.empty(n_draws) if youden else None
    p_stars = np.empty(n_draws) if youden else None

    for s in range(n_draws):
        rng = seed.rng(s)
        # weights are drawn in input order, then carried to the sort order
        q1_sorted = dirichlet_uniform(nd.size, rng)[nd_order]
        q2_sorted = dirichlet_uniform(d.size, rng)[d_order]
        tail = np.concatenate([np.cumsum(q1_sorted[::-1])[::-1], [0.0]])
        # cumulative rounding can push a full suffix sum one ulp above 1,
        # which would leave that point uncounted even at p=1
        u = np.minimum(tail[pos], 1.0)  # placement value of d_sorted[j]
        order_u = np.argsort(u, kind="stable")
        u_sorted = u[order_u]
        cum = np.concatenate([[0.0], np.cumsum(q2_sorted[order_u])])
        curves[s] = cum[np.searchsorted(u_sorted, grid, side="right")]
        aucs[s] = 1.0 - float(u @ q2_sorted)
        if youden:
            f_nd = np.concatenate([[0.0], np.cumsum(q1_sorted)])[cand_nd]
            f_d = np.concatenate([[0.0], np.cumsum(q2_sorted)])[cand_d]
            gap = f_nd - f_d
            k = int(np.argmax(gap))
            yis[s] = gap[k]
            thresholds[s] = cand[k]
            p_stars[s] = 1.0 - f_nd[k]
    curves = np.clip(curves, 0.0, 1.0)
    # every U_j <= 1, so p=1 counts the whole diseased mass; only cumsum
    # rounding keeps the float sum from being exactly 1
    curves[:, grid == 1.0] = 1.0
    return PosteriorEnsemble(grid=grid, curves=curves, aucs=np.clip(aucs, 0.0, 1.0),
                             yis=yis, thresholds=thresholds, p_stars=p_stars)


# ---------------------------------------------------------------------------
# Dirichlet process mixture


def dpm_fit(sample, cfg: DpmConfig) -> list[MixtureDraw]:
    """Fit a truncated DPM of normals by blocked Gibbs sampling.

    The model is ``y_i ~ sum_l w_l N(mu_l, 1/tau_l)`` with stick-breaking
    weights truncated at ``cfg.truncation`` components, a conjugate
    ``N(centre_mean, centre_var)`` prior on means and a
    ``Gamma(shape, rate)`` prior on precisions.  Each iteration resamples
    sticks from component counts, then component parameters, then
    allocations; the state saved after the parameter step gives
    ``cfg.n_save`` draws following ``cfg.burn_in`` warm-up iterations.

    Returns
    -------
    list of MixtureDraw
        Posterior mixture draws, deterministic given ``cfg.seed``.
    """
    y = validate_sample(sample, "sample", min_size=2)
    var = float(np.var(y, ddof=1))
    if var <= 0.0:
        raise DegenerateSampleError("constant sample: mixture fit undefined")
    L = cfg.truncation
    m = float(np.mean(y)) if cfg.centre_mean is None else float(cfg.centre_mean)
    s_var = 10.0 * var if cfg.centre_var is None else float(cfg.centre_var)
    a = float(cfg.shape)
    b = var if cfg.rate is None else float(cfg.rate)
    rng = cfg.seed.rng()
    n = y.size

    # deterministic start: quantile-bin allocations, data-scale parameters
    ranks = np.argsort(np.argsort(y, kind="stable"), kind="stable")
    z = np.minimum((ranks * L) // n, L - 1).astype(np.intp)
    mu = np.full(L, m)
    sums0 = np.bincount(z, weights=y, minlength=L)
    cnt0 = np.bincount(z, minlength=L)
    nonempty = cnt0 > 0
    mu[nonempty] = sums0[nonempty] / cnt0[nonempty]
    tau = np.full(L, 1.0 / var)

    draws: list[MixtureDraw] = []
    total = cfg.burn_in + cfg.n_save
    for it in range(total):
        counts = np.bincount(z, minlength=L)
        tail = counts[::-1].cumsum()[::-1]
        v = rng.beta(1.0 + counts[:-1], cfg.alpha + tail[1:])
        stick = np.concatenate([v, [1.0]])
        w = stick * np.concatenate([[1.0], np.cumprod(1.0 - v)])

        sums = np.bincount(z, weights=y, minlength=L)
        prec_post = 1.0 / s_var + tau * counts
        mean_post = (m / s_var + tau * sums) / prec_post
        mu = rng.normal(mean_post, np.sqrt(1.0 / prec_post))
        rss = np.bincount(z, weights=(y - mu[z]) ** 2, minlength=L)
        tau = rng.gamma(a + 0.5 * counts, 1.0 / (b + 0.5 * rss))

        if not (np.all(np.isfinite(mu)) and np.all(np.isfinite(tau)) and np.all(tau > 0.0)):
            raise NumericError(f"non-finite mixture state at Gibbs iteration {it}")
        if it >= cfg.burn_in:
            draws.append(MixtureDraw(weights=w.copy(), means=mu.copy(),
                                     variances=1.0 / tau))

        with np.errstate(divide="ignore"):
            logp = np.log(w) + 0.5 * np.log(tau) - 0.5 * tau * (y[:, None] - mu) ** 2
        logp -= logp.max(axis=1, keepdims=True)
        prob = np.exp(logp)
        prob /= prob.sum(axis=1, keepdims=True)
        z = (prob.cumsum(axis=1) < rng.uniform(size=(n, 1))).sum(axis=1)
        z = np.minimum(z, L - 1).astype(np.intp)
    return draws


def dpm_auc(draw_d: MixtureDraw, draw_nd: MixtureDraw) -> float:
    """Closed-form AUC between two normal-mixture draws.

    ``sum_k sum_l w_NDk w_Dl Phi(a_kl / sqrt(1 + b_kl^2))`` with
    ``a_kl = (mu_Dl - mu_NDk)/sigma_Dl`` and ``b_kl = sigma_NDk/sigma_Dl``.
    """
    sg_d = np.sqrt(np.asarray(draw_d.variances, dtype=float))
    sg_nd = np.sqrt(np.asarray(draw_nd.variances, dtype=float))
    if np.any(sg_d <= 0.0):
        raise InvalidInputError("diseased mixture has a zero-scale component")
    a = (np.asarray(draw_d.means)[None, :] - np.asarray(draw_nd.means)[:, None]) / sg_d[None, :]
    b = sg_nd[:, None] / sg_d[None, :]
    vals = ndtr(a / np.sqrt(1.0 + b * b))
    return float(np.asarray(draw_nd.weights) @ vals @ np.asarray(draw_d.weights))


def _cdf_from_arrays(w, mu, sg):
    # CDF of one finite normal mixture as a scalar/array callable
    def cdf(c):
        x = np.atleast_1d(np.asarray(c, dtype=float))
        vals = _mixture_cdf(w, mu, sg, x)
        return float(vals[0]) if np.ndim(c) == 0 else vals

    return cdf


def mixture_cdf_callable(draw: MixtureDraw):
    """CDF of one mixture draw as a plain callable (scalar or array in/out)."""
    return _cdf_from_arrays(np.asarray(draw.weights, dtype=float),
                            np.asarray(draw.means, dtype=float),
                            np.sqrt(np.asarray(draw.variances, dtype=float)))


def _stack_mixtures(draws):
    w = np.stack([np.asarray(d.weights, dtype=float) for d in draws])
    mu = np.stack([np.asarray(d.means, dtype=float) for d in draws])
    sg = np.sqrt(np.stack([np.asarray(d.variances, dtype=float) for d in draws]))
    return w, mu, sg


def _ensemble_from_mixture_arrays(w_d, mu_d, sg_d, w_nd, mu_nd, sg_nd, grid,
                                  youden: bool) -> PosteriorEnsemble:
    """Ensemble curves/AUCs for paired per-draw mixtures of shape (S, L)."""
    grid = default_prob_grid() if grid is None else as_prob_grid(grid)
    curves = _roc_from_mixtures(w_d, mu_d, sg_d, w_nd, mu_nd, sg_nd, grid)

    a = (mu_d[:, None, :] - mu_nd[:, :, None]) / sg_d[:, None, :]
    b = sg_nd[:, :, None] / sg_d[:, None, :]
    aucs = np.einsum("sk,sl,skl->s", w_nd, w_d, ndtr(a / np.sqrt(1.0 + b * b)))

    yis = thresholds = p_stars = None
    if youden:
        n_draws = w_d.shape[0]
        yis = np.empty(n_draws)
        thresholds = np.empty(n_draws)
        p_stars = np.empty(n_draws)
        sg_max = max(float(sg_d.max()), float(sg_nd.max()))
        lo = min(float(mu_d.min()), float(mu_nd.min())) - 4.0 * sg_max
        hi = max(float(mu_d.max()), float(mu_nd.max())) + 4.0 * sg_max
        for s in range(n_draws):
            res = youden_from_cdfs(_cdf_from_arrays(w_d[s], mu_d[s], sg_d[s]),
                                   _cdf_from_arrays(w_nd[s], mu_nd[s], sg_nd[s]),
                                   lo, hi)
            yis[s], thresholds[s], p_stars[s] = res.yi, res.c_star, res.p_star
    return PosteriorEnsemble(grid=grid, curves=curves, aucs=np.clip(aucs, 0.0, 1.0),
                             yis=yis, thresholds=thresholds, p_stars=p_stars)


def dpm_roc(draws_d, draws_nd, grid=None, *, youden: bool = False) -> PosteriorEnsemble:
    """Posterior ROC ensemble from paired lists of mixture draws.

    Draw ``s`` pairs ``draws_d[s]`` with ``draws_nd[s]``; the lists must
    have equal length.  Curves come from bisection inversion of the
    nondiseased mixture CDF; AUCs from the closed form in ``dpm_auc``.
    """
    if len(draws_d) != len(draws_nd) or len(draws_d) < 1:
        raise InvalidInputError("need equally many draws for both groups")
    w_d, mu_d, sg_d = _stack_mixtures(draws_d)
    w_nd, mu_nd, sg_nd = _stack_mixtures(draws_nd)
    return _ensemble_from_mixture_arrays(w_d, mu_d, sg_d, w_nd, mu_nd, sg_nd,
                                         grid, youden)
