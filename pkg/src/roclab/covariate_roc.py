"""Covariate-specific and covariate-adjusted ROC estimation.

Induced methodology models each group's outcome distribution given
covariates and derives the conditional curve from the two fits:

* ``faraggi_roc``: normal linear location-scale model in both groups; the
  conditional curve and AUC are closed forms in
  ``a(x) = x~'(beta_ND - beta_D)/sigma_D`` and ``b = sigma_ND/sigma_D``.
* ``pepe_semiparam_roc``: same location-scale mean structure, but the
  error law is left unspecified and replaced by the empirical CDF of the
  standardized residuals.
* ``ddp_fit`` / ``ddp_roc``: Bayesian linear dependent Dirichlet process
  mixture: a common set of stick-breaking weights with component means
  ``z' beta_l``, where ``z`` is a design row (typically an intercept plus
  a cubic B-spline basis, see ``bspline_design``).

Direct methodology regresses the curve itself on covariates through
placement values (``rocglm_fit``), and ``aroc`` pools covariate-specific
curves into the covariate-adjusted ROC.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy.interpolate import BSpline
from scipy.optimize import lsq_linear
from scipy.special import ndtr, ndtri

from .core import (SeedSpec, as_prob_grid, default_prob_grid, quantile,
                   std_normal_cdf, validate_sample)
from .errors import (ConvergenceError, DegenerateSampleError, ExtrapolationError,
                     InvalidInputError, NumericError, SeparationWarning,
                     SingularDesignError)
from .indices import YoudenResult, youden_from_cdfs, youden_from_curve
from .pooled_roc import (PosteriorEnsemble, RocCurveEstimate,
                         _ensemble_from_mixture_arrays)


# ---------------------------------------------------------------------------
# types


@dataclass(frozen=True)
class RegressionSample:
    """Outcomes with a design matrix whose first column is the intercept."""

    outcomes: np.ndarray
    design: np.ndarray
    labels: tuple[str, ...] | None = None

    def __post_init__(self):
        y = validate_sample(self.outcomes, "outcomes")
        x = np.asarray(self.design, dtype=float)
        if x.ndim != 2 or x.shape[0] != y.size:
            raise InvalidInputError("design must be a matrix with one row per outcome")
        if not np.all(np.isfinite(x)):
            raise InvalidInputError("design contains non-finite values")
        if not np.all(x[:, 0] == 1.0):
            raise InvalidInputError("first design column must be the all-ones intercept")
        labels = self.labels
        if labels is None:
            labels = ("intercept",) + tuple(f"x{i}" for i in range(1, x.shape[1]))
        elif len(labels) != x.shape[1]:
            raise InvalidInputError("one label per design column required")
        object.__setattr__(self, "outcomes", y)
        object.__setattr__(self, "design", x)
        object.__setattr__(self, "labels", tuple(labels))

    @property
    def n(self) -> int:
        return int(np.asarray(self.outcomes).size)


@dataclass(frozen=True)
class LocationScaleFit:
    """Linear location-scale fit: coefficients, residual scale, residuals."""

    beta: np.ndarray
    sigma: float
    residuals: np.ndarray

    def __post_init__(self):
        if not np.isfinite(self.sigma) or self.sigma <= 0.0:
            raise InvalidInputError("sigma must be positive")
        object.__setattr__(self, "beta", np.asarray(self.beta, dtype=float))
        object.__setattr__(self, "residuals",
                           validate_sample(self.residuals, "residuals"))

    def mean_at(self, x) -> float:
        """Fitted location at covariate vector ``x`` (without intercept)."""
        xt = np.concatenate([[1.0], np.atleast_1d(np.asarray(x, dtype=float)).ravel()])
        if xt.size != self.beta.size:
            raise InvalidInputError(
                f"covariate vector of length {xt.size - 1} does not match "
                f"{self.beta.size - 1} fitted covariates")
        return float(xt @ self.beta)


@dataclass(frozen=True)
class BSplineSpec:
    """Cubic B-spline layout: interior knots inside a boundary interval."""

    interior_knots: tuple[float, ...]
    boundary: tuple[float, float]
    degree: int = 3

    def __post_init__(self):
        if self.degree != 3:
            raise InvalidInputError("only cubic (degree 3) splines are supported")
        lo, hi = float(self.boundary[0]), float(self.boundary[1])
        if not lo < hi:
            raise InvalidInputError("boundary knots must be an increasing pair")
        ik = tuple(float(k) for k in self.interior_knots)
        if any(not lo < k < hi for k in ik):
            raise InvalidInputError("interior knots must lie strictly inside the boundary")
        if list(ik) != sorted(ik):
            raise InvalidInputError("interior knots must be sorted")
        object.__setattr__(self, "interior_knots", ik)
        object.__setattr__(self, "boundary", (lo, hi))

    @classmethod
    def from_data(cls, x_values, n_interior: int = 3) -> "BSplineSpec":
        """Knots at evenly spaced sample quantiles, boundary at min/max."""
        x = validate_sample(x_values, "covariate", min_size=2)
        lo, hi = float(x.min()), float(x.max())
        if not lo < hi:
            raise DegenerateSampleError("constant covariate: no spline layout")
        probs = np.linspace(0.0, 1.0, n_interior + 2)[1:-1]
        interior = tuple(float(v) for v in np.quantile(x, probs)
                         if lo < float(v) < hi)
        return cls(interior_knots=interior, boundary=(lo, hi))

    @property
    def n_basis(self) -> int:
        return len(self.interior_knots) + self.degree + 1

    def knot_vector(self) -> np.ndarray:
        lo, hi = self.boundary
        return np.array([lo] * (self.degree + 1) + list(self.interior_knots)
                        + [hi] * (self.degree + 1))


@dataclass(frozen=True)
class DdpDraw:
    """One dependent-mixture draw: weights, per-component coefficients, variances."""

    weights: np.ndarray
    coef: np.ndarray
    variances: np.ndarray

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        coef = np.asarray(self.coef, dtype=float)
        var = np.asarray(self.variances, dtype=float)
        if w.ndim != 1 or coef.ndim != 2 or coef.shape[0] != w.size or var.shape != w.shape:
            raise InvalidInputError("need weights (L,), coef (L, d), variances (L,)")
        if not (np.all(np.isfinite(w)) and np.all(np.isfinite(coef)) and np.all(np.isfinite(var))):
            raise InvalidInputError("mixture draw contains non-finite values")
        if np.any(w < 0.0) or abs(w.sum() - 1.0) > 1e-10:
            raise InvalidInputError("weights must be a simplex vector (sum 1 within 1e-10)")
        if np.any(var <= 0.0):
            raise InvalidInputError("variances must be strictly positive")


@dataclass(frozen=True)
class DdpConfig:
    """Sampler settings for the dependent mixture.

    Mirrors the pooled mixture configuration with a multivariate centring:
    ``centre_mean`` defaults to the least-squares coefficients and
    ``centre_var`` to ``10 * sigma_hat^2 * I``; a scalar ``centre_var`` is
    expanded to that multiple of the identity.
    """

    seed: SeedSpec
    truncation: int = 10
    alpha: float = 1.0
    centre_mean: np.ndarray | None = None
    centre_var: np.ndarray | float | None = None
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
        if self.rate is not None and self.rate <= 0.0:
            raise InvalidInputError("rate must be positive")
        if self.burn_in < 0 or self.n_save < 1:
            raise InvalidInputError("need burn_in >= 0 and n_save >= 1")


# ---------------------------------------------------------------------------
# location-scale fits and induced curves


def ols_fit(sample: RegressionSample) -> LocationScaleFit:
    """Ordinary least squares with scale ``sqrt(RSS / (n - q - 1))``.

    ``q + 1`` is the number of design columns (intercept included), so the
    intercept-only model uses the familiar ``n - 1`` denominator.  The
    returned residuals are standardized by the fitted scale.
    """
    y, x = sample.outcomes, sample.design
    n, ncol = x.shape
    if n <= ncol:
        raise InvalidInputError(f"need more than {ncol} observations, got {n}")
    beta, _, rank, _ = np.linalg.lstsq(x, y, rcond=None)
    if rank < ncol:
        raise SingularDesignError(f"design rank {rank} below column count {ncol}")
    resid = y - x @ beta
    sigma2 = float(resid @ resid) / (n - ncol)
    if sigma2 <= 0.0:
        raise DegenerateSampleError("zero residual variance: exact linear fit")
    sigma = math.sqrt(sigma2)
    return LocationScaleFit(beta=beta, sigma=sigma, residuals=resid / sigma)


def _roc_scale_params(fit_d: LocationScaleFit, fit_nd: LocationScaleFit, x):
    a_x = (fit_nd.mean_at(x) - fit_d.mean_at(x)) / fit_d.sigma
    b = fit_nd.sigma / fit_d.sigma
    return a_x, b


def faraggi_roc(fit_d: LocationScaleFit, fit_nd: LocationScaleFit, x,
                grid=None) -> RocCurveEstimate:
    """Normal-theory conditional ROC at covariate vector ``x``.

    ``roc(p) = 1 - Phi(a(x) + b Phi^{-1}(1-p))`` with the closed-form
    ``auc = Phi(-a(x) / sqrt(1 + b^2))``.
    """
    grid = default_prob_grid() if grid is None else as_prob_grid(grid)
    a_x, b = _roc_scale_params(fit_d, fit_nd, x)
    roc = np.where(grid <= 0.0, 0.0, 1.0)
    interior = (grid > 0.0) & (grid < 1.0)
    roc[interior] = 1.0 - ndtr(a_x + b * ndtri(1.0 - grid[interior]))
    auc = std_normal_cdf(-a_x / math.sqrt(1.0 + b * b))
    return RocCurveEstimate(grid=grid, roc=roc, auc=auc)


def pepe_semiparam_roc(fit_d: LocationScaleFit, fit_nd: LocationScaleFit, x,
                       grid=None) -> RocCurveEstimate:
    """Semiparametric conditional ROC via standardized-residual ECDFs.

    The curve is ``1 - Fhat_eD(a(x) + b Qhat_eND(1-p))`` with residual
    ECDF/quantile in place of the normal law.  The AUC is the conditional
    Mann-Whitney form: the fraction of residual pairs with
    ``mu_ND(x) + sigma_ND e_NDi <= mu_D(x) + sigma_D e_Dj`` (ties count
    fully, matching the closed-form expression for continuous data).
    """
    grid = default_prob_grid() if grid is None else as_prob_grid(grid)
    a_x, b = _roc_scale_params(fit_d, fit_nd, x)
    res_d = np.sort(fit_d.residuals)
    res_nd = fit_nd.residuals
    roc = np.empty(grid.size)
    for i, p in enumerate(grid):
        if p == 0.0:
            thr = a_x + b * float(np.max(res_nd))
            roc[i] = (res_d.size - np.searchsorted(res_d, thr, side="right")) / res_d.size
        elif p == 1.0:
            roc[i] = 1.0
        else:
            thr = a_x + b * quantile(res_nd, 1.0 - p)
            roc[i] = (res_d.size - np.searchsorted(res_d, thr, side="right")) / res_d.size

    v_d = fit_d.mean_at(x) + fit_d.sigma * fit_d.residuals
    v_nd = np.sort(fit_nd.mean_at(x) + fit_nd.sigma * res_nd)
    pairs = int(np.searchsorted(v_nd, v_d, side="right").sum())
    auc = pairs / (v_d.size * v_nd.size)
    return RocCurveEstimate(grid=grid, roc=roc, auc=auc)


def location_scale_cdf(fit: LocationScaleFit, errors: str = "empirical"):
    """Conditional CDF ``F(y | x)`` induced by a location-scale fit.

    ``errors="empirical"`` uses the standardized-residual ECDF (the
    default, no distributional assumption); ``errors="normal"`` uses the
    standard normal law.  Returns ``cdf(y, x)`` with ``x`` the covariate
    vector without intercept.
    """
    if errors not in ("empirical", "normal"):
        raise InvalidInputError("errors must be 'empirical' or 'normal'")
    res = np.sort(fit.residuals)

    def cdf(y, x):
        z = (np.asarray(y, dtype=float) - fit.mean_at(x)) / fit.sigma
        if errors == "normal":
            out = ndtr(z)
        else:
            out = np.searchsorted(res, z, side="right") / res.size
        return float(out) if np.ndim(y) == 0 else out

    return cdf


# ---------------------------------------------------------------------------
# B-spline designs and the dependent mixture


def bspline_design(x_values, spec: BSplineSpec, categorical=None,
                   interactions: bool = False) -> np.ndarray:
    """Design matrix: intercept, cubic B-spline basis, dummies, interactions.

    The basis columns form a partition of unity over the boundary interval
    (so the matrix is deliberately column-rank deficient by one; the
    Bayesian fit regularizes through its proper prior).  ``categorical``
    is an optional sequence of label columns; each contributes
    reference-coded dummy columns, and ``interactions=True`` additionally
    crosses every basis column with every dummy.

    Raises an extrapolation error when any ``x`` lies outside the boundary.
    """
    x = validate_sample(x_values, "covariate")
    lo, hi = spec.boundary
    if np.any(x < lo) or np.any(x > hi):
        bad = int(np.argmax((x < lo) | (x > hi)))
        raise ExtrapolationError(
            f"covariate value {x[bad]} outside spline boundary [{lo}, {hi}]")
    basis = BSpline.design_matrix(x, spec.knot_vector(), spec.degree).toarray()
    cols = [np.ones((x.size, 1)), basis]
    dummies = []
    if categorical is not None:
        for col in categorical:
            vals = np.asarray(col)
            if vals.shape != (x.size,):
                raise InvalidInputError("categorical columns must match x in length")
            levels = np.unique(vals)
            for lev in levels[1:]:  # first level is the reference
                dummies.append((vals == lev).astype(float))
    if dummies:
        dummy_mat = np.column_stack(dummies)
        cols.append(dummy_mat)
        if interactions:
            inter = basis[:, :, None] * dummy_mat[:, None, :]
            cols.append(inter.reshape(x.size, -1))
    return np.hstack(cols)


def ddp_fit(sample: RegressionSample, cfg: DdpConfig) -> list[DdpDraw]:
    """Fit the single-weights dependent mixture by blocked Gibbs.

    The model is ``y_i ~ sum_l w_l N(x_i' beta_l, 1/tau_l)`` with
    stick-breaking weights shared across covariate values, a conjugate
    normal prior on each coefficient vector and a gamma prior on each
    precision.  With an intercept-only design this is exactly the pooled
    mixture model, including the data-driven prior defaults.

    Rank-deficient designs (e.g. intercept plus a full partition-of-unity
    spline basis) are accepted: the proper prior keeps every conditional
    well defined, and default centring uses the minimum-norm least-squares
    solution.
    """
    y = sample.outcomes
    x = sample.design
    n, d = x.shape
    if n < 2:
        raise InvalidInputError("need at least two observations")
    beta_hat, _, rank, _ = np.linalg.lstsq(x, y, rcond=None)
    resid = y - x @ beta_hat
    dof = max(n - rank, 1)
    sigma2 = float(resid @ resid) / dof
    if sigma2 <= 0.0:
        raise DegenerateSampleError("zero residual variance: mixture fit undefined")

    L = cfg.truncation
    m = beta_hat if cfg.centre_mean is None else np.asarray(cfg.centre_mean, dtype=float)
    if m.shape != (d,):
        raise InvalidInputError(f"centre_mean must have length {d}")
    if cfg.centre_var is None:
        s_mat = 10.0 * sigma2 * np.eye(d)
    elif np.ndim(cfg.centre_var) == 0:
        if float(cfg.centre_var) <= 0.0:
            raise InvalidInputError("centre_var must be positive")
        s_mat = float(cfg.centre_var) * np.eye(d)
    else:
        s_mat = np.asarray(cfg.centre_var, dtype=float)
        if s_mat.shape != (d, d):
            raise InvalidInputError(f"centre_var must be {d}x{d}")
    a = float(cfg.shape)
    b = sigma2 if cfg.rate is None else float(cfg.rate)
    try:
        s_chol = np.linalg.cholesky(s_mat)
    except np.linalg.LinAlgError as exc:
        raise InvalidInputError("centre_var must be positive definite") from exc
    s_inv = np.linalg.inv(s_mat)
    s_inv_m = s_inv @ m
    rng = cfg.seed.rng()

    ranks = np.argsort(np.argsort(y, kind="stable"), kind="stable")
    z = np.minimum((ranks * L) // n, L - 1).astype(np.intp)
    coef = np.tile(beta_hat, (L, 1))
    tau = np.full(L, 1.0 / sigma2)

    draws: list[DdpDraw] = []
    for it in range(cfg.burn_in + cfg.n_save):
        counts = np.bincount(z, minlength=L)
        tail = counts[::-1].cumsum()[::-1]
        v = rng.beta(1.0 + counts[:-1], cfg.alpha + tail[1:])
        stick = np.concatenate([v, [1.0]])
        w = stick * np.concatenate([[1.0], np.cumprod(1.0 - v)])

        for l in range(L):
            members = z == l
            n_l = int(counts[l])
            if n_l > 0:
                x_l = x[members]
                y_l = y[members]
                lam = s_inv + tau[l] * (x_l.T @ x_l)
                try:
                    chol = np.linalg.cholesky(lam)
                except np.linalg.LinAlgError as exc:
                    raise NumericError(
                        f"non-positive-definite update at Gibbs iteration {it}") from exc
                rhs = s_inv_m + tau[l] * (x_l.T @ y_l)
                mean = np.linalg.solve(lam, rhs)
                noise = np.linalg.solve(chol.T, rng.standard_normal(d))
                coef[l] = mean + noise
                r_l = y_l - x_l @ coef[l]
                tau[l] = rng.gamma(a + 0.5 * n_l, 1.0 / (b + 0.5 * float(r_l @ r_l)))
            else:
                coef[l] = m + s_chol @ rng.standard_normal(d)
                tau[l] = rng.gamma(a, 1.0 / b)
        if not (np.all(np.isfinite(coef)) and np.all(np.isfinite(tau)) and np.all(tau > 0.0)):
            raise NumericError(f"non-finite mixture state at Gibbs iteration {it}")
        if it >= cfg.burn_in:
            draws.append(DdpDraw(weights=w.copy(), coef=coef.copy(),
                                 variances=1.0 / tau))

        means = x @ coef.T
        with np.errstate(divide="ignore"):
            logp = np.log(w) + 0.5 * np.log(tau) - 0.5 * tau * (y[:, None] - means) ** 2
        logp -= logp.max(axis=1, keepdims=True)
        prob = np.exp(logp)
        prob /= prob.sum(axis=1, keepdims=True)
        z = (prob.cumsum(axis=1) < rng.uniform(size=(n, 1))).sum(axis=1)
        z = np.minimum(z, L - 1).astype(np.intp)
    return draws


def _ddp_mixture_arrays(draws, z_row: np.ndarray):
    w = np.stack([np.asarray(d.weights, dtype=float) for d in draws])
    mu = np.stack([np.asarray(d.coef, dtype=float) @ z_row for d in draws])
    sg = np.sqrt(np.stack([np.asarray(d.variances, dtype=float) for d in draws]))
    return w, mu, sg


def ddp_roc(draws_d, draws_nd, z, grid=None, *, z_nd=None,
            youden: bool = False) -> PosteriorEnsemble:
    """Conditional posterior ROC ensemble at design row ``z``.

    ``z`` is the design row (intercept, basis, dummies) at the covariate
    value of interest, built the same way as the fit designs; ``z_nd``
    overrides it for the nondiseased group when the groups use different
    designs.  Per-draw curves and closed-form AUCs mirror the pooled
    mixture ensemble with component means ``z' beta_l``.
    """
    if len(draws_d) != len(draws_nd) or len(draws_d) < 1:
        raise InvalidInputError("need equally many draws for both groups")
    z = np.asarray(z, dtype=float).ravel()
    z2 = z if z_nd is None else np.asarray(z_nd, dtype=float).ravel()
    if z.size != np.asarray(draws_d[0].coef).shape[1]:
        raise InvalidInputError("design row length does not match diseased coefficients")
    if z2.size != np.asarray(draws_nd[0].coef).shape[1]:
        raise InvalidInputError("design row length does not match nondiseased coefficients")
    w_d, mu_d, sg_d = _ddp_mixture_arrays(draws_d, z)
    w_nd, mu_nd, sg_nd = _ddp_mixture_arrays(draws_nd, z2)
    return _ensemble_from_mixture_arrays(w_d, mu_d, sg_d, w_nd, mu_nd, sg_nd,
                                         grid, youden)


def ddp_conditional_cdf(draws, design_fn):
    """Posterior-mean conditional CDF from dependent-mixture draws.

    ``design_fn(x)`` must return the design row for covariate vector ``x``.
    The returned ``cdf(y, x)`` averages the mixture CDF over draws.
    """
    w = np.stack([np.asarray(d.weights, dtype=float) for d in draws])
    coef = np.stack([np.asarray(d.coef, dtype=float) for d in draws])
    sg = np.sqrt(np.stack([np.asarray(d.variances, dtype=float) for d in draws]))

    def cdf(y, x):
        z_row = np.asarray(design_fn(x), dtype=float).ravel()
        mu = coef @ z_row  # (S, L)
        yv = np.asarray(y, dtype=float)
        zval = (yv[..., None, None] - mu) / sg
        out = (ndtr(zval) * w).sum(axis=-1).mean(axis=-1)
        return float(out) if np.ndim(y) == 0 else out

    return cdf


# ---------------------------------------------------------------------------
# direct methodology: placement values, ROC-GLM, AROC


def placement_values(sample_d: RegressionSample, nondiseased_cdf) -> np.ndarray:
    """Nondiseased-referenced standardization ``1 - F_ND(y_j | x_j)``."""
    y = sample_d.outcomes
    xs = sample_d.design[:, 1:]
    pv = np.array([1.0 - float(nondiseased_cdf(y[j], xs[j])) for j in range(y.size)])
    if np.any(pv < -1e-9) or np.any(pv > 1.0 + 1e-9):
        raise NumericError("conditional CDF produced values outside [0, 1]")
    return np.clip(pv, 0.0, 1.0)


def _ispline_basis(p: np.ndarray, interior_knots: tuple[float, ...]) -> np.ndarray:
    """Monotone (integrated B-spline) basis on [0, 1], each column 0 to 1."""
    t = np.array([0.0] * 4 + list(interior_knots) + [1.0] * 4)
    m = len(interior_knots) + 4
    cols = []
    for i in range(m):
        c = np.zeros(m)
        c[i] = 1.0
        anti = BSpline(t, c, 3).antiderivative()
        total = float(anti(1.0))
        cols.append(np.asarray(anti(p)) / total)
    return np.column_stack(cols)


@dataclass(frozen=True)
class RocGlmFit:
    """Fitted direct ROC regression (probit link).

    ``alpha`` holds the baseline coefficients (intercept first), ``beta``
    the covariate effects in design-column order.  ``curve(x, grid)``
    evaluates the implied conditional curve, with the p=0 and p=1 values
    pinned to their theoretical limits.
    """

    alpha: np.ndarray
    beta: np.ndarray
    baseline: str
    p_grid: np.ndarray
    labels: tuple[str, ...]
    converged: bool
    n_iter: int
    spline_knots: tuple[float, ...] | None = None

    def _baseline_matrix(self, p: np.ndarray) -> np.ndarray:
        if self.baseline == "parametric":
            return np.column_stack([np.ones(p.size), ndtri(p)])
        return np.column_stack([np.ones(p.size),
                                _ispline_basis(p, self.spline_knots)])

    def curve(self, x=None, grid=None) -> RocCurveEstimate:
        """Conditional ROC curve at covariate vector ``x`` (None = no covariates)."""
        grid = default_prob_grid() if grid is None else as_prob_grid(grid)
        xv = np.zeros(0) if x is None else np.atleast_1d(np.asarray(x, dtype=float))
        if xv.size != self.beta.size:
            raise InvalidInputError(
                f"expected {self.beta.size} covariate values, got {xv.size}")
        shift = float(xv @ self.beta) if self.beta.size else 0.0
        roc = np.where(grid <= 0.0, 0.0, 1.0)
        interior = (grid > 0.0) & (grid < 1.0)
        if np.any(interior):
            h = self._baseline_matrix(grid[interior])
            roc[interior] = ndtr(h @ self.alpha + shift)
        auc = float(min(1.0, max(0.0, np.trapezoid(roc, grid))))
        return RocCurveEstimate(grid=grid, roc=roc, auc=auc)


def _probit_deviance(u: np.ndarray, eta: np.ndarray) -> float:
    mu = np.clip(ndtr(eta), 1e-12, 1.0 - 1e-12)
    return -2.0 * float(u @ np.log(mu) + (1.0 - u) @ np.log1p(-mu))


def rocglm_fit(sample_d: RegressionSample, nondiseased_cdf, p_grid=None,
               baseline: str = "parametric") -> RocGlmFit:
    """Direct ROC regression through placement-value indicators.

    The five-step procedure: fix a set of FPF points; form each diseased
    subject's placement value under the conditional nondiseased CDF; build
    binary indicators ``u_jl = I(pv_j <= p_l)``; stack one record per
    (subject, FPF point) with regressors ``(h(p_l), x_j)``; and fit the
    probit-link binary regression by iteratively reweighted least squares.

    ``baseline="parametric"`` uses ``h(p) = (1, Phi^{-1}(p))``, so with no
    covariates the fit is the binormal curve ``Phi(a + b Phi^{-1}(p))``;
    ``baseline="spline"`` uses an intercept plus a monotone integrated
    B-spline basis with nonnegative coefficients.

    Raises a convergence error after 100 IRLS iterations; near-separated
    indicator sets produce a warning and clamped estimates.
    """
    if baseline not in ("parametric", "spline"):
        raise InvalidInputError("baseline must be 'parametric' or 'spline'")
    if p_grid is None:
        p_grid = np.arange(1, 51) / 51.0
    else:
        p_grid = as_prob_grid(p_grid)
        if p_grid[0] <= 0.0 or p_grid[-1] >= 1.0:
            raise InvalidInputError("p_grid must lie strictly inside (0, 1)")
    pv = placement_values(sample_d, nondiseased_cdf)
    n, n_p = pv.size, p_grid.size
    u = (pv[:, None] <= p_grid[None, :]).astype(float).ravel()
    if np.all(u == u[0]):
        # every placement value on the same side of the whole grid: the
        # baseline intercept has no finite maximizer
        warnings.warn("placement-value indicators are all identical; the "
                      "groups look completely separated and estimates are "
                      "clamped", SeparationWarning)

    knots = (0.25, 0.5, 0.75) if baseline == "spline" else None
    if baseline == "parametric":
        h = np.column_stack([np.ones(n_p), ndtri(p_grid)])
    else:
        h = np.column_stack([np.ones(n_p), _ispline_basis(p_grid, knots)])
    covs = sample_d.design[:, 1:]
    x_mat = np.hstack([np.tile(h, (n, 1)), np.repeat(covs, n_p, axis=0)])
    n_base = h.shape[1]
    n_coef = x_mat.shape[1]

    if baseline == "spline":
        lower = np.full(n_coef, -np.inf)
        lower[1:n_base] = 0.0  # monotone baseline: spline coefficients >= 0
        upper = np.full(n_coef, np.inf)

    beta = np.zeros(n_coef)
    dev = _probit_deviance(u, x_mat @ beta)
    converged = False
    it = 0
    for it in range(1, 101):
        eta = np.clip(x_mat @ beta, -8.0, 8.0)
        mu = np.clip(ndtr(eta), 1e-10, 1.0 - 1e-10)
        dens = np.maximum(np.exp(-0.5 * eta * eta) / math.sqrt(2.0 * math.pi), 1e-10)
        wts = dens * dens / (mu * (1.0 - mu))
        work = eta + (u - mu) / dens
        sw = np.sqrt(wts)
        a_mat = x_mat * sw[:, None]
        rhs = work * sw
        if baseline == "spline":
            res = lsq_linear(a_mat, rhs, bounds=(lower, upper))
            proposal = res.x
        else:
            proposal, *_ = np.linalg.lstsq(a_mat, rhs, rcond=None)
        new_dev = _probit_deviance(u, x_mat @ proposal)
        halvings = 0
        while new_dev > dev + 1e-10 and halvings < 30:
            proposal = 0.5 * (proposal + beta)
            new_dev = _probit_deviance(u, x_mat @ proposal)
            halvings += 1
        step = float(np.max(np.abs(proposal - beta)))
        beta = proposal
        if abs(dev - new_dev) <= 1e-8 * (1.0 + abs(dev)) or step <= 1e-8:
            dev = new_dev
            converged = True
            break
        dev = new_dev
    if not converged:
        raise ConvergenceError("IRLS did not converge within 100 iterations")
    if float(np.max(np.abs(x_mat @ beta))) >= 8.0 - 1e-9:
        warnings.warn("placement-value indicators look separated; estimates "
                      "were clamped at the working-response bound", SeparationWarning)

    labels = tuple(f"h{i}" for i in range(n_base)) + tuple(sample_d.labels[1:])
    return RocGlmFit(alpha=beta[:n_base], beta=beta[n_base:], baseline=baseline,
                     p_grid=p_grid, labels=labels, converged=converged,
                     n_iter=it, spline_knots=knots)


def aroc(sample_d: RegressionSample, nondiseased_cdf, grid=None) -> RocCurveEstimate:
    """Covariate-adjusted ROC: the ECDF of conditional placement values.

    ``AROC(p) = (1/n_D) sum_j I(1 - F_ND(y_j | x_j) <= p)``; the attached
    AUC integrates this step function over the grid by trapezoid.
    """
    grid = default_prob_grid() if grid is None else as_prob_grid(grid)
    pv = np.sort(placement_values(sample_d, nondiseased_cdf))
    roc = np.searchsorted(pv, grid, side="right") / pv.size
    auc = float(min(1.0, max(0.0, np.trapezoid(roc, grid))))
    return RocCurveEstimate(grid=grid, roc=roc, auc=auc)


# ---------------------------------------------------------------------------
# conditional Youden index


def covariate_youden(*, cdf_d=None, cdf_nd=None, search_lo=None, search_hi=None,
                     candidates=None, curve=None, nondiseased_quantile=None) -> YoudenResult:
    """Conditional Youden index, from either conditional CDFs or a curve.

    Pass ``cdf_d``/``cdf_nd`` (callables of the threshold, already
    conditioned on x) with a search interval, or a conditional
    ``curve`` plus the conditional nondiseased quantile callable.
    """
    if curve is not None:
        if nondiseased_quantile is None:
            raise InvalidInputError("curve form needs nondiseased_quantile")
        return youden_from_curve(curve, nondiseased_quantile)
    if cdf_d is None or cdf_nd is None or search_lo is None or search_hi is None:
        raise InvalidInputError("need cdf_d, cdf_nd and a search interval")
    return youden_from_cdfs(cdf_d, cdf_nd, search_lo, search_hi,
                            candidates=candidates)


def location_scale_youden(fit_d: LocationScaleFit, fit_nd: LocationScaleFit, x,
                          errors: str = "empirical") -> YoudenResult:
    """Youden index at covariate ``x`` from two location-scale fits.

    Conditional CDFs follow ``location_scale_cdf``; with empirical errors
    the induced support points at ``x`` are used as exact candidate
    thresholds.
    """
    mu_d, mu_nd = fit_d.mean_at(x), fit_nd.mean_at(x)
    vals_d = mu_d + fit_d.sigma * fit_d.residuals
    vals_nd = mu_nd + fit_nd.sigma * fit_nd.residuals
    lo = float(min(vals_d.min(), vals_nd.min()))
    hi = float(max(vals_d.max(), vals_nd.max()))
    span = 3.0 * max(fit_d.sigma, fit_nd.sigma)
    cdf_d = location_scale_cdf(fit_d, errors)
    cdf_nd = location_scale_cdf(fit_nd, errors)
    xv = np.atleast_1d(np.asarray(x, dtype=float))
    cands = np.concatenate([vals_d, vals_nd]) if errors == "empirical" else None
    return youden_from_cdfs(lambda c: cdf_d(c, xv), lambda c: cdf_nd(c, xv),
                            lo - span, hi + span, candidates=cands)
