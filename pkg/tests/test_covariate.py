import numpy as np
import pytest

from roclab import (BSplineSpec, DdpConfig, DegenerateSampleError,
                    ExtrapolationError, InvalidInputError, LocationScaleFit,
                    RegressionSample, SeedSpec, SeparationWarning,
                    SingularDesignError, aroc, bspline_design, covariate_youden,
                    ddp_conditional_cdf, ddp_fit, ddp_roc, dpm_fit, dpm_roc,
                    DpmConfig, empirical_roc, faraggi_roc, gen_covariate_linear,
                    location_scale_cdf, location_scale_youden,
                    mixture_cdf_callable, ols_fit, pepe_semiparam_roc,
                    placement_values, rocglm_fit, std_normal_cdf)


def _ones_sample(y):
    y = np.asarray(y, dtype=float)
    return RegressionSample(y, np.ones((y.size, 1)))


def _linear_sample(y, x):
    y = np.asarray(y, dtype=float)
    return RegressionSample(y, np.column_stack([np.ones(y.size), x]))


class TestOlsFit:
    def test_intercept_only_hand_values(self):
        fit = ols_fit(_ones_sample([1.0, 2.0, 3.0]))
        assert fit.beta[0] == pytest.approx(2.0, abs=1e-12)
        assert fit.sigma == pytest.approx(1.0, abs=1e-12)  # RSS=2, n-1=2

    def test_exact_fit_rejected(self):
        x = np.array([0.0, 1.0, 2.0, 3.0])
        with pytest.raises(DegenerateSampleError):
            ols_fit(_linear_sample(1.0 + 2.0 * x, x))

    def test_duplicate_column_rejected(self):
        y = np.array([1.0, 2.0, 3.0, 4.0])
        x = np.array([0.0, 1.0, 2.0, 3.0])
        design = np.column_stack([np.ones(4), x, x])
        with pytest.raises(SingularDesignError):
            ols_fit(RegressionSample(y, design))

    def test_recovery(self):
        rng = SeedSpec(40, 0).rng()
        x = rng.uniform(0, 1, 10_000)
        y = 1.0 + 2.0 * x + rng.standard_normal(10_000)
        fit = ols_fit(_linear_sample(y, x))
        assert abs(fit.beta[0] - 1.0) < 0.05
        assert abs(fit.beta[1] - 2.0) < 0.05
        assert abs(fit.sigma - 1.0) < 0.05
        # residuals come back standardized
        assert np.std(fit.residuals, ddof=2) == pytest.approx(1.0, abs=1e-9)

    def test_needs_more_rows_than_columns(self):
        with pytest.raises(InvalidInputError):
            ols_fit(_ones_sample([1.0]))


class TestRegressionSample:
    def test_requires_intercept_column(self):
        with pytest.raises(InvalidInputError):
            RegressionSample(np.array([1.0, 2.0]), np.array([[0.5], [1.0]]))

    def test_row_count_mismatch(self):
        with pytest.raises(InvalidInputError):
            RegressionSample(np.array([1.0, 2.0, 3.0]), np.ones((2, 1)))


class TestFaraggiRoc:
    def test_equal_fits_give_diagonal(self):
        res = np.array([-1.0, 0.0, 1.0])
        fit = LocationScaleFit(beta=np.array([0.0, 1.0]), sigma=1.0, residuals=res)
        curve = faraggi_roc(fit, fit, [0.7])
        assert np.max(np.abs(curve.roc - curve.grid)) < 1e-12
        assert curve.auc == pytest.approx(0.5, abs=1e-12)

    def test_unit_shift_auc(self):
        res = np.zeros(3) + np.array([-1.0, 0.0, 1.0])
        fit_d = LocationScaleFit(beta=np.array([1.0]), sigma=1.0, residuals=res)
        fit_nd = LocationScaleFit(beta=np.array([0.0]), sigma=1.0, residuals=res)
        curve = faraggi_roc(fit_d, fit_nd, [])
        # a(x) = -1, b = 1
        assert curve.auc == pytest.approx(0.7602499389065233, abs=1e-12)

    def test_auc_matches_integration_random_params(self):
        rng = np.random.default_rng(41)
        grid = np.linspace(0, 1, 2001)
        res = rng.standard_normal(20)
        for _ in range(100):
            b = rng.uniform(0.3, 3.0)
            fit_d = LocationScaleFit(beta=np.array([rng.uniform(-2, 2)]),
                                     sigma=1.0 / b, residuals=res)
            fit_nd = LocationScaleFit(beta=np.array([rng.uniform(-2, 2)]),
                                      sigma=1.0, residuals=res)
            curve = faraggi_roc(fit_d, fit_nd, [], grid)
            assert abs(curve.auc - np.trapezoid(curve.roc, grid)) < 5e-4

    def test_dimension_mismatch(self):
        res = np.array([-1.0, 0.0, 1.0])
        fit = LocationScaleFit(beta=np.array([0.0, 1.0]), sigma=1.0, residuals=res)
        with pytest.raises(InvalidInputError):
            faraggi_roc(fit, fit, [0.5, 0.9])


class TestPepeSemiparamRoc:
    def test_agrees_with_faraggi_for_normal_errors(self):
        s_d, s_nd = gen_covariate_linear([0.5, 1.0], [0.0, 1.0], 1.0, 1.0,
                                         5000, 5000, seed=SeedSpec(42, 0))
        fit_d, fit_nd = ols_fit(s_d), ols_fit(s_nd)
        for x in (0.2, 0.8):
            a = pepe_semiparam_roc(fit_d, fit_nd, [x])
            f = faraggi_roc(fit_d, fit_nd, [x])
            assert np.max(np.abs(a.roc - f.roc)) < 0.02

    def test_identical_fits_centre_auc(self):
        rng = np.random.default_rng(43)
        res = rng.standard_normal(101)
        fit = LocationScaleFit(beta=np.array([0.0]), sigma=1.0, residuals=res)
        curve = pepe_semiparam_roc(fit, fit, [])
        # every value ties with itself once: auc = (n(n-1)/2 + n) / n^2
        n = 101
        assert curve.auc == pytest.approx((n * (n - 1) / 2 + n) / n ** 2, abs=1e-12)

    def test_pair_count_is_exact(self):
        rng = np.random.default_rng(44)
        for _ in range(10):
            n1, n0 = rng.integers(5, 51), rng.integers(5, 51)
            fit_d = LocationScaleFit(beta=np.array([rng.uniform(0, 1)]),
                                     sigma=rng.uniform(0.5, 2),
                                     residuals=rng.standard_normal(n1))
            fit_nd = LocationScaleFit(beta=np.array([0.0]), sigma=1.0,
                                      residuals=rng.standard_normal(n0))
            curve = pepe_semiparam_roc(fit_d, fit_nd, [])
            v_d = fit_d.mean_at([]) + fit_d.sigma * fit_d.residuals
            v_nd = fit_nd.mean_at([]) + fit_nd.sigma * fit_nd.residuals
            brute = np.mean(v_nd[None, :] <= v_d[:, None])
            assert curve.auc == brute


class TestBsplineDesign:
    def test_partition_of_unity(self):
        spec = BSplineSpec(interior_knots=(0.3, 0.5, 0.8), boundary=(0.0, 1.0))
        x = np.linspace(0, 1, 57)
        mat = bspline_design(x, spec)
        assert np.allclose(mat[:, 1:].sum(axis=1), 1.0, atol=1e-12)
        assert np.all(mat[:, 0] == 1.0)

    def test_cubic_reproduction_without_interior_knots(self):
        spec = BSplineSpec(interior_knots=(), boundary=(0.0, 1.0))
        x = np.linspace(0, 1, 40)
        mat = bspline_design(x, spec)
        coef, *_ = np.linalg.lstsq(mat, x ** 3, rcond=None)
        assert np.max(np.abs(mat @ coef - x ** 3)) < 1e-8

    def test_column_count_with_dummies(self):
        spec = BSplineSpec(interior_knots=(0.5,), boundary=(0.0, 1.0))
        x = np.linspace(0, 1, 12)
        labels = ["a", "b", "c"] * 4
        plain = bspline_design(x, spec, categorical=[labels])
        n_basis = 4 + 1  # interior knots + degree + 1
        assert plain.shape[1] == 1 + n_basis + 2
        crossed = bspline_design(x, spec, categorical=[labels], interactions=True)
        assert crossed.shape[1] == 1 + n_basis + 2 + n_basis * 2

    def test_extrapolation_error(self):
        spec = BSplineSpec(interior_knots=(0.5,), boundary=(0.0, 1.0))
        with pytest.raises(ExtrapolationError):
            bspline_design([0.2, 1.4], spec)

    def test_knot_layout_validation(self):
        with pytest.raises(InvalidInputError):
            BSplineSpec(interior_knots=(1.5,), boundary=(0.0, 1.0))


class TestDdp:
    def _cfg(self, stream, **kw):
        kw.setdefault("burn_in", 60)
        kw.setdefault("n_save", 40)
        return DdpConfig(seed=SeedSpec(45, stream), **kw)

    def test_deterministic(self):
        rng = np.random.default_rng(46)
        x = rng.uniform(0, 1, 80)
        s = _linear_sample(0.5 + x + rng.standard_normal(80), x)
        a, b = ddp_fit(s, self._cfg(0)), ddp_fit(s, self._cfg(0))
        for da, db in zip(a, b):
            assert np.array_equal(da.weights, db.weights)
            assert np.array_equal(da.coef, db.coef)
            assert np.array_equal(da.variances, db.variances)

    def test_draws_valid(self):
        rng = np.random.default_rng(47)
        x = rng.uniform(0, 1, 60)
        s = _linear_sample(x + rng.standard_normal(60), x)
        for d in ddp_fit(s, self._cfg(1)):
            assert abs(d.weights.sum() - 1.0) < 1e-10
            assert np.all(d.variances > 0.0)
            assert d.coef.shape == (10, 2)

    def test_intercept_only_matches_pooled_mixture(self):
        rng = np.random.default_rng(48)
        y = rng.normal(1.0, 1.5, 250)
        ddp_draws = ddp_fit(_ones_sample(y), self._cfg(2, burn_in=150, n_save=120))
        dpm_draws = dpm_fit(y, DpmConfig(seed=SeedSpec(45, 9), burn_in=150,
                                         n_save=120))
        cdf_a = ddp_conditional_cdf(ddp_draws, lambda x: [1.0])
        ys = np.quantile(y, [0.1, 0.3, 0.5, 0.7, 0.9])
        f_b = np.mean([mixture_cdf_callable(d)(ys) for d in dpm_draws], axis=0)
        assert np.max(np.abs(cdf_a(ys, []) - f_b)) < 0.02


class TestDdpRoc:
    def test_identical_draws_diagonal(self):
        rng = np.random.default_rng(49)
        x = rng.uniform(0, 1, 70)
        s = _linear_sample(x + rng.standard_normal(70), x)
        draws = ddp_fit(s, DdpConfig(seed=SeedSpec(50, 0), burn_in=40, n_save=20))
        for z in ([1.0, 0.1], [1.0, 0.9]):
            ens = ddp_roc(draws, draws, z)
            assert np.max(np.abs(ens.curves - ens.grid)) < 1e-9

    def test_closed_form_auc_vs_integration(self):
        rng = np.random.default_rng(51)
        x = rng.uniform(0, 1, 80)
        s_d = _linear_sample(0.8 + 1.2 * x + rng.standard_normal(80), x)
        s_nd = _linear_sample(0.2 * x + rng.standard_normal(80), x)
        d1 = ddp_fit(s_d, DdpConfig(seed=SeedSpec(52, 0), burn_in=50, n_save=10))
        d0 = ddp_fit(s_nd, DdpConfig(seed=SeedSpec(52, 1), burn_in=50, n_save=10))
        grid = np.linspace(0, 1, 2001)
        ens = ddp_roc(d1, d0, [1.0, 0.5], grid)
        for s in range(ens.n_draws):
            assert abs(ens.aucs[s] - np.trapezoid(ens.curves[s], grid)) < 1e-3

    def test_recovers_analytic_auc_on_linear_scenario(self):
        # n large enough that regression noise stays inside the band
        s_d, s_nd = gen_covariate_linear([0.5, 1.0], [0.0, 0.5], 1.0, 1.0,
                                         1500, 1500, seed=SeedSpec(53, 0))
        d1 = ddp_fit(s_d, DdpConfig(seed=SeedSpec(53, 1), burn_in=300, n_save=300))
        d0 = ddp_fit(s_nd, DdpConfig(seed=SeedSpec(53, 2), burn_in=300, n_save=300))
        for x in (0.1, 0.3, 0.5, 0.7, 0.9):
            a_x = -(0.5 + 0.5 * x)  # (mu_nd - mu_d) / sigma_d
            want = std_normal_cdf(-a_x / np.sqrt(2.0))
            got = ddp_roc(d1, d0, [1.0, x]).summarize().auc
            assert abs(got - want) < 0.04


class TestRocGlm:
    def test_indicator_example(self):
        # pv=0.3 against p_grid {0.1, 0.5}: I(pv <= p) = (0, 1)
        pv = 0.3
        assert tuple(int(pv <= p) for p in (0.1, 0.5)) == (0, 1)
        # and the fitted object exposes the same grid convention
        rng = np.random.default_rng(54)
        d = rng.normal(1, 1, 60)
        nd = rng.normal(0, 1, 60)
        cdf = location_scale_cdf(ols_fit(_ones_sample(nd)), "empirical")
        fit = rocglm_fit(_ones_sample(d), cdf, p_grid=np.array([0.1, 0.5]))
        assert np.array_equal(fit.p_grid, [0.1, 0.5])

    def test_binormal_recovery(self):
        rng = SeedSpec(55, 0).rng()
        d = 1.0 + rng.standard_normal(1000)
        nd = rng.standard_normal(1000)
        cdf = location_scale_cdf(ols_fit(_ones_sample(nd)), "empirical")
        fit = rocglm_fit(_ones_sample(d), cdf)
        assert fit.converged
        assert abs(fit.alpha[0] - 1.0) <= 0.15
        assert abs(fit.alpha[1] - 1.0) <= 0.15

    def test_null_curve_near_diagonal(self):
        rng = SeedSpec(55, 1).rng()
        d = rng.standard_normal(800)
        nd = rng.standard_normal(800)
        cdf = location_scale_cdf(ols_fit(_ones_sample(nd)), "empirical")
        curve = rocglm_fit(_ones_sample(d), cdf).curve([], np.linspace(0, 1, 101))
        assert abs(curve.auc - 0.5) <= 0.03

    def test_spline_baseline_monotone(self):
        rng = SeedSpec(55, 2).rng()
        d = 0.8 + rng.standard_normal(300)
        nd = rng.standard_normal(300)
        cdf = location_scale_cdf(ols_fit(_ones_sample(nd)), "empirical")
        fit = rocglm_fit(_ones_sample(d), cdf, baseline="spline")
        curve = fit.curve([], np.linspace(0, 1, 201))
        assert np.all(np.diff(curve.roc) >= -1e-9)
        assert curve.roc[0] == 0.0 and curve.roc[-1] == 1.0

    def test_separation_warns(self):
        # diseased placement values all hit 0: perfectly separated groups
        rng = np.random.default_rng(56)
        d = 50.0 + rng.standard_normal(40)
        nd = rng.standard_normal(40)
        cdf = location_scale_cdf(ols_fit(_ones_sample(nd)), "empirical")
        with pytest.warns(SeparationWarning):
            rocglm_fit(_ones_sample(d), cdf)

    def test_covariate_coefficient_sign(self):
        # stronger separation at larger x should give beta > 0
        s_d, s_nd = gen_covariate_linear([0.0, 2.0], [0.0, 0.0], 1.0, 1.0,
                                         800, 800, seed=SeedSpec(57, 0))
        cdf = location_scale_cdf(ols_fit(s_nd), "empirical")
        fit = rocglm_fit(s_d, cdf)
        assert fit.beta[0] > 0.5


class TestAroc:
    def test_reduces_to_pooled_empirical(self):
        # sizes chosen so grid points never sit on placement-value jumps
        rng = SeedSpec(58, 0).rng()
        d, nd = rng.normal(1, 1, 150), rng.normal(0, 1, 157)
        cdf = location_scale_cdf(ols_fit(_ones_sample(nd)), "empirical")
        a = aroc(_ones_sample(d), cdf)
        e = empirical_roc(d, nd)
        assert np.max(np.abs(a.roc - e.roc)) <= 1.0 / 150

    def test_separated_groups(self):
        rng = np.random.default_rng(59)
        d = 100.0 + rng.standard_normal(30)
        nd = rng.standard_normal(30)
        cdf = location_scale_cdf(ols_fit(_ones_sample(nd)), "empirical")
        curve = aroc(_ones_sample(d), cdf)
        assert np.all(curve.roc[curve.grid > 0.0] == 1.0)

    def test_null_is_near_diagonal(self):
        rng = SeedSpec(58, 1).rng()
        x_d, x_nd = rng.uniform(0, 1, 400), rng.uniform(0, 1, 400)
        d = 1.0 * x_d + rng.standard_normal(400)
        nd = 1.0 * x_nd + rng.standard_normal(400)
        cdf = location_scale_cdf(ols_fit(_linear_sample(nd, x_nd)), "empirical")
        curve = aroc(_linear_sample(d, x_d), cdf)
        assert np.max(np.abs(curve.roc - curve.grid)) < 2.0 / np.sqrt(400)

    def test_placement_values_range_guard(self):
        d = np.array([0.5, 1.5])
        bad_cdf = lambda y, x: 1.5  # not a CDF
        with pytest.raises(Exception):
            placement_values(_ones_sample(d), bad_cdf)


class TestCovariateYouden:
    def test_identical_conditional_cdfs(self):
        cdf = lambda c: std_normal_cdf(np.asarray(c))
        res = covariate_youden(cdf_d=cdf, cdf_nd=cdf, search_lo=-4, search_hi=4)
        assert res.yi == pytest.approx(0.0, abs=1e-12)

    def test_faraggi_unit_shift_closed_form(self):
        res = np.array([-1.0, 0.0, 1.0])
        fit_d = LocationScaleFit(beta=np.array([0.0, 2.0]), sigma=1.0, residuals=res)
        fit_nd = LocationScaleFit(beta=np.array([0.0, 1.0]), sigma=1.0, residuals=res)
        x = [1.0]  # mu_d - mu_nd = 1, equal unit scales
        y = location_scale_youden(fit_d, fit_nd, x, errors="normal")
        assert abs(y.yi - 0.3829) < 1e-4
        # c*(x) = mu_nd(x) + 0.5 sigma
        assert abs(y.c_star - (fit_nd.mean_at(x) + 0.5)) < 1e-6
        # p* = 1 - Phi((c* - mu_nd(x)) / sigma) = Phi(-0.5)
        assert abs(y.p_star - std_normal_cdf(-0.5)) < 1e-6

    def test_curve_and_cdf_forms_agree(self):
        rng = SeedSpec(60, 0).rng()
        x = rng.uniform(0, 1, 600)
        s_d = _linear_sample(0.7 + x + rng.standard_normal(600), x)
        x2 = rng.uniform(0, 1, 600)
        s_nd = _linear_sample(0.2 * x2 + rng.standard_normal(600), x2)
        fit_d, fit_nd = ols_fit(s_d), ols_fit(s_nd)
        at = [0.5]
        via_cdfs = location_scale_youden(fit_d, fit_nd, at, errors="normal")
        curve = faraggi_roc(fit_d, fit_nd, at, np.linspace(0, 1, 4001))
        from scipy.special import ndtri
        q_nd = lambda q: fit_nd.mean_at(at) + fit_nd.sigma * float(ndtri(q))
        via_curve = covariate_youden(curve=curve, nondiseased_quantile=q_nd)
        assert abs(via_cdfs.yi - via_curve.yi) < 1e-3
        assert abs(via_cdfs.c_star - via_curve.c_star) < 0.01

    def test_requires_complete_arguments(self):
        with pytest.raises(InvalidInputError):
            covariate_youden(cdf_d=lambda c: c)
