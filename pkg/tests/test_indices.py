import numpy as np
import pytest
from scipy.stats import ks_2samp

from roclab import (InvalidInputError, NegativeYoudenWarning, RocCurveEstimate,
                    YoudenResult, auc_from_curve, quantile, std_normal_cdf,
                    youden_empirical, youden_from_cdfs, youden_from_curve)


def _binormal_cdfs(mu=1.0, sigma=1.0):
    cdf_d = lambda c: std_normal_cdf((np.asarray(c) - mu) / sigma)
    cdf_nd = lambda c: std_normal_cdf(np.asarray(c))
    return cdf_d, cdf_nd


class TestAucFromCurve:
    def test_diagonal(self):
        g = np.linspace(0, 1, 101)
        curve = RocCurveEstimate(grid=g, roc=g, auc=0.5)
        assert auc_from_curve(curve) == pytest.approx(0.5, abs=1e-15)

    def test_perfect(self):
        g = np.linspace(0, 1, 101)
        r = np.ones_like(g)
        r[0] = 0.0
        curve = RocCurveEstimate(grid=g, roc=r, auc=1.0)
        assert auc_from_curve(curve) == pytest.approx(0.995, abs=1e-12)

    def test_binormal_closed_form(self):
        # trapezoid of Phi(1 + Phi^{-1}(p)) on 2001 points vs Phi(1/sqrt 2)
        from roclab import true_binormal_roc
        g = np.linspace(0, 1, 2001)
        curve = RocCurveEstimate(grid=g, roc=true_binormal_roc(1, 1, g), auc=0.5)
        assert abs(auc_from_curve(curve) - 0.76025) < 5e-4


class TestYoudenFromCdfs:
    def test_identical_cdfs_gives_zero(self):
        cdf = lambda c: std_normal_cdf(np.asarray(c))
        res = youden_from_cdfs(cdf, cdf, -5, 5)
        assert res.yi == pytest.approx(0.0, abs=1e-12)

    def test_binormal_calculus_oracle(self):
        # equal variances: the gap Phi(c) - Phi(c-1) peaks at the midpoint
        cdf_d, cdf_nd = _binormal_cdfs()
        res = youden_from_cdfs(cdf_d, cdf_nd, -6, 6)
        assert abs(res.c_star - 0.5) < 1e-6
        assert abs(res.yi - (std_normal_cdf(0.5) - std_normal_cdf(-0.5))) < 1e-10
        assert abs(res.yi - 0.3829) < 1e-4
        assert abs(res.p_star - std_normal_cdf(-0.5)) < 1e-6

    def test_unequal_variance_against_grid_scan(self):
        mu, sigma = 1.3, 1.7
        cdf_d, cdf_nd = _binormal_cdfs(mu, sigma)
        res = youden_from_cdfs(cdf_d, cdf_nd, -8, 8)
        c = np.linspace(-8, 8, 2_000_001)
        gaps = cdf_nd(c) - cdf_d(c)
        k = np.argmax(gaps)
        assert abs(res.c_star - c[k]) < 1e-4
        assert res.yi >= gaps[k] - 1e-12

    def test_candidates_are_honored(self):
        d = np.array([1.0, 3.0])
        nd = np.array([0.0, 2.0])
        from roclab import ecdf
        res = youden_from_cdfs(lambda c: ecdf(d, c), lambda c: ecdf(nd, c),
                               -1, 4, candidates=np.concatenate([d, nd]))
        assert res.yi == 0.5
        assert res.c_star in (0.0, 1.0, 2.0, 3.0)

    def test_negative_gap_warns(self):
        # reversed marker and a search window inside the supports
        cdf_d, cdf_nd = _binormal_cdfs(mu=-1.5)
        with pytest.warns(NegativeYoudenWarning):
            res = youden_from_cdfs(cdf_d, cdf_nd, -0.5, 0.5)
        assert res.yi < 0.0

    def test_invalid_interval(self):
        cdf_d, cdf_nd = _binormal_cdfs()
        with pytest.raises(InvalidInputError):
            youden_from_cdfs(cdf_d, cdf_nd, 2.0, -2.0)


class TestYoudenFromCurve:
    def test_diagonal_zero(self):
        g = np.linspace(0, 1, 51)
        curve = RocCurveEstimate(grid=g, roc=g, auc=0.5)
        res = youden_from_curve(curve, lambda q: q)
        assert res.yi == 0.0

    def test_unique_max_gap(self):
        g = np.array([0.0, 0.2, 1.0])
        r = np.array([0.0, 0.8, 1.0])
        curve = RocCurveEstimate(grid=g, roc=r, auc=0.8)
        res = youden_from_curve(curve, lambda q: 1.0 - q)
        assert res.yi == pytest.approx(0.6)
        assert res.p_star == pytest.approx(0.2)
        assert res.c_star == pytest.approx(0.2)  # quantile callback at 1-p*

    def test_binormal_dense_grid(self):
        from roclab import true_binormal_roc
        g = np.linspace(0, 1, 4001)
        curve = RocCurveEstimate(grid=g, roc=true_binormal_roc(1, 1, g), auc=0.76)
        from scipy.special import ndtri
        res = youden_from_curve(curve, lambda q: float(ndtri(q)))
        assert abs(res.yi - 0.3829) < 1e-3
        assert abs(res.p_star - 0.3085) < 2e-3

    def test_zero_gap_ties_break_to_all_positive(self):
        # on a flat gap the largest p wins, which maps to threshold -inf
        g = np.array([0.0, 1.0])
        curve = RocCurveEstimate(grid=g, roc=g.copy(), auc=0.5)
        res = youden_from_curve(curve, lambda q: quantile([1.0, 2.0], q))
        assert res.yi == 0.0
        assert res.p_star == 1.0 and res.c_star == -np.inf


class TestYoudenEmpirical:
    def test_matches_one_sided_ks_exactly(self):
        rng = np.random.default_rng(15)
        for _ in range(60):
            n1, n0 = rng.integers(5, 101), rng.integers(5, 101)
            d = np.round(rng.normal(1, 1, n1), 1)
            nd = np.round(rng.normal(0, 1, n0), 1)
            res = youden_empirical(d, nd)
            ks = ks_2samp(nd, d, alternative="greater").statistic
            assert res.yi == float(ks)

    def test_complete_separation(self):
        res = youden_empirical([10.0, 11.0], [1.0, 2.0])
        assert res.yi == 1.0
        assert 2.0 <= res.c_star <= 10.0

    def test_identical_samples_zero(self):
        res = youden_empirical([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
        assert res.yi == 0.0

    def test_p_star_is_fpf_at_threshold(self):
        rng = np.random.default_rng(16)
        d, nd = rng.normal(1, 1, 40), rng.normal(0, 1, 30)
        res = youden_empirical(d, nd)
        assert res.p_star == np.mean(nd > res.c_star)

    def test_single_division_rounding(self):
        # the gap is carried as integer counts; only one float division
        d = np.array([0.4, 0.9, 1.3] + [2.0] * 21)   # n=24
        nd = np.array([-1.0] * 33 + [5.0] * 22)      # n=55
        res = youden_empirical(d, nd)
        assert res.yi == 0.6          # 792/1320 correctly rounded
        assert res.c_star == -1.0     # first max = smallest threshold

    def test_reversed_marker_floors_at_zero(self):
        res = youden_empirical([0.0, 1.0], [10.0, 11.0])
        assert res.yi == 0.0
        assert res.p_star == 1.0


class TestYoudenResultType:
    def test_rejects_nan_threshold(self):
        with pytest.raises(InvalidInputError):
            YoudenResult(yi=0.5, c_star=np.nan, p_star=0.3)

    def test_rejects_out_of_range_yi(self):
        with pytest.raises(InvalidInputError):
            YoudenResult(yi=1.5, c_star=0.0, p_star=0.3)
