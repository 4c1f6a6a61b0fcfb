import numpy as np
import pytest

from roclab import (ConfusionFractions, InvalidInputError, Prevalence,
                    UndefinedPredictiveValueError, classification_fractions,
                    predictive_values)


class TestClassificationFractions:
    def test_complete_separation(self):
        f = classification_fractions([2, 3], [0, 1], 1.5)
        assert (f.tpf, f.fpf) == (1.0, 0.0)

    def test_everything_positive_below_min(self):
        f = classification_fractions([2, 3], [0, 1], -1.0)
        assert (f.tpf, f.fpf) == (1.0, 1.0)

    def test_direct_count(self):
        f = classification_fractions([1, 2, 3, 4], [1, 2, 3, 4], 2.5)
        assert (f.tpf, f.fpf) == (0.5, 0.5)

    def test_threshold_value_counts_as_positive(self):
        # positivity rule is y >= c
        f = classification_fractions([2.0], [2.0], 2.0)
        assert f.tpf == 1.0 and f.fpf == 1.0

    def test_complementarity(self):
        rng = np.random.default_rng(3)
        d, nd = rng.normal(1, 1, 57), rng.normal(0, 1, 43)
        for c in np.quantile(np.concatenate([d, nd]), [0.1, 0.5, 0.9]):
            f = classification_fractions(d, nd, float(c))
            assert f.tpf + f.fnf == 1.0
            assert f.fpf + f.tnf == 1.0

    def test_matches_brute_force(self):
        rng = np.random.default_rng(4)
        d = np.round(rng.normal(1, 1, 30), 1)
        nd = np.round(rng.normal(0, 1, 20), 1)
        for c in np.concatenate([d, nd, [5.0, -5.0]]):
            f = classification_fractions(d, nd, float(c))
            assert f.tpf == np.mean(d >= c)
            assert f.fpf == np.mean(nd >= c)


class TestConfusionFractionsType:
    def test_rejects_inconsistent_pairs(self):
        with pytest.raises(InvalidInputError):
            ConfusionFractions(tpf=0.7, fnf=0.4, fpf=0.2, tnf=0.8)

    def test_rejects_out_of_range(self):
        with pytest.raises(InvalidInputError):
            ConfusionFractions(tpf=1.2, fnf=-0.2, fpf=0.0, tnf=1.0)


class TestPredictiveValues:
    def test_noninformative_identity(self):
        # tpf == fpf makes the test useless: PPV collapses to prevalence
        f = ConfusionFractions(tpf=0.5, fnf=0.5, fpf=0.5, tnf=0.5)
        for pi in (0.01, 0.1, 0.5, 0.9):
            ppv, npv = predictive_values(f, pi)
            assert ppv == pi
            assert npv == 1.0 - pi

    def test_perfect_test(self):
        f = ConfusionFractions(tpf=1.0, fnf=0.0, fpf=0.0, tnf=1.0)
        ppv, npv = predictive_values(f, 0.3)
        assert ppv == 1.0 and npv == 1.0

    def test_hand_evaluated_bayes(self):
        # ppv = pi tpf / (pi tpf + (1-pi) fpf); npv analogous
        f = ConfusionFractions(tpf=0.8, fnf=0.2, fpf=0.1, tnf=0.9)
        ppv, npv = predictive_values(f, 0.1)
        assert abs(ppv - 0.47059) < 5e-6
        assert abs(npv - 0.97590) < 5e-6

    def test_matches_bayes_formula(self):
        rng = np.random.default_rng(8)
        for _ in range(50):
            tpf, fpf = rng.uniform(0.05, 0.95, 2)
            pi = float(rng.uniform(0.05, 0.95))
            f = ConfusionFractions(tpf=tpf, fnf=1 - tpf, fpf=fpf, tnf=1 - fpf)
            ppv, npv = predictive_values(f, pi)
            assert ppv == pytest.approx(pi * tpf / (pi * tpf + (1 - pi) * fpf), abs=1e-15)
            assert npv == pytest.approx((1 - pi) * (1 - fpf) /
                                        ((1 - pi) * (1 - fpf) + pi * (1 - tpf)), abs=1e-15)

    def test_undefined_ppv_when_never_positive(self):
        f = ConfusionFractions(tpf=0.0, fnf=1.0, fpf=0.0, tnf=1.0)
        with pytest.raises(UndefinedPredictiveValueError) as err:
            predictive_values(f, 0.2)
        assert err.value.which == "ppv"

    def test_undefined_npv_when_never_negative(self):
        f = ConfusionFractions(tpf=1.0, fnf=0.0, fpf=1.0, tnf=0.0)
        with pytest.raises(UndefinedPredictiveValueError) as err:
            predictive_values(f, 0.2)
        assert err.value.which == "npv"

    @pytest.mark.parametrize("pi", [0.0, 1.0, -0.1, 1.1])
    def test_prevalence_must_be_interior(self, pi):
        with pytest.raises(InvalidInputError):
            Prevalence(pi)
