"""ROC analysis toolkit: pooled, covariate-aware and time-dependent curves.

Estimators for the receiver operating characteristic curve and its
summaries (AUC, Youden index, optimal thresholds) from frequentist and
Bayesian viewpoints, with covariate-specific, covariate-adjusted and
cumulative/dynamic time-dependent variants, plus simulation scenarios
with known ground truth for validation.
"""

from .binary_metrics import (ConfusionFractions, Prevalence,
                             classification_fractions, predictive_values)
from .core import (SeedSpec, as_prob_grid, default_prob_grid, dirichlet_uniform,
                   ecdf, quantile, std_normal_cdf, std_normal_quantile,
                   validate_sample)
from .covariate_roc import (BSplineSpec, DdpConfig, DdpDraw, LocationScaleFit,
                            RegressionSample, RocGlmFit, aroc, bspline_design,
                            covariate_youden, ddp_conditional_cdf, ddp_fit,
                            ddp_roc, faraggi_roc, location_scale_cdf,
                            location_scale_youden, ols_fit, pepe_semiparam_roc,
                            placement_values, rocglm_fit)
from .errors import (AllCensoredWarning, ConvergenceError, DegenerateSampleError,
                     ExtrapolationError, InvalidInputError,
                     NegativeYoudenWarning, NumericError, SeparationWarning,
                     SingularDesignError, TimeOutOfRangeError,
                     UndefinedPredictiveValueError)
from .indices import (YoudenResult, auc_from_curve, youden_empirical,
                      youden_from_cdfs, youden_from_curve)
from .pooled_roc import (DpmConfig, MixtureDraw, PosteriorEnsemble,
                         RocCurveEstimate, bb_roc, dpm_auc, dpm_fit, dpm_roc,
                         empirical_auc, empirical_roc, kernel_auc, kernel_cdf,
                         kernel_roc, lscv_bandwidth, mixture_cdf_callable,
                         silverman_bandwidth)
from .simulate import (BinormalScenario, DiagnosticSample, gen_binormal,
                       gen_covariate_linear, gen_survival, true_binormal_auc,
                       true_binormal_roc, true_binormal_youden)
from .timedep_roc import (StepSurvival, SurvivalSample, cumdyn_fractions,
                          kaplan_meier, timedep_auc, timedep_roc)

__version__ = "0.1.0"

__all__ = [
    "AllCensoredWarning",
    "BinormalScenario",
    "BSplineSpec",
    "ConfusionFractions",
    "ConvergenceError",
    "DdpConfig",
    "DdpDraw",
    "DegenerateSampleError",
    "DiagnosticSample",
    "DpmConfig",
    "ExtrapolationError",
    "InvalidInputError",
    "LocationScaleFit",
    "MixtureDraw",
    "NegativeYoudenWarning",
    "NumericError",
    "PosteriorEnsemble",
    "Prevalence",
    "RegressionSample",
    "RocCurveEstimate",
    "RocGlmFit",
    "SeedSpec",
    "SeparationWarning",
    "SingularDesignError",
    "StepSurvival",
    "SurvivalSample",
    "TimeOutOfRangeError",
    "UndefinedPredictiveValueError",
    "YoudenResult",
    "aroc",
    "as_prob_grid",
    "auc_from_curve",
    "bb_roc",
    "bspline_design",
    "classification_fractions",
    "covariate_youden",
    "cumdyn_fractions",
    "ddp_conditional_cdf",
    "ddp_fit",
    "ddp_roc",
    "default_prob_grid",
    "dirichlet_uniform",
    "dpm_auc",
    "dpm_fit",
    "dpm_roc",
    "ecdf",
    "empirical_auc",
    "empirical_roc",
    "faraggi_roc",
    "gen_binormal",
    "gen_covariate_linear",
    "gen_survival",
    "kaplan_meier",
    "kernel_auc",
    "kernel_cdf",
    "kernel_roc",
    "location_scale_cdf",
    "location_scale_youden",
    "lscv_bandwidth",
    "mixture_cdf_callable",
    "ols_fit",
    "pepe_semiparam_roc",
    "placement_values",
    "predictive_values",
    "quantile",
    "rocglm_fit",
    "silverman_bandwidth",
    "std_normal_cdf",
    "std_normal_quantile",
    "timedep_auc",
    "timedep_roc",
    "true_binormal_auc",
    "true_binormal_roc",
    "true_binormal_youden",
    "validate_sample",
    "youden_empirical",
    "youden_from_cdfs",
    "youden_from_curve",
]
