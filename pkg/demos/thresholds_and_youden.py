"""
Picking a cutoff: Youden index, optimal threshold, predictive values
=====================================================================
"""

import numpy as np
import roclab as rl

rng = np.random.default_rng(7)
diseased = rng.normal(1.0, 1.0, 400)
nondiseased = rng.normal(0.0, 1.0, 400)

# the empirical route works straight from the samples and is exact:
# the index equals the two-sample Kolmogorov-Smirnov distance
res = rl.youden_empirical(diseased, nondiseased)
print(f"empirical: YI={res.yi:.3f} at c*={res.c_star:.3f} (p*={res.p_star:.3f})")

# the CDF route accepts any pair of distribution functions; here smooth
# kernel CDFs give a cutoff that does not sit on a data point
h_d = rl.silverman_bandwidth(diseased)
h_nd = rl.silverman_bandwidth(nondiseased)
res = rl.youden_from_cdfs(lambda c: rl.kernel_cdf(diseased, h_d, c),
                          lambda c: rl.kernel_cdf(nondiseased, h_nd, c),
                          search_lo=-4.0, search_hi=5.0)
print(f"kernel:    YI={res.yi:.3f} at c*={res.c_star:.3f} (p*={res.p_star:.3f})")

# truth for this design: YI = 0.3829 at c* = 0.5
truth = rl.true_binormal_youden(1.0, 1.0)
print(f"truth:     YI={truth.yi:.4f} at c*={truth.c_star:.1f}")

# once a threshold is fixed, operating characteristics are plain counting
frac = rl.classification_fractions(diseased, nondiseased, res.c_star)
print(f"\nat c*: TPF={frac.tpf:.3f}  FPF={frac.fpf:.3f}")

# predictive values depend on prevalence; compare a screening population
# against a referral clinic
for pi in (0.02, 0.30):
    ppv, npv = rl.predictive_values(frac, pi)
    print(f"prevalence {pi:.2f}: PPV={ppv:.3f}  NPV={npv:.3f}")
