"""A priori power analysis for the follow-up study.

Solves the paired design at effect size 0.42 with the ARE correction for a
signed-rank test (giving the published N=50 at 81% power), sketches the
power curve, and cross-checks the power function against a Monte-Carlo
simulation.
"""

import math

import numpy as np
from scipy import stats as scipy_stats

from waydirector.stats import ARE_FACTORS, paired_t_power, power_analysis

print("a priori sample size, dz=0.42, alpha=0.05 two-tailed, target power 0.80:")
for method in ("none", "normal_parent", "min_are", "laplace"):
    result = power_analysis(0.42, are_method=method)
    print(f"  {method:14s} ARE={ARE_FACTORS[method]:.4f} "
          f"N={result.required_n:3d}  achieved power={result.actual_power:.3f}")

print("\npower curve (paired t, dz=0.42):")
for n in range(10, 71, 10):
    power = paired_t_power(n, 0.42)
    bar = "#" * int(power * 40)
    print(f"  N={n:3d}  {power:.3f}  {bar}")

print("\nMonte-Carlo cross-check at N=50 (100k replicates of the paired t):")
rng = np.random.default_rng(7)
diffs = rng.normal(0.42, 1.0, size=(100_000, 50))
t_stats = diffs.mean(axis=1) / (diffs.std(axis=1, ddof=1) / math.sqrt(50))
crit = float(scipy_stats.t.ppf(0.975, 49))
mc = float(np.mean(np.abs(t_stats) > crit))
analytic = paired_t_power(50, 0.42)
print(f"  analytic {analytic:.4f} vs simulated {mc:.4f} "
      f"(delta {abs(analytic - mc):.4f})")

print("\nsample size shrinks as the assumed effect grows:")
for dz in (0.2, 0.3, 0.42, 0.6, 0.8):
    result = power_analysis(dz, are_method="normal_parent")
    print(f"  dz={dz:.2f}  N={result.required_n}")
