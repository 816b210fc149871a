"""Average risk over the whole parameter space.

Pointwise wins do not tell the whole story: averaging the risk over the
simplex shows how much the posterior mean saves, and the uniform prior
(concentration 1) maximizes that saving even though the mass-one prior
wins on more of the space.
"""

import numpy as np

from multirisk import (
    ModelDims,
    SymmetricPrior,
    bayes_avg_risk,
    mle_avg_risk,
    proportional_decrease,
)

print("average risks and the posterior mean's proportional decrease:")
print(f"{'k':>4s} {'n':>6s} {'MLE avg':>10s} {'uniform %':>10s} {'mass-one %':>11s}")
for k, n in [(5, 5), (5, 25), (10, 10), (10, 100), (50, 50), (50, 2500), (100, 100)]:
    dims = ModelDims(k, n)
    print(f"{k:4d} {n:6d} {mle_avg_risk(dims):10.3e} "
          f"{100 * proportional_decrease(dims, SymmetricPrior.uniform()):10.2f} "
          f"{100 * proportional_decrease(dims, SymmetricPrior.inverse_k()):11.2f}")

print("\nwhen n = k the uniform prior halves the average risk:")
for k in (5, 20, 100):
    dims = ModelDims(k, k)
    ratio = bayes_avg_risk(dims, SymmetricPrior.uniform()) / mle_avg_risk(dims)
    print(f"  k={k:4d}: bayes/mle = {ratio:.6f}")

print("\nthe decrease as a function of the concentration (k=10, n=30):")
dims = ModelDims(10, 30)
for c in [0.05, 0.3, 1.0, 2.0, 5.0, 12.0]:
    dec = proportional_decrease(dims, SymmetricPrior.constant(c))
    bar = "#" * max(0, int(40 * dec))
    print(f"  c = {c:5.2f}: {100 * dec:7.2f}%  {bar}")
print("the maximum sits at concentration 1, where it equals k/(k+n) = "
      f"{100 * dims.k / (dims.k + dims.n):.2f}%")

print("\nmass-one prior, fixed n = 30: the decrease grows toward its k -> inf limit:")
limit = 1 - 30**2 / 31**2
for k in (5, 50, 500, 5000):
    dec = proportional_decrease(ModelDims(k, 30), SymmetricPrior.inverse_k())
    print(f"  k={k:5d}: {100 * dec:.4f}%")
print(f"  limit: {100 * limit:.4f}%")
