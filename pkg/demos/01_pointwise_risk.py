"""Pointwise squared-error risk: MLE versus the Dirichlet posterior mean.

The MLE's risk at theta is (1 - |theta|^2)/n, and the posterior mean's risk
is affine in |theta|^2.  The two cross at one squared-norm level, so a
single threshold on |theta|^2 decides which estimator is better at a point.
"""

import numpy as np

from multirisk import (
    ModelDims,
    ProbVector,
    SymmetricPrior,
    bayes_squared_risk,
    compare_at,
    dominance_threshold,
    mle_squared_risk,
)

k, n = 5, 30
dims = ModelDims(k, n)
prior = SymmetricPrior.uniform()

print(f"multinomial with k={k} cells, n={n} observations, uniform prior\n")

threshold = dominance_threshold(dims, prior)
print(f"dominance threshold on |theta|^2: {threshold:.6f}")
print(f"(the center has |theta|^2 = {1 / k}, a vertex has |theta|^2 = 1)\n")

points = {
    "center (1/k, ..., 1/k)": ProbVector.barycenter(k),
    "vertex (1, 0, ..., 0)": ProbVector.vertex(k),
    "skewed (0.6, 0.2, 0.1, 0.05, 0.05)": ProbVector([0.6, 0.2, 0.1, 0.05, 0.05]),
    "mild (0.3, 0.25, 0.2, 0.15, 0.1)": ProbVector([0.3, 0.25, 0.2, 0.15, 0.1]),
}

print(f"{'point':38s} {'|theta|^2':>9s} {'MLE risk':>10s} {'Bayes risk':>10s}  winner")
for name, theta in points.items():
    res = compare_at(theta, dims, prior)
    winner = "MLE" if res.mle_wins else "Bayes"
    print(f"{name:38s} {theta.norm_sq:9.4f} {res.mle_risk:10.6f} "
          f"{res.bayes_risk:10.6f}  {winner}")

# the Bayes risk is an affine function of |theta|^2; sweep it
print("\nrisk along a path from the center to a vertex:")
for w in np.linspace(0.0, 1.0, 6):
    theta = ProbVector((1 - w) * np.full(k, 1 / k) + w * np.eye(k)[0])
    print(f"  mix weight {w:.1f}:  |theta|^2 = {theta.norm_sq:.4f}   "
          f"MLE {mle_squared_risk(theta, n):.6f}   "
          f"Bayes {bayes_squared_risk(theta, n, prior):.6f}")
