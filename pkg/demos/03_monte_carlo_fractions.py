"""Monte Carlo estimates of how much of the parameter space favors the MLE.

Uniform simplex samples (normalized exponentials) are exact and fast, and
every estimate is reproducible from its seed.  The sweep reuses one sample
per k across the whole n-grid, mirroring how the threshold moves with n.
"""

from multirisk import (
    ModelDims,
    SymmetricPrior,
    estimate_mle_better_proportion,
    mle_fraction_upper_bound,
    proportion_sweep,
    sample_uniform_simplex_array,
)

SEED = 314159

# sampler sanity: coordinate means are 1/k, mean |theta|^2 is 2/(k+1)
arr = sample_uniform_simplex_array(6, 200_000, SEED)
norms = (arr * arr).sum(axis=1)
print(f"k=6 sample: coordinate mean {arr[:, 0].mean():.5f} (expect {1 / 6:.5f}), "
      f"mean |theta|^2 {norms.mean():.5f} (expect {2 / 7:.5f})\n")

# the mass-one prior leaves the MLE almost nowhere to win
print("mass-one prior (1/k per cell), 1e6 samples per cell:")
print(f"{'k':>4s} {'n':>5s} {'MC estimate':>12s} {'std error':>10s} {'closed bound':>13s}")
prior = SymmetricPrior.inverse_k()
for k, n in [(5, 10), (5, 25), (10, 20), (10, 100)]:
    dims = ModelDims(k, n)
    est = estimate_mle_better_proportion(dims, prior, 1_000_000, SEED)
    bound = mle_fraction_upper_bound(dims, prior)
    print(f"{k:4d} {n:5d} {est.estimate:12.3e} {est.std_error:10.1e} {bound:13.3e}")

# under the uniform prior the fraction rises with n before collapsing in k
print("\nuniform prior sweep, k=10, 200k samples (shared across the n-grid):")
cells = proportion_sweep([10], ["k", "2k", "4k", "k2", "4k2", "k3", "4k3"],
                         SymmetricPrior.uniform(), 200_000, SEED)
for cell in cells:
    pct = 100 * cell.result.estimate
    print(f"  n = {cell.rule:>4s} = {cell.n:6d}: MLE better on {pct:6.2f}% of the space")

# zero observed hits are reported with a rule-of-three upper bound
est = estimate_mle_better_proportion(ModelDims(20, 40), prior, 100_000, SEED)
print(f"\nk=20, n=40, mass-one prior, 1e5 samples: estimate {est.estimate}, "
      f"95% upper bound {est.zero_hit_bound:.1e}")
