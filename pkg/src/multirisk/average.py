"""Average squared-error risks over the whole simplex and the proportional
risk decrease of the posterior mean relative to the MLE."""

from __future__ import annotations

from .risk import ModelDims, SymmetricPrior


def mle_avg_risk(dims: ModelDims) -> float:
    """Average MLE risk over the simplex (volume-measure average): (k-1)/(n(k+1))."""
    return (dims.k - 1.0) / (dims.n * (dims.k + 1.0))


def bayes_avg_risk(dims: ModelDims, prior: SymmetricPrior) -> float:
    """Average posterior-mean risk over the simplex.

    Closed form (k-1)(k c^2 + n) / ((k c + n)^2 (k+1)); agrees with the MLE
    average in the vanishing-concentration limit.
    """
    k, n = dims.k, dims.n
    c = prior.concentration(k, n)
    return (k - 1.0) * (k * c * c + n) / ((k * c + n) ** 2 * (k + 1.0))


def proportional_decrease(dims: ModelDims, prior: SymmetricPrior) -> float:
    """Average-risk decrease of the posterior mean, as a fraction of the MLE's.

    Equal to 1 - n(k c^2 + n)/(k c + n)^2; maximal over concentrations at
    c = 1, where it is k/(k+n).  Can go negative for large concentrations.
    """
    k, n = dims.k, dims.n
    c = prior.concentration(k, n)
    return 1.0 - n * (k * c * c + n) / (k * c + n) ** 2
