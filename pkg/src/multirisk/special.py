"""Beta special functions: regularized incomplete beta, medians, binomial weights."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

_CF_MAX_ITER = 500
_CF_EPS = 3e-16
_CF_TINY = 1e-300
_MEDIAN_MAX_ITER = 800


@dataclass(frozen=True)
class BetaParams:
    """Shape parameters of a Beta distribution."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (self.a > 0.0 and self.b > 0.0):
            raise ValueError(f"Beta shapes must be positive, got a={self.a}, b={self.b}")

    def cdf(self, x: float) -> float:
        return beta_cdf(self.a, self.b, x)

    def median(self) -> float:
        return beta_median(self.a, self.b)


def _betacf(a: float, b: float, x: float) -> float:
    """Continued fraction for the incomplete beta, by the modified Lentz method."""
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _CF_TINY:
        d = _CF_TINY
    d = 1.0 / d
    h = d
    for m in range(1, _CF_MAX_ITER + 1):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _CF_TINY:
            d = _CF_TINY
        c = 1.0 + aa / c
        if abs(c) < _CF_TINY:
            c = _CF_TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _CF_EPS:
            return h
    raise RuntimeError(
        f"incomplete beta continued fraction did not converge for a={a}, b={b}, x={x}"
    )


def beta_cdf(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b), i.e. the Beta(a, b) CDF at x.

    Evaluated through the continued fraction on whichever side of the
    split point x = (a+1)/(a+b+2) converges fast, using the symmetry
    I_x(a, b) = 1 - I_{1-x}(b, a) for the other side.  Handles fractional
    shapes well below 1 (e.g. 1/k for k in the hundreds).
    """
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"Beta shapes must be positive, got a={a}, b={b}")
    if not 0.0 <= x <= 1.0:
        raise ValueError(f"x must lie in [0, 1], got {x}")
    if x == 0.0:
        return 0.0
    if x == 1.0:
        return 1.0
    log_front = (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + a * math.log(x)
        + b * math.log1p(-x)
    )
    if x < (a + 1.0) / (a + b + 2.0):
        return math.exp(log_front) * _betacf(a, b, x) / a
    return 1.0 - math.exp(log_front) * _betacf(b, a, 1.0 - x) / b


def _beta_log_pdf(a: float, b: float, x: float) -> float:
    return (
        math.lgamma(a + b)
        - math.lgamma(a)
        - math.lgamma(b)
        + (a - 1.0) * math.log(x)
        + (b - 1.0) * math.log1p(-x)
    )


def beta_median(a: float, b: float, tol: float = 1e-13) -> float:
    """Median of Beta(a, b): the x with |beta_cdf(a, b, x) - 1/2| <= tol.

    Bracketed search refined with Newton steps taken in logit coordinates,
    which stay well conditioned when the median sits many orders of
    magnitude below 1 (tiny first shape) or above 0 (tiny second shape).
    Midpoint fallbacks are geometric near either endpoint so the bracket
    closes in on extreme medians in a reasonable number of steps.

    When b is far below both 1 and a, the median lies so close to 1 that
    adjacent doubles move the CDF by more than ``tol``; the closest
    representable point is returned then.
    """
    if not (a > 0.0 and b > 0.0):
        raise ValueError(f"Beta shapes must be positive, got a={a}, b={b}")
    if a == b:
        return 0.5
    lo, hi = 0.0, 1.0
    x = a / (a + b)
    if not 0.0 < x < 1.0:
        x = 0.5
    best_x, best_err = x, math.inf
    for _ in range(_MEDIAN_MAX_ITER):
        f = beta_cdf(a, b, x) - 0.5
        err = abs(f)
        if err < best_err:
            best_x, best_err = x, err
        if err <= tol:
            return x
        if f > 0.0:
            hi = x
        else:
            lo = x
        nxt = _logit_newton_step(a, b, x, f)
        if nxt is None or not lo < nxt < hi:
            nxt = _bracket_midpoint(lo, hi)
        if not lo < nxt < hi:
            break
        x = nxt
    return best_x


def _logit_newton_step(a: float, b: float, x: float, f: float) -> float | None:
    # d CDF / d logit(x) = pdf(x) * x * (1 - x)
    log_slope = _beta_log_pdf(a, b, x) + math.log(x) + math.log1p(-x)
    if log_slope < -700.0:
        return None
    logit_x = math.log(x) - math.log1p(-x)
    logit_new = logit_x - f * math.exp(-log_slope)
    if not math.isfinite(logit_new):
        return None
    if logit_new > 36.0:
        return 1.0 - math.exp(-logit_new)
    if logit_new < -36.0:
        return math.exp(logit_new)
    return 1.0 / (1.0 + math.exp(-logit_new))


def _bracket_midpoint(lo: float, hi: float) -> float:
    if lo == 0.0:
        return hi / 16.0 if hi < 0.5 else hi / 2.0
    if hi == 1.0 and lo > 0.5:
        return 1.0 - (1.0 - lo) / 16.0
    if hi / lo > 16.0:
        return math.sqrt(lo * hi)
    if (1.0 - lo) / (1.0 - hi) > 16.0:
        return 1.0 - math.sqrt((1.0 - lo) * (1.0 - hi))
    return 0.5 * (lo + hi)


def log_binomial_coefficients(n: int) -> np.ndarray:
    """log C(n, r) for r = 0..n via log-gamma."""
    if n < 0:
        raise ValueError(f"n must be >= 0, got {n}")
    r = np.arange(n + 1)
    return gammaln(n + 1.0) - gammaln(r + 1.0) - gammaln(n - r + 1.0)


def binomial_weights(n: int, p: float) -> np.ndarray:
    """All Binomial(n, p) probabilities, as exp of a log-gamma combination.

    Exact one-hot vectors at p = 0 and p = 1; safe for n up to the
    thousands because every term is assembled in log space.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if p == 0.0 or p == 1.0:
        w = np.zeros(n + 1)
        w[n if p == 1.0 else 0] = 1.0
        return w
    r = np.arange(n + 1)
    logw = log_binomial_coefficients(n) + r * math.log(p) + (n - r) * math.log1p(-p)
    return np.exp(logw)
