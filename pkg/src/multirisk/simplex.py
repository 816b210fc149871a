"""Simplex geometry: exact volumes and surface areas, distances from the
center, and the share of the simplex lying inside a squared-norm ball."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .risk import ModelDims, SymmetricPrior, dominance_threshold

_SQRT3 = math.sqrt(3.0)


class MonteCarloNeeded(ValueError):
    """No closed form or bound covers this case; estimate it by Monte Carlo."""


@dataclass(frozen=True)
class RegionSpec:
    """Slice of the k-cell simplex with squared norm at most ``r``.

    Empty for r < 1/k (the center has the smallest squared norm, 1/k) and
    the whole simplex for r >= 1.
    """

    k: int
    r: float

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"need at least 2 cells, got k={self.k}")


def simplex_volume(k: int, scale: float = 1.0) -> float:
    """Volume scale**k / k! of the solid simplex, via log-gamma."""
    if k < 1:
        raise ValueError(f"dimension must be >= 1, got {k}")
    if not scale > 0.0:
        raise ValueError(f"scale must be positive, got {scale}")
    return math.exp(k * math.log(scale) - math.lgamma(k + 1.0))


def simplex_surface_area(k: int, scale: float = 1.0) -> float:
    """(k-1)-dimensional area scale**(k-1) * sqrt(k) / (k-1)! of the simplex face."""
    if k < 2:
        raise ValueError(f"dimension must be >= 2, got {k}")
    if not scale > 0.0:
        raise ValueError(f"scale must be positive, got {scale}")
    return math.exp((k - 1) * math.log(scale) + 0.5 * math.log(k) - math.lgamma(k))


def center_to_sphere_distance(k: int, r: float) -> float:
    """Distance from the simplex center to the sphere of squared norm r."""
    if k < 2:
        raise ValueError(f"need at least 2 cells, got k={k}")
    if r < 1.0 / k:
        raise ValueError(f"r={r} is below 1/k={1.0 / k}; the region is empty")
    return math.sqrt(r - 1.0 / k)


def center_to_boundary_distance(k: int, j: int) -> float:
    """Distance from the center to the boundary face with j coordinates zeroed.

    Strictly increasing in j = 1..k-1; j = 1 is the nearest face and
    j = k-1 the vertices.
    """
    if k < 2:
        raise ValueError(f"need at least 2 cells, got k={k}")
    if not 1 <= j <= k - 1:
        raise ValueError(f"boundary index must be in 1..{k - 1}, got {j}")
    return math.sqrt(j / (k * (k - j)))


def ball_fraction_exact(region: RegionSpec) -> float:
    """Exact fraction of the simplex with squared norm <= r, for k in {2, 3}.

    k = 2: the ball cuts a segment of relative length sqrt(2r - 1).
    k = 3 with r <= 1/2: a disc around the center, fraction
    (2*sqrt(3)/3)*pi*(r - 1/3).  k = 3 with r in (1/2, 1): the disc
    clipped by the three edges; a segment plus three circular sectors.
    """
    k, r = region.k, region.r
    if r <= 1.0 / k:
        return 0.0
    if r >= 1.0:
        return 1.0
    if k == 2:
        if r <= 0.5:
            return 0.0
        return min(math.sqrt(2.0 * r - 1.0), 1.0)
    if k == 3:
        if r <= 0.5:
            return (2.0 * _SQRT3 / 3.0) * math.pi * (r - 1.0 / 3.0)
        chord = math.sqrt(2.0 * r - 1.0)
        # cosine of the sector angle at the center; clamped against float
        # drift right at the branch points
        cos_angle = (0.25 * (2.0 * r - 1.0) + 0.5 * chord - 1.0 / 12.0) / (r - 1.0 / 3.0)
        cos_angle = min(1.0, max(-1.0, cos_angle))
        return min(1.0, chord + _SQRT3 * (r - 1.0 / 3.0) * math.acos(cos_angle))
    raise MonteCarloNeeded(
        f"no closed form for k={k}; use ball_fraction_lower_bound for r in "
        "[1/2, 1) or a Monte Carlo estimate"
    )


def ball_fraction_lower_bound(region: RegionSpec) -> float:
    """Corner-cut lower bound on the in-ball fraction, for k >= 3, r in [1/2, 1).

    Removing the k similar corner simplices that the sphere clips off leaves
    a polytope inside the ball, so the fraction is at least
    1 - k*((r - sqrt(2r - 1))/2)**((k-1)/2).  Tends to 1 as k grows.
    """
    k, r = region.k, region.r
    if k < 3:
        raise ValueError(f"the corner-cut bound needs k >= 3, got k={k}")
    if not 0.5 <= r < 1.0:
        raise ValueError(f"the corner-cut bound needs r in [1/2, 1), got r={r}")
    return max(0.0, 1.0 - _corner_mass(k, r))


def _corner_mass(k: int, r: float) -> float:
    ratio = (r - math.sqrt(2.0 * r - 1.0)) / 2.0
    if ratio <= 0.0:
        return 0.0
    return k * math.exp(0.5 * (k - 1) * math.log(ratio))


def mle_fraction_upper_bound(dims: ModelDims, prior: SymmetricPrior) -> float:
    """Upper bound on the simplex fraction where the MLE has the lower risk.

    Complement of the corner-cut bound at the dominance threshold; only
    available when that threshold lands in [1/2, 1).
    """
    r = dominance_threshold(dims, prior)
    if not 0.5 <= r < 1.0:
        raise MonteCarloNeeded(
            f"threshold {r:.6g} is outside [1/2, 1) for k={dims.k}, n={dims.n}; "
            "estimate the fraction by Monte Carlo"
        )
    return _corner_mass(dims.k, r)
