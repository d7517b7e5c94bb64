"""Discrete power-law fitting by maximum likelihood with a KS cutoff scan.

For integer observations ``x >= xmin`` assumed to follow ``p(x) ~ x**-alpha``,
the exponent is estimated with the standard continuous-approximation MLE

    alpha_hat = 1 + n / sum(ln(x_i / (xmin - 0.5)))

and ``xmin`` is chosen by scanning the observed values and keeping the
candidate whose fitted tail is closest to the empirical tail in
Kolmogorov-Smirnov distance. The fitted tail CDF uses the exact discrete
normalization via the Hurwitz zeta function, so the comparison treats the
data as the integers they are.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import zeta

from .errors import DegenerateSequence, InsufficientTail

#: Smallest tail that still supports an exponent estimate.
MIN_TAIL = 10


@dataclass(frozen=True)
class PowerLawFit:
    alpha: float
    xmin: int
    ks_statistic: float
    n_tail: int


def _ks_distance(tail: np.ndarray, alpha: float, xmin: int) -> float:
    """Sup-distance between empirical and fitted CDFs over the tail support.

    Both CDFs are step functions on the integers; the supremum is attained
    either at an observed value or just before one, so those are the only
    evaluation points needed.
    """
    values = np.unique(tail)
    points = np.unique(np.concatenate([values, values - 1]))
    points = points[points >= xmin]

    n = tail.size
    emp = np.searchsorted(np.sort(tail), points, side="right") / n
    # P(X <= t) = 1 - zeta(alpha, t+1) / zeta(alpha, xmin)
    norm = zeta(alpha, xmin)
    model = 1.0 - zeta(alpha, points + 1) / norm
    return float(np.max(np.abs(emp - model)))


def fit_power_law(degrees, min_tail: int = MIN_TAIL) -> PowerLawFit:
    """Fit alpha and xmin to a sequence of positive integer observations.

    Raises DegenerateSequence when all observations are equal and
    InsufficientTail when no candidate cutoff keeps at least ``min_tail``
    observations (with at least two distinct values) in the tail.
    """
    x = np.asarray(sorted(degrees), dtype=np.int64)
    if x.size == 0:
        raise InsufficientTail("no observations")
    if x[0] == x[-1]:
        raise DegenerateSequence(f"all {x.size} observations equal {int(x[0])}")
    if x[0] < 0:
        raise ValueError("observations must be non-negative integers")

    best: PowerLawFit | None = None
    for xmin in np.unique(x):
        if xmin < 1:
            continue
        tail = x[x >= xmin]
        if tail.size < min_tail or tail[0] == tail[-1]:
            continue
        n = tail.size
        alpha = 1.0 + n / float(np.sum(np.log(tail / (xmin - 0.5))))
        ks = _ks_distance(tail, alpha, int(xmin))
        if best is None or ks < best.ks_statistic - 1e-15:
            best = PowerLawFit(alpha=alpha, xmin=int(xmin), ks_statistic=ks, n_tail=n)

    if best is None:
        raise InsufficientTail(
            f"no cutoff leaves >= {min_tail} tail observations with spread"
        )
    assert math.isfinite(best.alpha) and best.alpha > 1.0
    return best
