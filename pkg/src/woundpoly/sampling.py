"""Random valid curves for randomized tests and experiments."""

from __future__ import annotations

import math

import numpy as np

from .bounds import random_unit_partitions
from .curve import WoundPolygon, turn_crosses, validate
from .errors import BadParameters


def _cross(a, b):
    return a[0] * b[1] - a[1] * b[0]


def random_curve(rng: np.random.Generator, k: int, n: int, lo: float = 0.2, hi: float = 5.0,
                 max_tries: int = 10_000) -> WoundPolygon:
    """Random locally convex ``n``-gon winding ``k`` times.

    Sector angles come from :func:`random_unit_partitions`; radii are drawn
    one at a time, log-uniform on the part of ``[lo, hi]`` that keeps the
    previous vertex a left turn.  The two wrap-around turns are checked at
    the end and the whole draw is retried if they fail.
    """
    if n < 2 * k + 1:
        raise BadParameters("need n >= 2k+1")
    llo, lhi = math.log(lo), math.log(hi)
    for _ in range(max_tries):
        theta = random_unit_partitions(n, k, 1, rng)[0]
        phi = rng.uniform(0, 2 * math.pi) + np.concatenate(([0.0], np.cumsum(theta[:-1])))
        e = np.column_stack((np.cos(phi), np.sin(phi)))
        rho = np.empty(n)
        rho[:2] = np.exp(rng.uniform(llo, lhi, size=2))
        ok = True
        for i in range(2, n):
            p, q = rho[i - 2] * e[i - 2], rho[i - 1] * e[i - 1]
            A = _cross(q - p, e[i])
            top = lhi
            if A < 0:
                top = min(lhi, math.log(_cross(q - p, q) / A))
            if top <= llo:
                ok = False
                break
            rho[i] = math.exp(rng.uniform(llo, top))
        if not ok:
            continue
        xy = rho[:, None] * e
        if np.all(turn_crosses(xy) > 0):
            return validate(np.column_stack((phi, rho)), k)
    raise BadParameters(f"no valid curve found for n={n}, k={k}")


def random_positive_map(rng: np.random.Generator, bound: float = 2.0, min_det: float = 0.05) -> np.ndarray:
    """Random 2x2 matrix with entries in ``[-bound, bound]`` and determinant ``>= min_det``."""
    while True:
        M = rng.uniform(-bound, bound, size=(2, 2))
        if np.linalg.det(M) >= min_det:
            return M
