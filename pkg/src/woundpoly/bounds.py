"""Closed-form lower bounds for the volume product and their randomized checks."""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass

import numpy as np
from scipy.optimize import bisect

from .curve import TWO_PI, WoundPolygon, turn_crosses, validate
from .errors import BadParameters
from .polarity import volume_product, volume_product_batch

RATIO_REL_TOL = 1e-9
CSV_FIELDS = ("n", "k", "bound", "achieved", "gap", "equality_case", "trials")


class EqualityCase(str, enum.Enum):
    CNK_DILATE = "CnkDilate"
    RHOMB_TRAVERSED = "RhombTraversed"
    NONE = "None"


@dataclass
class BoundReport:
    n: int | None
    k: int
    bound: float
    achieved: float
    equality_case: EqualityCase
    trials: int

    @property
    def gap(self) -> float:
        return self.achieved - self.bound

    def csv_row(self, digits: int = 12) -> dict:
        fmt = f"{{:.{digits}g}}"
        return {
            "n": "" if self.n is None else self.n,
            "k": self.k,
            "bound": fmt.format(self.bound),
            "achieved": fmt.format(self.achieved),
            "gap": fmt.format(self.gap),
            "equality_case": self.equality_case.value,
            "trials": self.trials,
        }


def cnk_product(n: int, k: int) -> float:
    """Volume product ``n^2 sin^2(k pi / n)`` of ``C_{n,k}``."""
    if k < 1 or n < 2 * k + 1:
        raise BadParameters(f"need k >= 1 and n >= 2k+1, got n={n}, k={k}")
    return n * n * math.sin(k * math.pi / n) ** 2


def prop10_bound(n: int, k: int) -> float:
    """Lower bound for equal-angle ``n``-gons winding ``k`` times, ``2k+1 <= n <= 4k``."""
    if k < 1 or not 2 * k + 1 <= n <= 4 * k:
        raise BadParameters(f"equal-angle bound needs 2k+1 <= n <= 4k, got n={n}, k={k}")
    return cnk_product(n, k)


def equal_angle_curve(rhos, k: int) -> WoundPolygon:
    """Curve with vertex ``i`` at angle ``2 pi i k / n`` and radius ``rhos[i]``."""
    r = np.asarray(rhos, dtype=float)
    n = len(r)
    return validate(np.column_stack((TWO_PI * k * np.arange(n) / n, r)), k)


def classify_equality(n: int, k: int, rhos) -> EqualityCase:
    r = np.asarray(rhos, dtype=float)
    if len(r) != n:
        raise BadParameters("radius vector length differs from n")
    if np.ptp(r) <= RATIO_REL_TOL * np.max(r):
        return EqualityCase.CNK_DILATE
    if n == 4 * k:
        even, odd = r[0::2], r[1::2]
        if np.ptp(even) <= RATIO_REL_TOL * even.max() and np.ptp(odd) <= RATIO_REL_TOL * odd.max():
            return EqualityCase.RHOMB_TRAVERSED
    return EqualityCase.NONE


# --- convexity of the auxiliary functions ---------------------------------


def inv_one_minus_cos(t):
    return 1.0 / (1.0 - np.cos(t))


def t_over_sin(t):
    return t / np.sin(t)


@dataclass
class Lemma11Report:
    grid_points: int
    min_second_difference_inv_cos: float
    min_second_difference_t_sin: float

    @property
    def passed(self) -> bool:
        return self.min_second_difference_inv_cos > 0 and self.min_second_difference_t_sin > 0


def lemma11_check(grid_points: int = 1000) -> Lemma11Report:
    """Second central differences of ``1/(1-cos t)`` and ``t/sin t`` on ``[0.01, pi-0.01]``."""
    if grid_points < 10:
        raise BadParameters("grid_points must be at least 10")
    t = np.linspace(0.01, math.pi - 0.01, grid_points)

    def second_diff(f):
        y = f(t)
        return y[:-2] - 2 * y[1:-1] + y[2:]

    return Lemma11Report(
        grid_points,
        float(second_diff(inv_one_minus_cos).min()),
        float(second_diff(t_over_sin).min()),
    )


# --- unit-circle bound ------------------------------------------------------


def reciprocal_coefficient(c):
    """Reciprocal of the ``4k^2`` coefficient: ``4c/(pi^2 sin c) + 2/(1 - cos c)``."""
    return 4 * c / (math.pi**2 * np.sin(c)) + 2 / (1 - np.cos(c))


def reciprocal_coefficient_derivative(c):
    s, co = np.sin(c), np.cos(c)
    return 4 / math.pi**2 * (s - c * co) / s**2 - 2 * s / (1 - co) ** 2


@dataclass(frozen=True)
class Prop12Constants:
    c0: float
    r_min: float
    coefficient: float

    @property
    def c0_degrees(self) -> float:
        return math.degrees(self.c0)


def derivative_bracket(grid_points: int = 1000) -> tuple[float, float]:
    """Coarse-grid bracket of the unique sign change of the derivative."""
    t = np.linspace(0.01, math.pi - 0.01, grid_points)
    p = reciprocal_coefficient_derivative(t)
    changes = np.nonzero(np.sign(p[:-1]) != np.sign(p[1:]))[0]
    if len(changes) != 1:
        raise RuntimeError(f"expected one sign change, found {len(changes)}")
    i = int(changes[0])
    return float(t[i]), float(t[i + 1])


def prop12_constants() -> Prop12Constants:
    lo, hi = derivative_bracket()
    c0 = bisect(reciprocal_coefficient_derivative, lo, hi, xtol=1e-15, rtol=4 * np.finfo(float).eps, maxiter=200)
    r_min = float(reciprocal_coefficient(c0))
    return Prop12Constants(c0=float(c0), r_min=r_min, coefficient=4 / r_min)


def optimal_k1(k: int, c: float) -> float:
    """Minimiser over ``k1 in [0, 2k]`` of ``k1^2 A + (2k - k1)^2 B``."""
    A = math.pi**2 / 4 * math.sin(c) / c
    B = (1 - math.cos(c)) / 2
    return 2 * k * B / (A + B)


def split_bound(k: int, c: float) -> float:
    """Lower bound ``4k^2 AB/(A+B)`` for a fixed split angle ``c``."""
    A = math.pi**2 / 4 * math.sin(c) / c
    B = (1 - math.cos(c)) / 2
    return 4 * k * k * A * B / (A + B)


def prop12_bound(k: int) -> float:
    if k < 2:
        raise BadParameters("unit-circle bound is stated for k >= 2")
    return k * k * prop12_constants().coefficient


# --- prism vs simplex -------------------------------------------------------


@dataclass(frozen=True)
class Remark13Report:
    k: int
    prism: float
    simplex: float

    @property
    def smaller(self) -> str:
        return "prism" if self.prism < self.simplex else "simplex"


def remark13_compare(k: int) -> Remark13Report:
    if k < 2:
        raise BadParameters("comparison is stated for k >= 2")
    prism = 4 / 3 * cnk_product(2 * k + 1, k)
    return Remark13Report(k, prism, 64 / 9 * k * k)


# --- randomized trials ------------------------------------------------------


def _batch_seeds(seed, batches: int) -> list[np.random.Generator]:
    return [np.random.default_rng(s) for s in np.random.SeedSequence(seed).spawn(batches)]


def _valid_mask(xy: np.ndarray) -> np.ndarray:
    return np.all(turn_crosses(xy) > 0, axis=-1)


def random_equal_angle_radii(n: int, k: int, count: int, rng: np.random.Generator,
                             lo: float = 0.2, hi: float = 5.0) -> np.ndarray:
    """``count`` log-uniform radius vectors whose equal-angle curves are valid."""
    phi = TWO_PI * k * np.arange(n) / n
    out = []
    have = 0
    while have < count:
        r = np.exp(rng.uniform(math.log(lo), math.log(hi), size=(max(2 * (count - have), 64), n)))
        xy = np.stack((r * np.cos(phi), r * np.sin(phi)), axis=-1)
        r = r[_valid_mask(xy)]
        out.append(r)
        have += len(r)
    return np.concatenate(out)[:count]


def prop10_trials(n: int, k: int, trials: int = 10_000, seed=0, batches: int = 4) -> BoundReport:
    bound = prop10_bound(n, k)
    phi = TWO_PI * k * np.arange(n) / n
    best, best_r = math.inf, None
    sizes = np.full(batches, trials // batches)
    sizes[: trials % batches] += 1
    for rng, size in zip(_batch_seeds(seed, batches), sizes):
        r = random_equal_angle_radii(n, k, int(size), rng)
        xy = np.stack((r * np.cos(phi), r * np.sin(phi)), axis=-1)
        vp = volume_product_batch(xy)
        i = int(np.argmin(vp))
        if vp[i] < best:
            best, best_r = float(vp[i]), r[i]
    return BoundReport(n, k, bound, best, classify_equality(n, k, best_r), trials)


def equality_witnesses(n: int, k: int, count: int, seed=0) -> list[tuple[np.ndarray, EqualityCase, float]]:
    """Dilated ``C_{n,k}`` (and, for ``n = 4k``, traversed rhombs) with their gap to the bound."""
    rng = np.random.default_rng(seed)
    bound = prop10_bound(n, k)
    out = []
    for _ in range(count):
        out.append(np.full(n, math.exp(rng.uniform(math.log(0.2), math.log(5.0)))))
        if n == 4 * k:
            a, b = np.exp(rng.uniform(math.log(0.2), math.log(5.0), size=2))
            r = np.empty(n)
            r[0::2], r[1::2] = a, b
            out.append(r)
    return [
        (r, classify_equality(n, k, r), volume_product(equal_angle_curve(r, k)) - bound)
        for r in out
    ]


def random_unit_partitions(n: int, k: int, count: int, rng: np.random.Generator) -> np.ndarray:
    """Random sector angles in ``(0, pi)`` summing to ``2 k pi``.

    Each sample moves from the equal partition along a random zero-sum
    direction by a random fraction of the distance to the boundary of the
    feasible slice, so no sample is rejected.
    """
    if n < 2 * k + 1:
        raise BadParameters("need n >= 2k+1")
    centre = 2 * k / n
    z = rng.random((count, n))
    z -= z.mean(axis=1, keepdims=True)
    with np.errstate(divide="ignore"):
        up = np.where(z > 0, (1 - centre) / z, np.inf).min(axis=1)
        down = np.where(z < 0, centre / -z, np.inf).min(axis=1)
    reach = np.minimum(up, down)
    t = reach * rng.random(count) * (1 - 1e-9)
    y = centre + t[:, None] * z
    return math.pi * y


def prop12_trials(k: int, trials: int = 10_000, seed=0, n_max: int | None = None) -> BoundReport:
    """Unit-radius curves with random angle partitions, ``n`` uniform in ``[2k+1, n_max]``."""
    bound = prop12_bound(k)
    n_max = 4 * k if n_max is None else n_max
    ns = np.arange(2 * k + 1, n_max + 1)
    rng_n, *rngs = _batch_seeds(seed, len(ns) + 1)
    counts = np.bincount(rng_n.integers(0, len(ns), size=trials), minlength=len(ns))
    best, best_n = math.inf, None
    for n, cnt, rng in zip(ns, counts, rngs):
        if cnt == 0:
            continue
        theta = random_unit_partitions(int(n), k, int(cnt), rng)
        phi = rng.uniform(0, TWO_PI, size=(int(cnt), 1)) + np.concatenate(
            (np.zeros((int(cnt), 1)), np.cumsum(theta[:, :-1], axis=1)), axis=1
        )
        xy = np.stack((np.cos(phi), np.sin(phi)), axis=-1)
        vp = volume_product_batch(xy)
        if vp.min() < best:
            best, best_n = float(vp.min()), int(n)
    return BoundReport(best_n, k, bound, best, EqualityCase.NONE, trials)


def report_dict(r: BoundReport) -> dict:
    d = asdict(r)
    d["equality_case"] = r.equality_case.value
    d["gap"] = r.gap
    return d
