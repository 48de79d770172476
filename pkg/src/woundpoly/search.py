"""Criticality checks and derivative-free local search on the Santalo product.

Curves are explored in gauge-fixed coordinates: the first vertex keeps its
angle and radius (removing rotations and dilations) and the remaining
vertices are parametrised by ``(phi_i, log rho_i)``.  In the half-period
symmetric mode only the first ``n/2`` vertices are free and vertex
``i + n/2`` is pinned to ``(phi_i + k pi, rho_i)``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import asdict, dataclass, field

import numpy as np

from .curve import WoundPolygon, validate
from .errors import BadParameters, CurveError, InvalidProbeError
from .santalo import santalo_product

ORIGIN = np.zeros(2)


class Mode(str, enum.Enum):
    GENERAL = "General"
    HALF_PERIOD_SYMMETRIC = "HalfPeriodSymmetric"


class Gauge(str, enum.Enum):
    FIX_FIRST_ANGLE_AND_SCALE = "FixFirstAngleAndScale"


@dataclass
class SearchConfig:
    mode: Mode = Mode.GENERAL
    gauge: Gauge = Gauge.FIX_FIRST_ANGLE_AND_SCALE
    initial_step: float = 0.02
    perturbation: float = 0.05
    restarts: int = 1
    max_iter: int = 4000
    ftol: float = 1e-13
    seed: int = 0

    def __post_init__(self):
        self.mode = Mode(self.mode)
        self.gauge = Gauge(self.gauge)
        if self.initial_step <= 0 or self.perturbation < 0 or self.max_iter < 1 or self.restarts < 1:
            raise BadParameters("invalid search configuration")

    def to_dict(self) -> dict:
        d = asdict(self)
        d["mode"], d["gauge"] = self.mode.value, self.gauge.value
        return d


@dataclass
class SearchTrace:
    iterations: int
    best_value: float
    best_curve: WoundPolygon
    start_value: float
    history: list[float] = field(default_factory=list)
    accepted: int = 0
    rejected: int = 0
    restart: int = 0


class GaugeChart:
    """Map between gauge-fixed coordinates and curves around a reference curve."""

    def __init__(self, C: WoundPolygon, mode: Mode = Mode.GENERAL):
        self.k, self.n, self.mode = C.k, C.n, Mode(mode)
        self.phi0, self.rho0 = float(C.phi[0]), float(C.rho[0])
        if self.mode is Mode.HALF_PERIOD_SYMMETRIC:
            if C.n % 2:
                raise BadParameters("half-period symmetry needs an even vertex count")
            h = C.n // 2
            if not (np.allclose(C.phi[h:], C.phi[:h] + math.pi * C.k, atol=1e-12)
                    and np.allclose(C.rho[h:], C.rho[:h], rtol=1e-12)):
                raise BadParameters("reference curve is not kpi-periodic")
            self.free = h - 1
        else:
            self.free = C.n - 1

    @property
    def dim(self) -> int:
        return 2 * self.free

    def coords(self, C: WoundPolygon) -> np.ndarray:
        m = self.free
        return np.concatenate((C.phi[1 : m + 1], np.log(C.rho[1 : m + 1])))

    def curve(self, x: np.ndarray) -> WoundPolygon:
        """Curve at coordinates ``x``; raises :class:`CurveError` when outside the class."""
        m = self.free
        phi = np.concatenate(([self.phi0], x[:m]))
        rho = np.concatenate(([self.rho0], np.exp(x[m:])))
        if self.mode is Mode.HALF_PERIOD_SYMMETRIC:
            phi = np.concatenate((phi, phi + math.pi * self.k))
            rho = np.concatenate((rho, rho))
        return validate(np.column_stack((phi, rho)), self.k)


def _objective(C: WoundPolygon) -> float:
    # the origin is always inside the kernel; start the inner Newton solve there
    return santalo_product(C, x0=ORIGIN)


def criticality_gradient(C: WoundPolygon, h: float = 1e-5) -> np.ndarray:
    """Central-difference gradient of the Santalo product in gauge-fixed coordinates."""
    if h <= 0:
        raise BadParameters("step must be positive")
    chart = GaugeChart(C)
    x0 = chart.coords(C)
    grad = np.empty(chart.dim)
    for j in range(chart.dim):
        vals = []
        for s in (1.0, -1.0):
            x = x0.copy()
            x[j] += s * h
            try:
                vals.append(_objective(chart.curve(x)))
            except CurveError as exc:
                raise InvalidProbeError(f"probe {j} left the class at h={h}: {exc}") from exc
        grad[j] = (vals[0] - vals[1]) / (2 * h)
    return grad


def criticality_residual(C: WoundPolygon, h: float = 1e-5) -> float:
    """Euclidean norm of :func:`criticality_gradient`."""
    return float(np.linalg.norm(criticality_gradient(C, h)))


def perturb(C: WoundPolygon, config: SearchConfig, rng: np.random.Generator,
            max_tries: int = 10_000) -> WoundPolygon:
    """Uniform random point of the gauge-coordinate ball around ``C``, resampled until valid."""
    chart = GaugeChart(C, config.mode)
    x0 = chart.coords(C)
    for _ in range(max_tries):
        u = rng.standard_normal(chart.dim)
        u *= config.perturbation * rng.random() ** (1 / chart.dim) / np.linalg.norm(u)
        try:
            return chart.curve(x0 + u)
        except CurveError:
            continue
    raise BadParameters("could not draw a valid perturbation; reduce its magnitude")


def local_search(C0: WoundPolygon, config: SearchConfig | None = None, restart: int = 0) -> SearchTrace:
    """Nelder-Mead descent on the Santalo product; class-invalid proposals are rejected."""
    config = config or SearchConfig()
    chart = GaugeChart(C0, config.mode)
    dim = chart.dim
    accepted = rejected = 0

    def evaluate(x):
        nonlocal rejected
        try:
            C = chart.curve(x)
        except CurveError:
            rejected += 1
            return math.inf, None
        return _objective(C), C

    x0 = chart.coords(C0)
    f0 = _objective(C0)
    pts, vals, curves = [x0], [f0], [C0]
    for j in range(dim):
        step = config.initial_step
        while True:
            x = x0.copy()
            x[j] += step
            f, C = evaluate(x)
            if C is not None:
                break
            step *= 0.5
            if step < 1e-12:
                raise BadParameters("start curve sits on the class boundary")
        pts.append(x)
        vals.append(f)
        curves.append(C)
    pts = np.array(pts)
    vals = np.array(vals)

    history = [float(vals.min())]
    it = 0
    while it < config.max_iter:
        order = np.argsort(vals, kind="stable")
        pts, vals = pts[order], vals[order]
        curves = [curves[i] for i in order]
        if vals[-1] - vals[0] <= config.ftol * abs(vals[0]):
            break
        it += 1
        centroid = pts[:-1].mean(axis=0)
        xr = centroid + (centroid - pts[-1])
        fr, Cr = evaluate(xr)
        if fr < vals[0]:
            xe = centroid + 2 * (centroid - pts[-1])
            fe, Ce = evaluate(xe)
            if fe < fr:
                xr, fr, Cr = xe, fe, Ce
            pts[-1], vals[-1], curves[-1] = xr, fr, Cr
            accepted += 1
        elif fr < vals[-2]:
            pts[-1], vals[-1], curves[-1] = xr, fr, Cr
            accepted += 1
        else:
            if fr < vals[-1]:
                xc = centroid + 0.5 * (xr - centroid)
            else:
                xc = centroid + 0.5 * (pts[-1] - centroid)
            fc, Cc = evaluate(xc)
            if fc < min(fr, vals[-1]):
                pts[-1], vals[-1], curves[-1] = xc, fc, Cc
                accepted += 1
            else:
                for i in range(1, dim + 1):
                    t = 0.5
                    while True:
                        xs = pts[0] + t * (pts[i] - pts[0])
                        fs, Cs = evaluate(xs)
                        if Cs is not None:
                            break
                        t *= 0.5
                    pts[i], vals[i], curves[i] = xs, fs, Cs
                accepted += 1
        history.append(float(min(history[-1], vals.min())))

    b = int(np.argmin(vals))
    return SearchTrace(
        iterations=it,
        best_value=float(vals[b]),
        best_curve=curves[b],
        start_value=float(f0),
        history=history,
        accepted=accepted,
        rejected=rejected,
        restart=restart,
    )


def restart_search(C: WoundPolygon, config: SearchConfig) -> list[SearchTrace]:
    """Independent descents from seeded random perturbations of ``C``."""
    seeds = np.random.SeedSequence(config.seed).spawn(config.restarts)
    traces = []
    for i, s in enumerate(seeds):
        rng = np.random.default_rng(s)
        start = perturb(C, config, rng) if config.perturbation > 0 else C
        traces.append(local_search(start, config, restart=i))
    return traces


def best_trace(traces: list[SearchTrace]) -> SearchTrace:
    return min(traces, key=lambda t: (t.best_value, t.restart))


@dataclass
class SweepRow:
    eps: float
    m: int
    value: float
    floor: float

    @property
    def ok(self) -> bool:
        return self.value >= self.floor


def unboundedness_sweep(k: int, eps_list, m: int = 256) -> list[SweepRow]:
    """Santalo products of the two-ellipse curves, sorted by decreasing ``eps``."""
    from .curve import guggenheimer_example

    eps_list = sorted((float(e) for e in eps_list), reverse=True)
    if not eps_list:
        raise BadParameters("empty eps list")
    return [
        SweepRow(e, m, santalo_product(guggenheimer_example(k, e, m)), 0.9 * math.pi**2 / e**2)
        for e in eps_list
    ]


def sweep_increasing(rows: list[SweepRow]) -> bool:
    return all(b.value > a.value for a, b in zip(rows, rows[1:]))
