"""Kernel, Santalo point and the affine-invariant Santalo product.

Every side of ``C`` lies on a line ``<a_i, y> = 1`` where ``a_i`` is the
corresponding polar vertex.  Translating the curve by ``-x`` moves the polar
vertex to ``a_i / (1 - <a_i, x>)``, so the polar area is the closed form

    f(x) = 1/2 * sum_i cross(a_i, a_{i+1}) / (d_i d_{i+1}),  d_i = 1 - <a_i, x>

on the kernel ``{x : d_i > 0 for all i}``.  Each summand is log-convex, and
``f`` blows up at the kernel boundary, so a damped Newton iteration that
refuses to leave the kernel finds the unique minimiser.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curve import WoundPolygon, area
from .errors import BadParameters, NoConvergence
from .polarity import polar_vertices

MAX_ITER = 500


@dataclass(frozen=True, eq=False)
class ConvexPolygon:
    """Counterclockwise convex polygon given by Cartesian vertices."""

    vertices: np.ndarray

    def area(self) -> float:
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        return float(0.5 * np.sum(v[:, 0] * w[:, 1] - v[:, 1] * w[:, 0]))

    def centroid(self) -> np.ndarray:
        v = self.vertices
        w = np.roll(v, -1, axis=0)
        cr = v[:, 0] * w[:, 1] - v[:, 1] * w[:, 0]
        a = cr.sum() / 2
        return ((v + w) * cr[:, None]).sum(axis=0) / (6 * a)

    def contains(self, p, strict: bool = True) -> bool:
        v = self.vertices
        d = np.roll(v, -1, axis=0) - v
        w = np.asarray(p, dtype=float) - v
        cr = d[:, 0] * w[:, 1] - d[:, 1] * w[:, 0]
        return bool(np.all(cr > 0) if strict else np.all(cr >= 0))

    def inradius_about(self, p) -> float:
        """Distance from ``p`` to the nearest edge line."""
        v = self.vertices
        d = np.roll(v, -1, axis=0) - v
        w = np.asarray(p, dtype=float) - v
        cr = d[:, 0] * w[:, 1] - d[:, 1] * w[:, 0]
        return float(np.min(cr / np.hypot(d[:, 0], d[:, 1])))


@dataclass(frozen=True, eq=False)
class SantaloResult:
    point: np.ndarray
    value: float
    gradient_norm: float
    iterations: int


def _clip(poly: np.ndarray, p: np.ndarray, d: np.ndarray) -> np.ndarray:
    """Keep the part of ``poly`` on the left of the directed line ``p + t d``."""
    s = d[0] * (poly[:, 1] - p[1]) - d[1] * (poly[:, 0] - p[0])
    out = []
    m = len(poly)
    for j in range(m):
        a, b = poly[j], poly[(j + 1) % m]
        sa, sb = s[j], s[(j + 1) % m]
        if sa >= 0:
            out.append(a)
        if (sa >= 0) != (sb >= 0):
            out.append(a + (b - a) * (sa / (sa - sb)))
    return np.array(out).reshape(-1, 2)


def kernel(C: WoundPolygon) -> ConvexPolygon:
    """Intersection of the origin-side half-planes of all sides of ``C``."""
    xy = C.xy
    R = 2.0 * float(np.max(C.rho))
    poly = np.array([[-R, -R], [R, -R], [R, R], [-R, R]])
    d = np.roll(xy, -1, axis=0) - xy
    for i in range(C.n):
        poly = _clip(poly, xy[i], d[i])
    # drop duplicate points produced by clipping through existing vertices
    keep = np.linalg.norm(poly - np.roll(poly, 1, axis=0), axis=1) > 1e-14 * R
    return ConvexPolygon(poly[keep])


def _coefficients(C: WoundPolygon) -> tuple[np.ndarray, np.ndarray]:
    a = polar_vertices(C.xy)
    b = np.roll(a, -1, axis=0)
    c = a[:, 0] * b[:, 1] - a[:, 1] * b[:, 0]
    return a, c


def polar_area_at(C: WoundPolygon, x) -> float:
    """Area of ``(C - x)*``; ``inf`` outside the kernel."""
    a, c = _coefficients(C)
    d = 1.0 - a @ np.asarray(x, dtype=float)
    if np.any(d <= 0):
        return math.inf
    return float(0.5 * np.sum(c / (d * np.roll(d, -1))))


def _derivatives(a, c, x):
    d = 1.0 - a @ x
    d1 = np.roll(d, -1)
    a1 = np.roll(a, -1, axis=0)
    g = c / (d * d1)
    w = a / d[:, None] + a1 / d1[:, None]
    grad = 0.5 * (g[:, None] * w).sum(axis=0)
    p = a / d[:, None]
    q = a1 / d1[:, None]
    hess = 0.5 * np.einsum("i,ij,ik->jk", g, w, w)
    hess += 0.5 * np.einsum("i,ij,ik->jk", g, p, p)
    hess += 0.5 * np.einsum("i,ij,ik->jk", g, q, q)
    return 0.5 * g.sum(), grad, hess


def polar_area_gradient(C: WoundPolygon, x) -> np.ndarray:
    a, c = _coefficients(C)
    return _derivatives(a, c, np.asarray(x, dtype=float))[1]


def gradient_scale(C: WoundPolygon, x0=None) -> float:
    """Natural magnitude of the polar-area gradient, used to set relative tolerances."""
    a, c = _coefficients(C)
    x0 = kernel(C).centroid() if x0 is None else np.asarray(x0, dtype=float)
    d = 1.0 - a @ x0
    return float(0.5 * np.sum(c / (d * np.roll(d, -1))) * np.max(np.hypot(a[:, 0], a[:, 1]) / d))


def santalo_point(C: WoundPolygon, tol: float | None = None, max_iter: int = MAX_ITER,
                  x0=None) -> SantaloResult:
    """Minimise the polar area of ``C - x`` over the kernel.

    ``tol`` bounds the gradient norm at the returned point; the default is
    ``1e-9`` times :func:`gradient_scale`.  The Newton iteration starts at
    ``x0`` (default: the kernel centroid), which must lie inside the kernel.
    """
    a, c = _coefficients(C)
    if x0 is None:
        x = kernel(C).centroid()
    else:
        x = np.asarray(x0, dtype=float).reshape(2)
        if np.any(a @ x >= 1):
            raise BadParameters("Newton start point is outside the kernel")
    if tol is None:
        tol = 1e-9 * gradient_scale(C, x)
    if tol <= 0:
        raise BadParameters("tolerance must be positive")

    f, g, H = _derivatives(a, c, x)
    for it in range(max_iter + 1):
        gn = float(np.hypot(*g))
        if gn <= tol:
            return SantaloResult(point=x, value=float(f), gradient_norm=gn, iterations=it)
        step = -np.linalg.solve(H, g)
        decrement = -float(g @ step)
        t = 1.0
        while True:
            y = x + t * step
            d = 1.0 - a @ y
            if np.all(d > 0):
                fy = 0.5 * np.sum(c / (d * np.roll(d, -1)))
                # near the optimum rounding hides the decrease; take the full step
                if fy <= f - 1e-4 * t * decrement or decrement < 1e-10 * f:
                    break
            t *= 0.5
            if t < 1e-30:
                raise NoConvergence(f"line search stalled at gradient norm {gn:.3e}")
        x = y
        f, g, H = _derivatives(a, c, x)
    raise NoConvergence(f"no convergence in {max_iter} iterations (gradient norm {gn:.3e})")


def santalo_product(C: WoundPolygon, tol: float | None = None, x0=None) -> float:
    """``V(C) V((C - s(C))*)``, invariant under affine maps of positive determinant."""
    return area(C) * santalo_point(C, tol, x0=x0).value
