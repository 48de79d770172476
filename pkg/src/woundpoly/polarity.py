"""Polar curves, volume products and the equal-angle quadrangle decomposition."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .curve import WoundPolygon, area, validate
from .errors import BadParameters


def polar_vertices(xy: np.ndarray) -> np.ndarray:
    """Vertices ``u_i`` with ``<u_i, v_i> = <u_i, v_{i+1}> = 1``.

    Works on a single ``(n, 2)`` array or a batch ``(..., n, 2)``.
    """
    nxt = np.roll(xy, -1, axis=-2)
    det = xy[..., 0] * nxt[..., 1] - xy[..., 1] * nxt[..., 0]
    ux = (nxt[..., 1] - xy[..., 1]) / det
    uy = (xy[..., 0] - nxt[..., 0]) / det
    return np.stack((ux, uy), axis=-1)


def shoelace(xy: np.ndarray) -> np.ndarray:
    """Winding-weighted area of closed polygons, batched over leading axes."""
    nxt = np.roll(xy, -1, axis=-2)
    return 0.5 * np.sum(xy[..., 0] * nxt[..., 1] - xy[..., 1] * nxt[..., 0], axis=-1)


def polar(C: WoundPolygon) -> WoundPolygon:
    """Polar curve; vertex ``i`` is dual to side ``[v_i, v_{i+1}]`` of ``C``."""
    xy = C.xy
    u = polar_vertices(xy)
    offset = np.arctan2(
        xy[:, 0] * u[:, 1] - xy[:, 1] * u[:, 0], np.einsum("ij,ij->i", xy, u)
    )
    phi = C.phi + offset
    rho = np.hypot(u[:, 0], u[:, 1])
    return validate(np.column_stack((phi, rho)), C.k)


def volume_product(C: WoundPolygon) -> float:
    return area(C) * area(polar(C))


def volume_product_batch(xy: np.ndarray) -> np.ndarray:
    """``V(C) V(C*)`` for a batch of Cartesian vertex arrays ``(B, n, 2)``."""
    return shoelace(xy) * shoelace(polar_vertices(xy))


def F_coef(theta):
    h = np.asarray(theta, dtype=float) / 2
    return -np.cos(h) ** 2 / np.tan(h) + np.sin(h) ** 2 * np.tan(h)


def G_coef(theta):
    h = np.asarray(theta, dtype=float) / 2
    return np.cos(h) ** 2 / np.tan(h) + np.sin(h) ** 2 * np.tan(h) + np.sin(2 * h)


@dataclass(frozen=True)
class SectorTerm:
    """One side of an equal-angle decomposition with its quadrangle coefficients."""

    theta: float
    rho_lo: float
    rho_hi: float
    F: float
    G: float

    @property
    def quadrangle_area(self) -> float:
        """Area of the polar quadrangle over this side."""
        a, b = 1 / self.rho_lo, 1 / self.rho_hi
        return ((a * a + b * b) * self.F + 2 * a * b * self.G) / 4


def sector_terms(C: WoundPolygon) -> list[SectorTerm]:
    theta = C.theta
    nxt = np.roll(C.rho, -1)
    F, G = F_coef(theta), G_coef(theta)
    return [
        SectorTerm(float(t), float(r0), float(r1), float(f), float(g))
        for t, r0, r1, f, g in zip(theta, C.rho, nxt, F, G)
    ]


def equal_angle_polar_area(rhos, k: int) -> float:
    """Polar area of the equal-angle curve with radii ``rhos`` via quadrangles."""
    r = np.asarray(rhos, dtype=float)
    n = len(r)
    if k < 1 or n < 2 * k + 1 or np.any(r <= 0):
        raise BadParameters("need k >= 1, n >= 2k+1 and positive radii")
    theta = 2 * math.pi * k / n
    a = 1 / r
    b = np.roll(a, -1)
    return float(np.sum((a * a + b * b) * F_coef(theta) / 4 + 2 * a * b * G_coef(theta) / 4))
