"""Locally convex closed polygons winding ``k`` times around the origin.

A curve is stored in lifted polar coordinates: vertex ``i`` sits at angle
``phi[i]`` (unwrapped, strictly increasing) and radius ``rho[i]``.  The
closing vertex ``(phi[0] + 2*k*pi, rho[0])`` is implicit, so the sector
angles are ``theta[i] = phi[i+1] - phi[i]`` with the last one wrapping
around through the closure.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    AngleOrderError,
    BadParameters,
    ClosureMismatchError,
    NonPositiveRadiusError,
    OrientationReversingError,
    OutOfDomainError,
    OutsideKernelError,
    ReflexVertexError,
    SectorTooWideError,
    SingularMapError,
)

TWO_PI = 2.0 * math.pi
CLOSURE_TOL = 1e-9
FLAT_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class WoundPolygon:
    """Closed polygon of winding number ``k`` in lifted polar coordinates.

    Build instances through :func:`validate` (or a constructor that calls
    it); the dataclass itself does not re-check its invariants.
    """

    k: int
    phi: np.ndarray
    rho: np.ndarray

    def __post_init__(self):
        self.phi.setflags(write=False)
        self.rho.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.phi)

    @property
    def total_angle(self) -> float:
        return TWO_PI * self.k

    @property
    def theta(self) -> np.ndarray:
        """Central angles of the sides; they sum to ``2*k*pi``."""
        return sector_angles(self.phi, self.k)

    @property
    def xy(self) -> np.ndarray:
        return np.column_stack((self.rho * np.cos(self.phi), self.rho * np.sin(self.phi)))

    @property
    def vertices(self) -> list[tuple[float, float]]:
        return [(float(p), float(r)) for p, r in zip(self.phi, self.rho)]

    def scaled(self, factor: float) -> "WoundPolygon":
        """Dilation from the origin by ``factor > 0``."""
        if factor <= 0:
            raise BadParameters("dilation factor must be positive")
        return validate(np.column_stack((self.phi, self.rho * factor)), self.k)

    def __repr__(self):
        return f"WoundPolygon(k={self.k}, n={self.n})"


def sector_angles(phi: np.ndarray, k: int) -> np.ndarray:
    phi = np.asarray(phi, dtype=float)
    closed = np.append(phi, phi[0] + TWO_PI * k)
    return np.diff(closed)


def turn_crosses(xy: np.ndarray) -> np.ndarray:
    """``cross(v[i+1] - v[i], v[i+2] - v[i+1])`` for every cyclic ``i``.

    Entry ``i`` belongs to the turn at vertex ``i + 1``.
    """
    d = np.roll(xy, -1, axis=-2) - xy
    d_next = np.roll(d, -1, axis=-2)
    return d[..., 0] * d_next[..., 1] - d[..., 1] * d_next[..., 0]


def validate(
    raw: Iterable[Sequence[float]] | np.ndarray,
    k: int,
    tolerance: float = CLOSURE_TOL,
    allow_flat: bool = False,
) -> WoundPolygon:
    """Check ``raw`` ``(phi, rho)`` pairs for class membership.

    The closing vertex may be given explicitly as a final pair at
    ``phi[0] + 2*k*pi``; it is then dropped after the sector angles are
    rescaled to sum exactly to ``2*k*pi`` (only if the mismatch is within
    ``tolerance``).
    """
    if int(k) != k or k < 1:
        raise BadParameters(f"winding number must be a positive integer, got {k!r}")
    k = int(k)
    arr = np.array(raw, dtype=float)
    if arr.ndim != 2 or arr.shape[1] != 2 or len(arr) < 3:
        raise BadParameters("expected at least three (phi, rho) pairs")
    if not np.all(np.isfinite(arr)):
        raise BadParameters("non-finite vertex coordinates")
    phi, rho = arr[:, 0].copy(), arr[:, 1].copy()

    if np.any(rho <= 0):
        i = int(np.argmax(rho <= 0))
        raise NonPositiveRadiusError(f"vertex {i} has radius {rho[i]!r}")
    steps = np.diff(phi)
    if np.any(steps <= 0):
        i = int(np.argmax(steps <= 0))
        raise AngleOrderError(f"phi not strictly increasing at vertex {i + 1}")

    full = TWO_PI * k
    span = phi[-1] - phi[0]
    if span >= full - tolerance:
        # explicit closing vertex
        if abs(span - full) > tolerance:
            raise ClosureMismatchError(
                f"central angles sum to {span!r}, expected {full!r}"
            )
        if abs(rho[-1] - rho[0]) > tolerance * max(1.0, rho[0]):
            raise ClosureMismatchError("closing vertex radius differs from the first")
        theta = steps * (full / span)
        phi = phi[0] + np.concatenate(([0.0], np.cumsum(theta[:-1])))
        rho = rho[:-1]

    theta = sector_angles(phi, k)
    if np.any(theta >= math.pi):
        i = int(np.argmax(theta >= math.pi))
        raise SectorTooWideError(f"side {i} spans {theta[i]!r} >= pi")

    xy = np.column_stack((rho * np.cos(phi), rho * np.sin(phi)))
    cr = turn_crosses(xy)
    d = np.linalg.norm(np.roll(xy, -1, axis=0) - xy, axis=1)
    band = FLAT_TOL * d * np.roll(d, -1)
    bad = cr <= band
    if np.any(bad):
        flat = bad & (np.abs(cr) <= band)
        if allow_flat and np.all(flat[bad]):
            warnings.warn("curve has straight (collinear) vertices", stacklevel=2)
        else:
            i = int(np.argmax(bad))
            j = (i + 1) % len(phi)
            raise ReflexVertexError(f"vertex {j} is not a strict left turn (cross={cr[i]!r})")

    return WoundPolygon(k=k, phi=phi, rho=rho)


def lift_cartesian(xy: np.ndarray, k: int, phi0_hint: float | None = None) -> WoundPolygon:
    """Rebuild lifted coordinates for Cartesian vertices of a winding-``k`` curve.

    Consecutive vertices must subtend an angle in ``(0, pi)`` at the origin.
    ``phi0_hint`` picks the lift of the first vertex closest to it.
    """
    xy = np.asarray(xy, dtype=float)
    nxt = np.roll(xy, -1, axis=0)
    cross = xy[:, 0] * nxt[:, 1] - xy[:, 1] * nxt[:, 0]
    dot = np.einsum("ij,ij->i", xy, nxt)
    theta = np.arctan2(cross, dot)
    turns = theta.sum() / TWO_PI
    if np.any(theta <= 0) or abs(turns - k) > 1e-6:
        raise ClosureMismatchError(f"vertices wind {turns:.6g} times, expected {k}")
    phi0 = math.atan2(xy[0, 1], xy[0, 0])
    if phi0_hint is not None:
        phi0 = phi0_hint + math.remainder(phi0 - phi0_hint, TWO_PI)
    phi = phi0 + np.concatenate(([0.0], np.cumsum(theta[:-1])))
    rho = np.hypot(xy[:, 0], xy[:, 1])
    return validate(np.column_stack((phi, rho)), k)


def construct_cnk(n: int, k: int) -> WoundPolygon:
    """Regular star ``C_{n,k}``: unit circle vertices advancing ``2*k*pi/n``."""
    if k < 1 or n <= 2 * k:
        raise BadParameters(f"C_(n,k) needs k >= 1 and n >= 2k+1, got n={n}, k={k}")
    i = np.arange(n)
    return validate(np.column_stack((TWO_PI * k * i / n, np.ones(n))), k)


def area(C: WoundPolygon) -> float:
    """Index-weighted enclosed area, ``sum rho_i rho_{i+1} sin(theta_i) / 2``."""
    return float(0.5 * np.sum(C.rho * np.roll(C.rho, -1) * np.sin(C.theta)))


def radial_function(C: WoundPolygon, phi):
    """Distance from the origin to the curve along lifted angle ``phi``.

    ``phi`` may be a scalar or an array in ``[phi_0, phi_0 + 2*k*pi)``.
    """
    q = np.asarray(phi, dtype=float)
    lo, hi = C.phi[0], C.phi[0] + C.total_angle
    if np.any((q < lo) | (q >= hi)) or not np.all(np.isfinite(q)):
        raise OutOfDomainError(f"phi must lie in [{lo!r}, {hi!r})")
    side = np.clip(np.searchsorted(C.phi, q, side="right") - 1, 0, C.n - 1)
    theta = C.theta
    r0 = C.rho[side]
    r1 = np.roll(C.rho, -1)[side]
    a = q - C.phi[side]
    out = r0 * r1 * np.sin(theta[side]) / (r0 * np.sin(a) + r1 * np.sin(theta[side] - a))
    return float(out) if np.ndim(out) == 0 else out


def apply_linear(C: WoundPolygon, M) -> WoundPolygon:
    """Image of ``C`` under the orientation-preserving linear map ``M``."""
    M = np.asarray(M, dtype=float).reshape(2, 2)
    det = float(np.linalg.det(M))
    if det == 0.0:
        raise SingularMapError("linear map is singular")
    if det < 0:
        raise OrientationReversingError("linear map reverses orientation")
    xy = C.xy @ M.T
    return lift_cartesian(xy, C.k, phi0_hint=C.phi[0])


def kernel_margins(C: WoundPolygon, x) -> np.ndarray:
    """``cross(v[i+1] - v[i], x - v[i])`` per side; all positive iff ``x`` is in the kernel."""
    xy = C.xy
    d = np.roll(xy, -1, axis=0) - xy
    w = np.asarray(x, dtype=float) - xy
    return d[:, 0] * w[:, 1] - d[:, 1] * w[:, 0]


def in_kernel(C: WoundPolygon, x) -> bool:
    return bool(np.all(kernel_margins(C, x) > 0))


def translate(C: WoundPolygon, x) -> WoundPolygon:
    """The curve ``C - x``; ``x`` must lie strictly inside the kernel of ``C``."""
    x = np.asarray(x, dtype=float).reshape(2)
    if not in_kernel(C, x):
        raise OutsideKernelError(f"point {tuple(x)} is not inside the kernel")
    if not np.any(x):
        return C
    return lift_cartesian(C.xy - x, C.k, phi0_hint=C.phi[0])


def guggenheimer_example(k: int, eps: float, m: int) -> WoundPolygon:
    """Polygonal two-ellipse curve with unbounded Santalo product as ``eps -> 0``.

    ``m`` vertices on ``x^2 + (y/eps)^2 = 1`` traversed once from ``(1, 0)``,
    followed by ``k - 1`` loops of ``m`` vertices on ``x^2 + (y*eps)^2 = 1``.
    Vertices are equally spaced in the eccentric anomaly.
    """
    if k < 2 or not 0 < eps < 1 or m < 16:
        raise BadParameters("need k >= 2, 0 < eps < 1 and m >= 16")
    t = TWO_PI * np.arange(m) / m

    def loop(sy):
        ang = np.unwrap(np.arctan2(sy * np.sin(t), np.cos(t)))
        return ang, np.hypot(np.cos(t), sy * np.sin(t))

    a1, r1 = loop(eps)
    a2, r2 = loop(1.0 / eps)
    phi = [a1] + [a2 + TWO_PI * j for j in range(1, k)]
    rho = [r1] + [r2] * (k - 1)
    return validate(np.column_stack((np.concatenate(phi), np.concatenate(rho))), k)


def same_curve(A: WoundPolygon, B: WoundPolygon, atol: float = 1e-10) -> bool:
    """Vertexwise equality up to cyclic relabelling of the vertex list."""
    if A.k != B.k or A.n != B.n:
        return False
    a, b = A.xy, B.xy
    for shift in range(A.n):
        if np.allclose(np.roll(b, shift, axis=0), a, rtol=0, atol=atol):
            return True
    return False
