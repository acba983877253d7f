"""Integration of dF = Phi dz from the base point z = 0."""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import PunctureTooClose
from .quadrature import quad_arc, quad_segment
from .weierstrass import WeierstrassTriple

DEFAULT_DELTA = 1e-3


def _segment_distance(p: complex, a: complex, b: complex) -> float:
    d = b - a
    if d == 0:
        return abs(p - a)
    L = abs(d)
    u = d / L  # unit direction; squaring L would underflow for tiny segments
    t = min(L, max(0.0, ((p - a) * u.conjugate()).real))
    return abs(p - (a + t * u))


@dataclass(frozen=True)
class PathPolyline:
    vertices: tuple[complex, ...]
    puncture_clearance: float = DEFAULT_DELTA

    def check(self, anchors: Sequence[complex]) -> None:
        v = self.vertices
        for a, b in zip(v[:-1], v[1:]):
            if a == b:
                raise ValueError("consecutive path vertices coincide")
        for alpha in anchors:
            if len(v) == 1:
                dist = abs(v[0] - alpha)
            else:
                dist = min(_segment_distance(alpha, a, b) for a, b in zip(v[:-1], v[1:]))
            if dist < self.puncture_clearance:
                raise PunctureTooClose(
                    f"path passes within {dist:.3g} of anchor {alpha:.6g} "
                    f"(clearance {self.puncture_clearance})"
                )


def integrate_polyline(t: WeierstrassTriple, path: PathPolyline, tol: float = 1e-10) -> complex:
    path.check(t.spectrum.anchors)
    nseg = len(path.vertices) - 1
    total = 0j
    for a, b in zip(path.vertices[:-1], path.vertices[1:]):
        total += quad_segment(t.phi, a, b, tol / max(nseg, 1)).value
    return total


def _check_point(t: WeierstrassTriple, z: complex, delta: float) -> None:
    if abs(z) > 1.0 + 1e-12:
        raise ValueError(f"point {z} lies outside the closed unit disk")
    dmin = min(abs(z - a) for a in t.spectrum.anchors)
    if dmin < delta:
        raise PunctureTooClose(f"point {z} is {dmin:.3g} from an anchor (clearance {delta})")


def map_point(t: WeierstrassTriple, z: complex, F0: complex = 0j, tol: float = 1e-10,
              delta: float = DEFAULT_DELTA) -> complex:
    """F(z) = F0 + integral of Phi along the radial segment from 0 to z.

    The radial segment from the origin is no closer to any anchor than its
    endpoint is, so it is always admissible once z itself has clearance.
    """
    z = complex(z)
    _check_point(t, z, delta)
    if z == 0:
        return complex(F0)
    return complex(F0) + integrate_polyline(t, PathPolyline((0j, z), delta), tol)


def _detour_angle(t: WeierstrassTriple, phi: float) -> float:
    """Starting angle for the radial-then-arc path: rotate toward the wider anchor gap."""
    th = t.spectrum.angles
    ccw = np.min(np.mod(th - phi, 2 * np.pi))
    cw = np.min(np.mod(phi - th, 2 * np.pi))
    if ccw >= cw:
        return phi + 0.5 * min(ccw, 1.0)
    return phi - 0.5 * min(cw, 1.0)


def map_point_via_arc(t: WeierstrassTriple, z: complex, F0: complex = 0j, tol: float = 1e-10,
                      delta: float = DEFAULT_DELTA) -> complex:
    """F(z) along the radial segment to |z| e^{i phi'} followed by the arc |w| = |z| to z."""
    z = complex(z)
    _check_point(t, z, delta)
    if z == 0:
        return complex(F0)
    rho, phi = abs(z), math.atan2(z.imag, z.real)
    phi0 = _detour_angle(t, phi)
    w = rho * complex(math.cos(phi0), math.sin(phi0))
    radial = integrate_polyline(t, PathPolyline((0j, w), delta), tol / 2)
    arc = quad_arc(t.phi, rho, phi0, phi, tol / 2).value
    return complex(F0) + radial + arc


def check_path_independence(t: WeierstrassTriple, z: complex, tol: float = 1e-10,
                            delta: float = DEFAULT_DELTA) -> float:
    """|F(z)| difference between the direct segment and the radial-then-arc path."""
    z = complex(z)
    if z == 0:
        return 0.0
    return abs(map_point(t, z, 0j, tol, delta) - map_point_via_arc(t, z, 0j, tol, delta))


@dataclass(frozen=True)
class GridSample:
    r: float
    phi: float
    z: complex
    F: complex
    u: float


@dataclass(frozen=True)
class FieldGrid:
    samples: tuple[GridSample, ...]
    base_point: complex = 0j
    base_value: complex = 0j


def map_grid(t: WeierstrassTriple, radial: int, angular: int, rmax: float, tol: float = 1e-10,
             F0: complex = 0j, delta: float = DEFAULT_DELTA, workers: int = 1) -> FieldGrid:
    """Polar grid r = rmax*(i+1)/radial, phi = 2*pi*k/angular, ray by ray.

    Each sample is an independent map_point call, so the output does not
    depend on ``workers``.
    """
    if radial < 2 or angular < 2:
        raise ValueError("radial and angular must be at least 2")
    if not 0 < rmax <= 1:
        raise ValueError("rmax must lie in (0, 1]")
    rs = rmax * np.arange(1, radial + 1) / radial
    phis = 2 * np.pi * np.arange(angular) / angular
    pts = [(float(r), float(p), complex(r * np.exp(1j * p))) for p in phis for r in rs]

    def one(item):
        r, p, z = item
        return GridSample(r, p, z, map_point(t, z, F0, tol, delta), float(t.re_U(z)))

    if workers > 1:
        with ThreadPoolExecutor(workers) as ex:
            samples = list(ex.map(one, pts))
    else:
        samples = [one(x) for x in pts]
    return FieldGrid(tuple(samples), 0j, complex(F0))
