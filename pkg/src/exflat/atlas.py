"""Closed-form examples, boundary tracing, end directions and similarity fits."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateConfiguration,
    NoConvergence,
    OutsideDomain,
    OutsideStrip,
)
from .flow import map_point
from .quadrature import adaptive, cumulative_arc, quad_arc, quad_segment
from .sweep import Crossing, polyline_crossings
from .weierstrass import WeierstrassTriple, eval_re_U_polar

HALF_PI = 0.5 * math.pi


# -- hairpin -----------------------------------------------------------------

def hairpin_eval(z: complex) -> tuple[complex, float, float]:
    """F = z + sinh z, roof u(F(z)) = Re cosh z, |grad u|^2 at F(z)."""
    z = complex(z)
    if abs(z.imag) > HALF_PI * (1 + 1e-15):
        raise OutsideStrip(f"|Im z| = {abs(z.imag)} exceeds pi/2")
    x, y = z.real, z.imag
    F = z + cmath.sinh(z)
    u = math.cosh(x) * math.cos(y)
    grad_sq = (math.cosh(x) - math.cos(y)) / (math.cosh(x) + math.cos(y))
    return F, u, grad_sq


def hairpin_map(z):
    """Vectorized z + sinh z."""
    return z + np.sinh(z)


def hairpin_contains(w: complex) -> bool:
    w = complex(w)
    return abs(w.imag) < HALF_PI + math.cosh(min(abs(w.real), 710.0))


def hairpin_boundary(x) -> tuple[np.ndarray, np.ndarray]:
    """Upper and lower boundary curves x +/- i(pi/2 + cosh x)."""
    x = np.asarray(x, dtype=float)
    y = HALF_PI + np.cosh(x)
    return x + 1j * y, x - 1j * y


def hairpin_invert(w, seed, iters: int = 50):
    """Solve z + sinh z = w by Newton's method from ``seed``."""
    z = np.array(seed, dtype=complex)
    w = np.asarray(w, dtype=complex)
    for _ in range(iters):
        step = (z + np.sinh(z) - w) / (1 + np.cosh(z))
        z = z - step
        if np.all(np.abs(step) <= 4e-16 * np.maximum(1, np.abs(z))):
            break
    return z


# -- trivial examples ----------------------------------------------------------

def catalogue_trivial(kind: str, point, m: int = 2) -> float:
    """Roof of the half plane (x_1) or of the exterior of the unit ball."""
    if isinstance(point, complex):
        x = np.array([point.real, point.imag])
    else:
        x = np.atleast_1d(np.asarray(point, dtype=float))
    if kind == "halfplane":
        if not x[0] > 0:
            raise OutsideDomain(f"x_1 = {x[0]} is not positive")
        return float(x[0])
    r = float(np.linalg.norm(x))
    if not r > 1:
        raise OutsideDomain(f"|x| = {r} is not greater than 1")
    if kind == "exterior_disk_2d":
        return math.log(r)
    if kind == "exterior_disk_md":
        if m < 3:
            raise ValueError("exterior_disk_md needs m >= 3")
        return 1.0 - r ** (2 - m)
    raise ValueError(f"unknown kind {kind!r}")


# -- the periodic example -------------------------------------------------------

def _entire_integrand(z):
    return np.exp(-np.sinh(z))


def pathological_eval(z: complex, tol: float = 1e-10) -> complex:
    """F(z) = integral of exp(-sinh s) ds along the segment from 0 to z."""
    z = complex(z)
    if z.real < 0:
        raise OutsideDomain("the example lives on Re z >= 0")
    return quad_segment(_entire_integrand, 0j, z, tol).value


def period_constant(tol: float = 1e-10) -> complex:
    """C = i * integral over [0, 2pi] of exp(-i sin s) ds, the period of F under z -> z + 2 pi i."""
    res = adaptive(lambda s: np.exp(-1j * np.sin(s)), 0.0, 2 * math.pi, tol)
    return 1j * res.value


# -- boundary tracing ---------------------------------------------------------

@dataclass(frozen=True)
class BoundaryCurve:
    arc_index: int
    thetas: np.ndarray
    points: np.ndarray
    us: np.ndarray


def arc_angles(a: float, b: float, N: int, eps_end: float, spacing: str = "logit") -> np.ndarray:
    """N increasing angles in [a + eps_end, b - eps_end].

    ``logit`` spacing is uniform in log(d / (L - d)), d the distance to a,
    which clusters samples geometrically toward both anchors where the image
    runs off to infinity.
    """
    L = b - a
    if not 0 < eps_end < L / 2:
        raise ValueError("eps_end must lie in (0, arc length / 2)")
    if spacing == "uniform":
        return np.linspace(a + eps_end, b - eps_end, N)
    if spacing != "logit":
        raise ValueError(f"unknown spacing {spacing!r}")
    s0 = math.log(eps_end / (L - eps_end))
    sig = np.linspace(s0, -s0, N)
    d = L / (1 + np.exp(-sig))
    d[0], d[-1] = eps_end, L - eps_end
    return a + d


def trace_boundary(t: WeierstrassTriple, j: int, N: int = 500, eps_end: float = 1e-3,
                   F0: complex = 0j, tol: float = 1e-10, spacing: str = "logit") -> BoundaryCurve:
    """Sample F on the arc from anchor j to anchor j+1 (counterclockwise).

    The arc midpoint is placed with map_point; the other samples follow by
    integrating Phi along the unit circle in both directions.
    """
    if N < 2:
        raise ValueError("N must be at least 2")
    a, b = t.spectrum.arc_bounds(j)
    th = arc_angles(a, b, N, eps_end, spacing)
    mid = 0.5 * (a + b)
    th_all = np.sort(np.concatenate([th, [mid]]))
    k = int(np.searchsorted(th_all, mid))
    Fmid = map_point(t, cmath.exp(1j * mid), F0, tol / 2)
    inc = cumulative_arc(t.phi, 1.0, th_all, tol / 2)
    F = np.empty(len(th_all), dtype=complex)
    F[k] = Fmid
    F[k + 1:] = Fmid + np.cumsum(inc[k:])
    F[:k] = Fmid - np.cumsum(inc[:k][::-1])[::-1]
    F = np.delete(F, k)
    us = eval_re_U_polar(t.spectrum, 1.0, th)
    return BoundaryCurve(j, th, F, us)


# -- ends ----------------------------------------------------------------------

@dataclass(frozen=True)
class EndReport:
    """Limiting directions at anchor j.

    ``tau_minus`` is the direction in which the arc leaving the anchor
    (arc j) runs off; ``tau_plus`` that of the arc arriving at it (arc j-1).
    ``theta`` satisfies tau_minus = e^{i theta} tau_plus.
    """

    anchor_index: int
    tau_minus: complex
    tau_plus: complex
    theta: float
    extrapolation_error: float


def _fit_direction(d: np.ndarray, w: np.ndarray) -> complex:
    # w(d) = tau + beta d log d + gamma d + O(d^2 log^2 d) for a double pole of Phi
    M = np.column_stack([np.ones_like(d), d * np.log(d), d])
    coef = np.linalg.solve(M, w)
    return coef[0] / abs(coef[0])


def _side_directions(t, theta_a, sign, ds, F0, tol):
    th = theta_a + sign * ds
    F = np.empty(len(ds), dtype=complex)
    F[0] = map_point(t, cmath.exp(1j * th[0]), F0, tol, delta=0.5 * ds[-1])
    for k in range(1, len(ds)):
        F[k] = F[k - 1] + quad_arc(t.phi, 1.0, th[k - 1], th[k], tol, rtol=1e-14).value
    return F / np.abs(F)


def end_data(t: WeierstrassTriple, j: int, geometric_ratio: float = 0.5, K: int = 6,
             d0: float = 1e-5, F0: complex = 0j, tol: float = 1e-10,
             cauchy_tol: float = 1e-4) -> EndReport:
    """Asymptotic directions of the boundary image at anchor j.

    F is sampled at angular distances d0 * ratio**k on both sides; the last
    three directions are extrapolated to d = 0. With K >= 4 the
    extrapolation from the three preceding samples must agree within
    ``cauchy_tol``.
    """
    if not 0 < geometric_ratio < 1:
        raise ValueError("geometric_ratio must lie in (0, 1)")
    if K < 3:
        raise ValueError("K must be at least 3")
    s = t.spectrum
    theta_a = float(s.angles[j])
    if s.n > 1:
        gaps = (s.arc_bounds(j)[1] - s.arc_bounds(j)[0], s.arc_bounds((j - 1) % s.n)[1] - s.arc_bounds((j - 1) % s.n)[0])
        if d0 >= 0.25 * min(gaps):
            raise ValueError("d0 too large for the neighbouring arcs")
    ds = d0 * geometric_ratio ** np.arange(K)
    taus = []
    err = 0.0
    for sign in (+1, -1):
        w = _side_directions(t, theta_a, sign, ds, F0, tol)
        tau = _fit_direction(ds[-3:], w[-3:])
        prev = _fit_direction(ds[-4:-1], w[-4:-1]) if K >= 4 else w[-1]
        e = abs(tau - prev)
        if not e <= cauchy_tol:
            raise NoConvergence(f"end direction at anchor {j} not settled (change {e:.3g})")
        err = max(err, e)
        taus.append(tau)
    tau_minus, tau_plus = taus
    theta = float(np.mod(np.angle(tau_minus / tau_plus), 2 * np.pi))
    return EndReport(j, complex(tau_minus), complex(tau_plus), theta, err)


def end_direction_exact(t: WeierstrassTriple, j: int) -> complex:
    """Leaving direction from the pole structure: Phi ~ 2 a alpha / (h(alpha) (z - alpha)^2).

    Along the circle z - alpha ~ i alpha d, so F ~ i (2 a / h(alpha)) / d.
    """
    alpha = t.spectrum.anchors[j]
    a = t.spectrum.weights[j]
    v = 1j * 2 * a / t.h(alpha)
    return v / abs(v)


# -- crossings -----------------------------------------------------------------

def self_intersections(curves: Sequence[BoundaryCurve]) -> list[Crossing]:
    """Transverse crossings between and within boundary polylines.

    ``Crossing.curve_a``/``curve_b`` index into ``curves``.
    """
    return polyline_crossings([c.points for c in curves])


# -- similarity ----------------------------------------------------------------

@dataclass(frozen=True)
class SimilarityTransform:
    """w -> rotation_scale * w + translation, with w conjugated first if ``reflection``."""

    rotation_scale: complex
    translation: complex
    reflection: bool = False

    def __call__(self, z):
        z = np.conj(z) if self.reflection else z
        return self.rotation_scale * z + self.translation

    def inverse(self) -> SimilarityTransform:
        lam, c = self.rotation_scale, self.translation
        if self.reflection:
            return SimilarityTransform(1 / np.conj(lam), -np.conj(c) / np.conj(lam), True)
        return SimilarityTransform(1 / lam, -c / lam, False)


def diameter(points) -> float:
    p = np.asarray(points, dtype=complex).ravel()
    best = 0.0
    for i in range(0, len(p), 512):
        best = max(best, float(np.max(np.abs(p[i:i + 512, None] - p[None, :]))))
    return best


def _lstsq_similarity(A, B):
    ma, mb = A.mean(), B.mean()
    Ac, Bc = A - ma, B - mb
    lam = np.vdot(Ac, Bc) / np.vdot(Ac, Ac).real
    return lam, mb - lam * ma


def fit_similarity(A, B, allow_reflection: bool = False) -> tuple[SimilarityTransform, float]:
    """Least-squares B ~ lam*A + c (or lam*conj(A) + c).

    The residual is the RMS misfit divided by the diameter of B.
    """
    A = np.asarray(A, dtype=complex).ravel()
    B = np.asarray(B, dtype=complex).ravel()
    if len(A) != len(B) or len(A) < 2:
        raise ValueError("need two equal-length point lists of length >= 2")
    if np.all(A == A[0]):
        raise DegenerateConfiguration("all source points coincide")
    options = [False, True] if allow_reflection else [False]
    best = None
    for refl in options:
        src = np.conj(A) if refl else A
        lam, c = _lstsq_similarity(src, B)
        rms = float(np.sqrt(np.mean(np.abs(lam * src + c - B) ** 2)))
        if best is None or rms < best[1]:
            best = (SimilarityTransform(complex(lam), complex(c), refl), rms)
    T, rms = best
    diam = diameter(B)
    residual = rms / diam if diam > 0 else (0.0 if rms == 0 else math.inf)
    return T, residual


# -- n = 2 versus the hairpin ---------------------------------------------------

def _vertex_split(points: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split a polyline at its point of minimal modulus, refined between samples.

    Returns the two halves, each starting at the vertex.
    """
    r2 = np.abs(points) ** 2
    k = int(np.argmin(r2))
    if 0 < k < len(points) - 1:
        a, b, c = r2[k - 1], r2[k], r2[k + 1]
        curv = a - 2 * b + c
        off = 0.5 * (a - c) / curv if curv > 0 else 0.0
        off = min(0.5, max(-0.5, off))
    else:
        off = 0.0
    if off >= 0:
        v = points[k] + off * (points[min(k + 1, len(points) - 1)] - points[k])
        left = np.concatenate([[v], points[k::-1]])
        right = np.concatenate([[v], points[k + 1:]])
    else:
        v = points[k] + (-off) * (points[k - 1] - points[k])
        left = np.concatenate([[v], points[k - 1::-1]])
        right = np.concatenate([[v], points[k:]])
    return left, right


def _arclength(p: np.ndarray) -> np.ndarray:
    return np.concatenate([[0.0], np.cumsum(np.abs(np.diff(p)))])


def _resample(p: np.ndarray, u: np.ndarray) -> np.ndarray:
    s = _arclength(p)
    s = s / s[-1]
    return np.interp(u, s, p.real) + 1j * np.interp(u, s, p.imag)


@dataclass(frozen=True)
class HairpinComparison:
    transform: SimilarityTransform
    residual: float
    extents: tuple[float, ...]
    points: int


def hairpin_comparison(t: WeierstrassTriple, samples_per_arc: int = 2000, eps_end: float = 1e-3,
                       tol: float = 1e-10, points_per_half: int = 1000) -> HairpinComparison:
    """Similarity fit of the two boundary curves of a two-anchor triple onto the hairpin.

    Each curve is split at its point of minimal |w| and both halves are
    matched to the hairpin boundary by normalized arc length. The hairpin
    extent x in [0, X] of each half follows from the half's arc length,
    measured in units of the vertex gap (pi + 2 on the hairpin), since the
    hairpin half-arc from x = 0 to X has length sinh X.
    """
    if t.spectrum.n != 2:
        raise ValueError("hairpin comparison needs a two-anchor spectrum")
    curves = [trace_boundary(t, j, samples_per_arc, eps_end, 0j, tol) for j in range(2)]
    halves = [_vertex_split(c.points) for c in curves]
    gap = abs(halves[0][0][0] - halves[1][0][0])
    unit = gap / (math.pi + 2.0)
    u = np.linspace(0.0, 1.0, points_per_half)
    traced = []
    extents = []
    for left, right in halves:
        pair = []
        for half in (left, right):
            X = math.asinh(_arclength(half)[-1] / unit)
            extents.append(X)
            pair.append((_resample(half, u), X))
        traced.append(pair)

    def ref_half(X, upper, sign):
        x = sign * np.arcsinh(u * math.sinh(X))
        up, lo = hairpin_boundary(x)
        return up if upper else lo

    best = None
    for first_upper in (True, False):
        for o0 in (1, -1):
            for o1 in (1, -1):
                A, B = [], []
                for (pair, upper, o) in ((traced[0], first_upper, o0), (traced[1], not first_upper, o1)):
                    for (pts, X), sign in zip(pair, (o, -o)):
                        A.append(pts)
                        B.append(ref_half(X, upper, sign))
                T, res = fit_similarity(np.concatenate(A), np.concatenate(B))
                if best is None or res < best[1]:
                    best = (T, res)
    return HairpinComparison(best[0], best[1], tuple(extents), 4 * points_per_half)
