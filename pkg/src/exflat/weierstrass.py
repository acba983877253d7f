"""Poisson spectra, the holomorphic roof U, and the assembled (U, h, Phi) triple.

A spectrum is a set of anchors on the unit circle with positive weights. It
defines

    U(z) = -sum_k a_k (z + alpha_k) / (z - alpha_k)

whose real part is positive in the disk and vanishes on the circle away from
the anchors. Clearing the double poles of dU gives a polynomial P; the
Blaschke product h built on the roots of P inside the disk makes
Phi = dU / h zero free, and integrating Phi gives the flat immersion.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

import numpy as np

from .analytic import (
    BOUNDARY,
    DEFAULT_EPS_BDRY,
    EPS,
    INSIDE,
    BlaschkeProduct,
    Polynomial,
    RootSet,
    deflate,
    poly_eval,
    poly_roots,
)
from .errors import (
    AnchorOffCircle,
    AnchorSingularity,
    DuplicateAnchors,
    NonpositiveWeight,
    RootNearBoundary,
)

SINGULAR_RADIUS = 1e-14
ZERO_MATCH_TOL = 1e-8


@dataclass(frozen=True)
class PoissonSpectrum:
    anchors: tuple[complex, ...]
    weights: tuple[float, ...]

    @property
    def n(self) -> int:
        return len(self.anchors)

    @property
    def angles(self) -> np.ndarray:
        """Anchor arguments in [0, 2pi)."""
        return np.mod(np.angle(np.asarray(self.anchors)), 2 * np.pi)

    def arc_bounds(self, j: int) -> tuple[float, float]:
        """Angular interval of the open arc from anchor j counterclockwise to anchor j+1."""
        th = self.angles
        a = th[j]
        b = th[(j + 1) % self.n]
        if b <= a:
            b += 2 * np.pi
        return float(a), float(b)


def _angular_gaps(angles: np.ndarray) -> np.ndarray:
    th = np.sort(angles)
    return np.diff(np.concatenate([th, [th[0] + 2 * np.pi]]))


def validate_spectrum(
    anchors: Sequence[complex], weights: Sequence[float], sep_min: float = 1e-6
) -> PoissonSpectrum:
    if len(anchors) == 0 or len(anchors) != len(weights):
        raise ValueError("anchors and weights must be nonempty and of equal length")
    a = np.asarray([complex(x) for x in anchors])
    w = np.asarray([float(x) for x in weights])
    mod = np.abs(a)
    bad = np.nonzero(np.abs(mod - 1.0) > 1e-12)[0]
    if bad.size:
        raise AnchorOffCircle(f"anchor {a[bad[0]]} has modulus {mod[bad[0]]!r}")
    if np.any(~(w > 0)):
        raise NonpositiveWeight(f"weights must be positive, got {w.tolist()}")
    a = a / mod
    th = np.mod(np.angle(a), 2 * np.pi)
    if len(a) > 1 and np.min(_angular_gaps(th)) <= sep_min:
        raise DuplicateAnchors(f"anchors closer than {sep_min} rad")
    order = np.argsort(th, kind="stable")
    return PoissonSpectrum(
        tuple(complex(x) for x in a[order]), tuple(float(x) for x in w[order])
    )


def spectrum_from_degrees(angles_deg: Sequence[float], weights: Sequence[float], sep_min: float = 1e-6):
    anchors = [cmath.exp(1j * math.radians(t)) for t in angles_deg]
    return validate_spectrum(anchors, weights, sep_min)


def symmetric_spectrum(n: int) -> PoissonSpectrum:
    """n-th roots of unity with weights 1/n: U = (1 + z^n) / (1 - z^n)."""
    anchors = [cmath.exp(2j * math.pi * k / n) for k in range(n)]
    return validate_spectrum(anchors, [1.0 / n] * n)


def _check_clear(s: PoissonSpectrum, z) -> np.ndarray:
    z = np.asarray(z, dtype=complex)
    dist = np.abs(z[..., None] - np.asarray(s.anchors))
    if np.any(dist < SINGULAR_RADIUS):
        raise AnchorSingularity("evaluation point coincides with an anchor")
    return z


def eval_U(s: PoissonSpectrum, z):
    zz = _check_clear(s, z)
    out = np.zeros_like(zz)
    for a, w in zip(s.anchors, s.weights):
        out -= w * (zz + a) / (zz - a)
    return out if np.ndim(z) else complex(out)


def eval_re_U(s: PoissonSpectrum, z):
    """Re U as a sum of Poisson kernels; avoids cancellation near the circle."""
    zz = _check_clear(s, z)
    out = np.zeros(zz.shape)
    r2 = np.abs(zz) ** 2
    for a, w in zip(s.anchors, s.weights):
        out += w * (1.0 - r2) / np.abs(zz - a) ** 2
    return out if np.ndim(z) else float(out)


def eval_re_U_polar(s: PoissonSpectrum, r, theta):
    """Re U at r e^{i theta} from angle differences, without rounding the point itself.

    At r = 1 this is the boundary value on the parametrized circle; the
    Cartesian route carries an O(eps / d^2) error at distance d from an anchor.
    """
    r = np.asarray(r, dtype=float)
    theta = np.asarray(theta, dtype=float)
    out = np.zeros(np.broadcast(r, theta).shape)
    for ang, w in zip(s.angles, s.weights):
        half = np.sin(0.5 * (theta - ang))
        den = (1.0 - r) ** 2 + 4.0 * r * half * half
        if np.any(den <= SINGULAR_RADIUS**2):
            raise AnchorSingularity("polar evaluation at an anchor")
        out += w * (1.0 - r) * (1.0 + r) / den
    return out if out.ndim else float(out)


def eval_dU(s: PoissonSpectrum, z):
    zz = _check_clear(s, z)
    out = np.zeros_like(zz)
    for a, w in zip(s.anchors, s.weights):
        out += 2.0 * w * a / (zz - a) ** 2
    return out if np.ndim(z) else complex(out)


def numerator_polynomial(s: PoissonSpectrum) -> Polynomial:
    """P(z) = sum_k 2 a_k alpha_k prod_{j != k} (z - alpha_j)^2.

    Coefficients at roundoff level relative to the expansion's magnitude
    bound are snapped to zero, so the symmetric family gives exactly
    2n z^(n-1).
    """
    n = s.n
    coeffs = np.zeros(max(2 * n - 1, 1), dtype=complex)
    for k in range(n):
        others = [a for j, a in enumerate(s.anchors) if j != k]
        q = np.array([1.0 + 0j])
        for a in others:
            q = np.convolve(q, [a * a, -2 * a, 1.0])
        coeffs[: len(q)] += 2.0 * s.weights[k] * s.anchors[k] * q
    bound = sum(2.0 * w for w in s.weights) * 4.0 ** max(n - 1, 0)
    snap = 8 * (2 * n) * EPS * bound
    coeffs[np.abs(coeffs) <= snap] = 0
    return Polynomial.from_coefficients(coeffs)


@dataclass(frozen=True)
class WeierstrassTriple:
    """Spectrum plus Blaschke factor; evaluates U, dU, h and Phi = dU / h."""

    spectrum: PoissonSpectrum
    h: BlaschkeProduct
    numerator: Polynomial
    roots: RootSet

    @property
    def disk_zeros(self) -> list[complex]:
        """Roots of P inside the disk, repeated by multiplicity."""
        return self.roots.values(INSIDE)

    def U(self, z):
        return eval_U(self.spectrum, z)

    def re_U(self, z):
        return eval_re_U(self.spectrum, z)

    def dU(self, z):
        return eval_dU(self.spectrum, z)

    def h_eval(self, z):
        return self.h(z)

    @cached_property
    def _matched(self) -> tuple[list[complex], list[complex]]:
        """Split Blaschke zeros into those certified as disk roots of P and the rest."""
        pool = list(self.disk_zeros)
        matched, spurious = [], []
        for zk in self.h.zeros:
            hit = next((i for i, r in enumerate(pool) if abs(r - zk) <= ZERO_MATCH_TOL), None)
            if hit is None:
                spurious.append(zk)
            else:
                pool.pop(hit)
                matched.append(zk)
        return matched, spurious

    @cached_property
    def _quotient(self) -> Polynomial:
        matched, _ = self._matched
        q, _ = deflate(self.numerator, matched)
        return q

    @property
    def cancellation_consistent(self) -> bool:
        """Every Blaschke zero is a disk root of P and vice versa (as multisets)."""
        matched, spurious = self._matched
        return not spurious and len(matched) == len(self.disk_zeros)

    def phi(self, z):
        """Phi = dU / h with the Blaschke zeros cancelled against P's factors.

        With P = Q * prod(z - z_k) the quotient is evaluated directly, so the
        points z_k need no 0/0 division:

            Phi = e^{i mu} Q(z) prod(conj(z_k) z - 1) / prod_j (z - alpha_j)^2
        """
        zz = _check_clear(self.spectrum, z)
        matched, spurious = self._matched
        out = cmath.exp(1j * self.h.phase_mu) * poly_eval(self._quotient, zz)
        for zk in self.h.zeros:
            out = out * (zk.conjugate() * zz - 1.0)
        for zk in spurious:
            out = out / (zz - zk)
        for a in self.spectrum.anchors:
            out = out / (zz - a) ** 2
        return out if np.ndim(z) else complex(out)


def assemble_triple(
    s: PoissonSpectrum,
    tol: float = 1e-10,
    eps_bdry: float = DEFAULT_EPS_BDRY,
    phase_mu: float = 0.0,
) -> WeierstrassTriple:
    """Build (U, h, Phi) from a spectrum.

    Raises RootNearBoundary when P has a root within ``eps_bdry`` of the
    circle. ``phase_mu = pi * (n - 1)`` reproduces h = z^(n-1) for the
    symmetric family.
    """
    p = numerator_polynomial(s)
    if p.degree >= 1:
        roots = poly_roots(p, tol=tol, eps_bdry=eps_bdry)
    else:
        roots = RootSet((), 0.0, eps_bdry)
    near = [r.value for r in roots.roots if r.location == BOUNDARY]
    if near:
        raise RootNearBoundary(
            f"P has a root at {near[0]:.6g} (|z| = {abs(near[0]):.12f}) within {eps_bdry} of the circle"
        )
    h = BlaschkeProduct(tuple(roots.values(INSIDE)), phase_mu)
    return WeierstrassTriple(s, h, p, roots)
