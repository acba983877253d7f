"""Numerical certification of roof-function properties.

Every check produces a record; a failed check is data, not an exception.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Union

import numpy as np

from .quadrature import quad_segment
from .weierstrass import WeierstrassTriple

HALF_PI = 0.5 * math.pi


@dataclass(frozen=True)
class Tolerances:
    unimodularity: float = 1e-10
    positivity_margin: float = 0.0
    nonvanishing_floor: float = 1e-12
    fd_step: float = 1e-5
    neumann_rel: float = 1e-3
    quadrature: float = 1e-10
    laplacian_step: float = 1e-2
    cr_ratio: tuple[float, float] = (3.5, 4.5)
    neumann_order_min: float = 1.6

    def __post_init__(self):
        for name in ("unimodularity", "nonvanishing_floor", "fd_step", "neumann_rel",
                     "quadrature", "laplacian_step"):
            if not getattr(self, name) > 0:
                raise ValueError(f"tolerance {name} must be positive")
        if self.positivity_margin < 0:
            raise ValueError("positivity_margin must be nonnegative")


@dataclass(frozen=True)
class GridSpec:
    radial: int = 40
    angular: int = 256
    rmax: float = 0.995

    def points(self) -> np.ndarray:
        rs = self.rmax * np.arange(1, self.radial + 1) / self.radial
        phis = 2 * np.pi * np.arange(self.angular) / self.angular
        z = (rs[:, None] * np.exp(1j * phis[None, :])).ravel()
        return np.concatenate([[0j], z])


@dataclass(frozen=True)
class CheckRecord:
    name: str
    value: float
    threshold: Union[float, tuple[float, float]]
    relation: str  # "<=", ">", "in"
    passed: bool
    samples: int


@dataclass(frozen=True)
class VerificationReport:
    records: tuple[CheckRecord, ...] = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def __getitem__(self, name: str) -> CheckRecord:
        for r in self.records:
            if r.name == name:
                return r
        raise KeyError(name)

    def merged(self, other: VerificationReport) -> VerificationReport:
        return VerificationReport(self.records + other.records)

    def to_dict(self) -> dict:
        return {"passed": self.passed, "records": [asdict(r) for r in self.records]}


def _le(name, value, thr, n):
    value = float(value)
    return CheckRecord(name, value, thr, "<=", bool(value <= thr), n)


def _gt(name, value, thr, n):
    value = float(value)
    return CheckRecord(name, value, thr, ">", bool(value > thr), n)


def _within(name, value, bounds, n):
    value = float(value)
    lo, hi = bounds
    return CheckRecord(name, value, (lo, hi), "in", bool(lo <= value <= hi), n)


def _cr_residual(t: WeierstrassTriple, z: np.ndarray, h: float) -> float:
    dx = (t.U(z + h) - t.U(z - h)) / (2 * h)
    dy = (t.U(z + 1j * h) - t.U(z - 1j * h)) / (2 * h)
    # U holomorphic: U_x = -i U_y
    return float(np.max(np.abs(dx + 1j * dy)))


def verify_triple(t: WeierstrassTriple, grid: GridSpec = GridSpec(),
                  tol: Tolerances = Tolerances(), circle_samples: int = 4096) -> VerificationReport:
    """|h| = 1 on the circle, Re U > 0, Phi != 0, U holomorphic, h built from P's disk roots."""
    theta = 2 * np.pi * np.arange(circle_samples) / circle_samples
    dev = np.max(np.abs(np.abs(t.h(np.exp(1j * theta))) - 1.0))
    z = grid.points()
    h = tol.fd_step
    r1 = _cr_residual(t, z, h)
    r2 = _cr_residual(t, z, h / 2)
    ratio = r1 / r2 if r2 > 0 else math.inf
    matched, spurious = t._matched
    missing = len(t.disk_zeros) - len(matched)
    records = (
        _le("unimodularity", dev, tol.unimodularity, circle_samples),
        _gt("positivity", np.min(t.re_U(z)), tol.positivity_margin, z.size),
        _gt("nonvanishing", np.min(np.abs(t.phi(z))), tol.nonvanishing_floor, z.size),
        _within("cauchy_riemann_ratio", ratio, tol.cr_ratio, z.size),
        _le("blaschke_consistency", len(spurious) + missing, 0, len(t.h.zeros)),
    )
    return VerificationReport(records)


def _neumann_angles(t: WeierstrassTriple, samples: int, clearance: float) -> np.ndarray:
    theta = 2 * np.pi * (np.arange(samples) + 0.5) / samples
    gap = np.abs(np.angle(np.exp(1j * (theta[:, None] - t.spectrum.angles[None, :]))))
    return theta[np.min(gap, axis=1) >= clearance]


def _neumann_deviation_triple(t, theta, s, quad_tol):
    worst = 0.0
    for th in theta:
        zb = complex(math.cos(th), math.sin(th))
        zi = (1 - s) * zb
        u = float(t.re_U(zi))
        step = quad_segment(t.phi, zi, zb, quad_tol * s).value
        worst = max(worst, abs(u / abs(step) - 1.0))
    return worst


def _neumann_deviation_hairpin(x, s):
    worst = 0.0
    for sign in (1.0, -1.0):
        zb = x + 1j * sign * HALF_PI
        zi = x + 1j * sign * (HALF_PI - s)
        u = np.cosh(x) * np.sin(s)
        # sinh a - sinh b = 2 cosh((a+b)/2) sinh((a-b)/2), free of cancellation
        dF = (zb - zi) + 2 * np.cosh(0.5 * (zb + zi)) * np.sinh(0.5 * (zb - zi))
        worst = max(worst, float(np.max(np.abs(u / np.abs(dF) - 1.0))))
    return worst


def verify_neumann_fd(t: Union[WeierstrassTriple, str], samples: int = 50, s: float = 1e-4,
                      tol: Tolerances = Tolerances(), clearance: float = 0.2) -> VerificationReport:
    """One-sided quotient u(F(interior)) / |F(boundary) - F(interior)| against 1.

    ``t`` is a triple, or ``"hairpin"`` for the closed-form strip picture
    (boundary x + i pi/2 inset by s in the strip). Boundary angles closer
    than ``clearance`` radians to an anchor are skipped. The deviation is
    also recomputed at s/2; it must shrink by at least ``neumann_order_min``.
    """
    if not 0 < s < 0.1:
        raise ValueError("s must lie in (0, 0.1)")
    if isinstance(t, str):
        if t != "hairpin":
            raise ValueError(f"unknown closed form {t!r}")
        x = np.linspace(-3.0, 3.0, samples)
        d1 = _neumann_deviation_hairpin(x, s)
        d2 = _neumann_deviation_hairpin(x, s / 2)
        count = 2 * samples
    else:
        theta = _neumann_angles(t, samples, clearance)
        d1 = _neumann_deviation_triple(t, theta, s, tol.quadrature)
        d2 = _neumann_deviation_triple(t, theta, s / 2, tol.quadrature)
        count = len(theta)
    ratio = d1 / d2 if d2 > 0 else math.inf
    # halving s must shrink the deviation at least linearly (a flat image does better)
    order = CheckRecord("neumann_order", float(ratio), tol.neumann_order_min, ">=",
                        bool(ratio >= tol.neumann_order_min or d1 <= 1e-12), count)
    return VerificationReport((_le("neumann_quotient", d1, tol.neumann_rel, count), order))


# -- closed-form roofs ----------------------------------------------------------

def _laplacian(u, w, h):
    return (u(w + h) + u(w - h) + u(w + 1j * h) + u(w - 1j * h) - 4 * u(w)) / (h * h)


def _hairpin_roof_sampler(zeta, h):
    from .atlas import hairpin_invert, hairpin_map

    w = hairpin_map(zeta)
    dF = 1 + np.cosh(zeta)

    def u_at(shift):
        z = hairpin_invert(w + shift, zeta + shift / dF)
        return np.real(np.cosh(z))

    return w, u_at


def _closed_form_setup(kind: str, n: int):
    if kind == "halfplane":
        # dyadic coordinates keep the stencil exact
        xs = np.arange(1, n + 1) / 8.0
        ys = (np.arange(n) - n // 2) / 8.0
        w = (xs[:, None] + 1j * ys[None, :]).ravel()
        boundary = 1j * ys
        return w, (lambda p: np.real(p)), (lambda b: np.real(b)), boundary
    if kind == "exterior_disk_2d":
        rs = np.linspace(1.25, 3.0, n)
        ph = 2 * np.pi * np.arange(n) / n
        w = (rs[:, None] * np.exp(1j * ph[None, :])).ravel()
        boundary = np.exp(2j * np.pi * np.arange(4 * n) / (4 * n))
        return w, (lambda p: np.log(np.abs(p))), (lambda b: np.log(np.abs(b))), boundary
    raise ValueError(f"unknown closed form {kind!r}")


def verify_roof_closed_form(kind: str, n: int = 12, tol: Tolerances = Tolerances()) -> VerificationReport:
    """Harmonicity (five-point Laplacian, refinement ratio), positivity, Dirichlet data.

    ``kind`` is ``halfplane``, ``exterior_disk_2d`` or ``hairpin``; for the
    hairpin the roof is Re cosh pulled back through a Newton inversion of
    z + sinh z at each stencil point.
    """
    h = tol.laplacian_step
    if kind == "halfplane":
        h = 2.0 ** round(math.log2(h))
    if kind == "hairpin":
        xs = np.linspace(-2.0, 2.0, n)
        ys = np.linspace(-(HALF_PI - 0.3), HALF_PI - 0.3, n)
        zeta = (xs[:, None] + 1j * ys[None, :]).ravel()
        w, u_at = _hairpin_roof_sampler(zeta, h)
        u0 = u_at(0j)

        def lap(step):
            return (u_at(step) + u_at(-step) + u_at(1j * step) + u_at(-1j * step) - 4 * u_at(0j)) / step**2

        l1 = np.max(np.abs(lap(h)))
        l2 = np.max(np.abs(lap(h / 2)))
        xb = np.linspace(-3.0, 3.0, 4 * n)
        ub = np.concatenate([np.cosh(xb) * np.cos(HALF_PI), np.cosh(xb) * np.cos(-HALF_PI)])
        interior = u0
    else:
        w, u, ubf, boundary = _closed_form_setup(kind, n)
        l1 = np.max(np.abs(_laplacian(u, w, h)))
        l2 = np.max(np.abs(_laplacian(u, w, h / 2)))
        ub = ubf(boundary)
        interior = u(w)
    floor = 1e-12
    if l1 <= floor and l2 <= floor:
        lap_rec = CheckRecord("laplacian_ratio", float(l1), floor, "<=", True, w.size)
    else:
        lap_rec = _within("laplacian_ratio", l1 / l2 if l2 > 0 else math.inf, tol.cr_ratio, w.size)
    return VerificationReport((
        CheckRecord("laplacian_residual", float(l1), math.inf, "<=", True, w.size),
        lap_rec,
        _gt("positivity", np.min(interior), tol.positivity_margin, w.size),
        _le("dirichlet", np.max(np.abs(ub)), 1e-10, ub.size),
    ))
