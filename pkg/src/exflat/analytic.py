"""Polynomials, root finding with unit-disk classification, Blaschke products."""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import NonConvergence

EPS = np.finfo(float).eps

INSIDE = "inside_disk"
BOUNDARY = "boundary_band"
OUTSIDE = "outside_disk"

DEFAULT_EPS_BDRY = 1e-8


@dataclass(frozen=True)
class Polynomial:
    """Dense polynomial, ``coefficients[k]`` multiplies ``z**k``."""

    coefficients: tuple[complex, ...]

    @classmethod
    def from_coefficients(cls, coeffs: Iterable[complex], trim: float = 1e-14) -> Polynomial:
        c = [complex(x) for x in coeffs]
        while len(c) > 1 and abs(c[-1]) <= trim:
            c.pop()
        if not c:
            c = [0j]
        return cls(tuple(c))

    @classmethod
    def from_roots(cls, roots: Iterable[complex], leading: complex = 1.0) -> Polynomial:
        c = np.array([complex(leading)])
        for r in roots:
            c = np.convolve(c, [-complex(r), 1.0])
        return cls(tuple(complex(x) for x in c))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def is_zero(self) -> bool:
        return len(self.coefficients) == 1 and self.coefficients[0] == 0

    def as_array(self) -> np.ndarray:
        return np.asarray(self.coefficients, dtype=complex)

    def __call__(self, z):
        return poly_eval(self, z)


def poly_eval(p: Polynomial, z):
    """Horner evaluation; ``z`` may be a scalar or an array."""
    c = p.coefficients
    acc = c[-1] * np.ones_like(z, dtype=complex) if np.ndim(z) else complex(c[-1])
    for coef in reversed(c[:-1]):
        acc = acc * z + coef
    return acc


def _horner_with_derivative(c: np.ndarray, z: np.ndarray):
    p = np.full_like(z, c[-1])
    dp = np.zeros_like(z)
    for coef in c[-2::-1]:
        dp = dp * z + p
        p = p * z + coef
    return p, dp


@dataclass(frozen=True)
class Root:
    value: complex
    multiplicity: int
    location: str


@dataclass(frozen=True)
class RootSet:
    roots: tuple[Root, ...]
    residual_bound: float
    eps_bdry: float

    def values(self, location: str | None = None) -> list[complex]:
        """Roots repeated by multiplicity, optionally filtered by location tag."""
        out = []
        for r in self.roots:
            if location is None or r.location == location:
                out.extend([r.value] * r.multiplicity)
        return out

    @property
    def total_multiplicity(self) -> int:
        return sum(r.multiplicity for r in self.roots)


def classify(z: complex, eps_bdry: float) -> str:
    m = abs(z)
    if m < 1.0 - eps_bdry:
        return INSIDE
    if m > 1.0 + eps_bdry:
        return OUTSIDE
    return BOUNDARY


def scaled_residual(p: Polynomial, r: complex) -> float:
    """|p(r)| relative to the size of the terms of p at r."""
    c = p.as_array()
    scale = np.max(np.abs(c)) * max(1.0, abs(r)) ** p.degree
    return float(abs(poly_eval(p, r)) / scale)


def _aberth(c: np.ndarray, maxiter: int) -> tuple[np.ndarray, bool]:
    # c: ascending coefficients, c[0] != 0, c[-1] == 1
    d = len(c) - 1
    radius = abs(c[0]) ** (1.0 / d)
    z = radius * np.exp(1j * (2 * np.pi * np.arange(d) / d + 0.4))
    for _ in range(maxiter):
        p, dp = _horner_with_derivative(c, z)
        with np.errstate(divide="ignore", invalid="ignore"):
            ratio = np.where(p == 0, 0.0, p / dp)
            diff = z[:, None] - z[None, :]
            np.fill_diagonal(diff, np.inf)
            s = np.sum(1.0 / diff, axis=1)
            w = np.where(p == 0, 0.0, ratio / (1.0 - ratio * s))
        if not np.all(np.isfinite(w)):
            return z, False
        z = z - w
        if np.all(np.abs(w) <= 4 * EPS * np.maximum(1.0, np.abs(z))):
            return z, True
    return z, False


def _polish(p: Polynomial, z: np.ndarray, steps: int = 2) -> np.ndarray:
    c = p.as_array()
    out = z.copy()
    for k, r in enumerate(z):
        others = np.delete(z, k)
        if others.size and np.min(np.abs(others - r)) <= 1e-3 * max(1.0, abs(r)):
            continue  # Newton would pull a cluster member onto its neighbours
        best, best_res = r, scaled_residual(p, r)
        for _ in range(steps):
            val, der = _horner_with_derivative(c, np.array([best]))
            if der[0] == 0 or val[0] == 0:
                break
            cand = best - val[0] / der[0]
            res = scaled_residual(p, cand)
            if res >= best_res:
                break
            best, best_res = cand, res
        out[k] = best
    return out


def _cluster(values: Sequence[complex], radius: float) -> list[tuple[complex, int]]:
    order = sorted(range(len(values)), key=lambda i: (values[i].real, values[i].imag))
    parent = list(range(len(values)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for a in range(len(order)):
        for b in range(a + 1, len(order)):
            i, j = order[a], order[b]
            if values[j].real - values[i].real > radius:
                break
            if abs(values[i] - values[j]) <= radius:
                parent[find(j)] = find(i)
    groups: dict[int, list[complex]] = {}
    for i in order:
        groups.setdefault(find(i), []).append(values[i])
    out = [(complex(np.mean(g)), len(g)) for g in groups.values()]
    out.sort(key=lambda t: (t[0].real, t[0].imag))
    return out


EXPANSION_TOL = 1e-8


def _expansion_error(monic: np.ndarray, z: np.ndarray) -> float:
    """Coefficient mismatch of prod (x - z_i) against a monic polynomial, relative to its size."""
    back = np.array([1.0 + 0j])
    for r in z:
        back = np.convolve(back, [-r, 1.0])
    return float(np.max(np.abs(back - monic)) / np.max(np.abs(monic)))


def poly_roots(
    p: Polynomial,
    tol: float = 1e-10,
    eps_bdry: float = DEFAULT_EPS_BDRY,
    maxiter: int = 500,
    cluster_tol: float | None = None,
) -> RootSet:
    """All roots of ``p`` with multiplicities and disk classification.

    Exact zero roots (vanishing low-order coefficients) are split off first.
    For the remaining factor, Aberth-Ehrlich iterates and (degree <= 20)
    companion-matrix eigenvalues, each raw and Newton-polished, compete:
    among the sets whose expanded product reproduces the coefficients within
    EXPANSION_TOL, the one with the smallest residual wins. Roots closer
    than ``cluster_tol`` (default ``tol``) merge.

    ``residual_bound`` is the largest ``|p(r)| / (max|c_k| * max(1,|r|)**deg)``.
    """
    if p.degree < 1:
        raise ValueError("poly_roots needs degree >= 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    c = p.as_array()
    nzero = 0
    while c[nzero] == 0:
        nzero += 1
    core = c[nzero:] / c[-1]
    found = [0j] * nzero
    if len(core) > 1:
        z, ok = _aberth(core, maxiter)
        candidates = [z, _polish(p, z)]
        if len(core) - 1 <= 20:
            zc = np.polynomial.polynomial.polyroots(core).astype(complex)
            candidates += [zc, _polish(p, zc)]
        elif not ok:
            raise NonConvergence(f"Aberth iteration did not settle within {maxiter} steps")
        # small residuals alone miss iterates that collapsed onto one root
        valid = [zs for zs in candidates if _expansion_error(core, zs) <= EXPANSION_TOL]
        if not valid:
            raise NonConvergence("roots do not reproduce the polynomial's coefficients")
        z = min(valid, key=lambda zs: max(scaled_residual(p, r) for r in zs))
        found.extend(complex(r) for r in z)
    residual = max(scaled_residual(p, r) for r in found)
    if residual > tol:
        raise NonConvergence(f"root residual {residual:.3e} exceeds tol {tol:.3e}")
    merged = _cluster(found, tol if cluster_tol is None else cluster_tol)
    roots = tuple(Root(v, m, classify(v, eps_bdry)) for v, m in merged)
    return RootSet(roots, residual, eps_bdry)


def deflate(p: Polynomial, zeros: Sequence[complex]) -> tuple[Polynomial, complex]:
    """Divide out ``(z - z_k)`` factors, smallest modulus first.

    Returns the quotient and the largest remainder met along the way.
    """
    c = list(p.as_array())
    worst = 0j
    for zk in sorted(zeros, key=abs):
        # forward (Horner) synthetic division
        q = [0j] * (len(c) - 1)
        acc = 0j
        for k in range(len(c) - 1, 0, -1):
            acc = acc * zk + c[k]
            q[k - 1] = acc
        rem = acc * zk + c[0]
        if abs(rem) > abs(worst):
            worst = rem
        c = q
    return Polynomial(tuple(complex(x) for x in c)), worst


@dataclass(frozen=True)
class BlaschkeProduct:
    """``exp(-i mu) * prod (z - z_k) / (conj(z_k) z - 1)``."""

    zeros: tuple[complex, ...] = ()
    phase_mu: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "zeros", tuple(complex(z) for z in self.zeros))
        object.__setattr__(self, "phase_mu", float(self.phase_mu) % (2 * math.pi))
        for z in self.zeros:
            if abs(z) >= 1.0:
                raise ValueError(f"Blaschke zero {z} is not inside the unit disk")

    def __call__(self, z):
        return blaschke_eval(self, z)


def blaschke_eval(b: BlaschkeProduct, z):
    out = cmath.exp(-1j * b.phase_mu) * np.ones_like(z, dtype=complex)
    for zk in b.zeros:
        out = out * (z - zk) / (zk.conjugate() * z - 1.0)
    return out if np.ndim(z) else complex(out)
