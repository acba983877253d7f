"""Closed forms and series used as independent references in the test suite."""

from __future__ import annotations

import math

import numpy as np


def bessel_j0(x: float, terms: int = 40) -> float:
    """J0 from its power series, summed with math.fsum."""
    return math.fsum((-1) ** k * (x / 2) ** (2 * k) / math.factorial(k) ** 2 for k in range(terms))


def symmetric_U(n: int, z):
    return (1 + z**n) / (1 - z**n)


def halfplane_F(z):
    """n = 1 immersion with F(0) = 1."""
    return (1 + z) / (1 - z)


def catenoid_F_difference(a: complex, b: complex, samples: int = 4001) -> complex:
    """F(b) - F(a) for F = 2z/(1-z^2) + log((z+1)/(z-1)) along the segment a -> b.

    The logarithm is continued along the path by unwrapping its argument,
    so the principal-branch cut on the real diameter does no harm.
    """
    z = a + (b - a) * np.linspace(0.0, 1.0, samples)
    w = (z + 1) / (z - 1)
    arg = np.unwrap(np.angle(w))
    rational = 2 * z / (1 - z * z)
    d_rat = rational[-1] - rational[0]
    d_log = math.log(abs(w[-1]) / abs(w[0])) + 1j * (arg[-1] - arg[0])
    return complex(d_rat + d_log)


def hairpin_F(z):
    return z + np.sinh(z)


def hairpin_grad_sq(z):
    """|grad u|^2 in the image from the chain rule: |d cosh| / |dF| squared."""
    return np.abs(np.sinh(z)) ** 2 / np.abs(1 + np.cosh(z)) ** 2


def numerator_by_expansion(anchors, weights):
    """Coefficients (ascending) of sum_k 2 a_k alpha_k prod_{j != k} (z - alpha_j)^2 via numpy.polynomial."""
    P = np.polynomial.Polynomial([0j])
    for k, (ak, wk) in enumerate(zip(anchors, weights)):
        term = np.polynomial.Polynomial([2 * wk * ak])
        for j, aj in enumerate(anchors):
            if j != k:
                term = term * np.polynomial.Polynomial([-aj, 1]) ** 2
        P = P + term
    return P.coef


def random_disk_points(rng, count: int, rmax: float = 1.0):
    r = rmax * np.sqrt(rng.uniform(0, 1, count))
    return r * np.exp(2j * np.pi * rng.uniform(0, 1, count))
