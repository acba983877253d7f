import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from exflat.atlas import (
    HALF_PI,
    SimilarityTransform,
    arc_angles,
    catalogue_trivial,
    end_data,
    end_direction_exact,
    fit_similarity,
    hairpin_boundary,
    hairpin_comparison,
    hairpin_contains,
    hairpin_eval,
    hairpin_invert,
    hairpin_map,
    pathological_eval,
    period_constant,
    self_intersections,
    trace_boundary,
)
from exflat.errors import DegenerateConfiguration, OutsideDomain, OutsideStrip
from exflat.weierstrass import assemble_triple, symmetric_spectrum, validate_spectrum

from oracles import bessel_j0, hairpin_grad_sq

T1 = assemble_triple(validate_spectrum([1], [1]))
T2 = assemble_triple(symmetric_spectrum(2))
strip = st.tuples(st.floats(-4, 4), st.floats(-HALF_PI, HALF_PI)).map(lambda t: complex(*t))


# -- hairpin --------------------------------------------------------------------

def test_hairpin_origin():
    assert hairpin_eval(0) == (0, 1, 0)


def test_hairpin_top_vertex():
    F, u, _ = hairpin_eval(1j * HALF_PI)
    assert abs(F - 1j * (HALF_PI + 1)) < 1e-15 and abs(u) < 1e-16


@given(st.floats(-5, 5), st.sampled_from([1, -1]))
def test_hairpin_gradient_unit_on_boundary(x, sign):
    assert abs(hairpin_eval(complex(x, sign * HALF_PI))[2] - 1) < 1e-12


def test_outside_strip():
    with pytest.raises(OutsideStrip):
        hairpin_eval(2j)


def test_contains_examples():
    assert hairpin_contains(0)
    assert not hairpin_contains(1j * (HALF_PI + 1))
    assert hairpin_contains(10 + 10j)


@given(strip)
def test_grad_sq_matches_chain_rule(z):
    if abs(1 + cmath.cosh(z)) < 1e-6:
        return
    assert abs(hairpin_eval(z)[2] - hairpin_grad_sq(z)) <= 1e-12 * max(1, hairpin_grad_sq(z))


@given(strip)
def test_strip_interior_maps_inside(z):
    if abs(z.imag) >= HALF_PI * (1 - 1e-9):
        return
    assert hairpin_contains(hairpin_map(z))


@given(strip)
def test_invert_round_trip(z):
    w = hairpin_map(z)
    back = hairpin_invert(w, z + 0.01)
    assert abs(back - z) < 1e-10 * max(1, abs(z))


# -- trivial roofs and the periodic example -------------------------------------

def test_trivial_roofs():
    assert catalogue_trivial("halfplane", (2.5, 0.0)) == 2.5
    assert abs(catalogue_trivial("exterior_disk_2d", 2 + 0j) - math.log(2)) < 1e-15
    assert catalogue_trivial("exterior_disk_md", (2.0, 0.0, 0.0), m=3) == 0.5


def test_trivial_outside():
    with pytest.raises(OutsideDomain):
        catalogue_trivial("halfplane", (-1.0, 0.0))
    with pytest.raises(OutsideDomain):
        catalogue_trivial("exterior_disk_2d", 0.5j)


def test_pathological_origin():
    assert pathological_eval(0) == 0


def test_period_constant_bessel_oracle():
    C = period_constant()
    assert abs(C - 2j * math.pi * bessel_j0(1.0)) < 1e-10


def test_periodicity():
    C = period_constant(1e-12)
    for z in (1.0, 0.5 + 0.3j, 2 - 1j):
        assert abs(pathological_eval(z + 2j * math.pi, 1e-12) - pathological_eval(z, 1e-12) - C) < 2e-10


def test_pathological_left_half_rejected():
    with pytest.raises(OutsideDomain):
        pathological_eval(-0.1)


# -- tracing ------------------------------------------------------------------------

def test_arc_angles_clipped_and_increasing():
    th = arc_angles(0.0, math.pi, 200, 1e-3)
    assert th[0] == pytest.approx(1e-3) and th[-1] == pytest.approx(math.pi - 1e-3)
    assert np.all(np.diff(th) > 0)


def test_half_plane_boundary_is_imaginary_axis():
    c = trace_boundary(T1, 0, N=301, F0=1)
    k = np.argmin(np.abs(c.thetas - math.pi / 2))
    th = c.thetas[k]
    assert abs(c.points[k] - 1j / math.tan(th / 2)) < 1e-8
    assert np.max(np.abs(c.points.real)) < 1e-8
    assert np.max(np.abs(c.us)) <= 1e-10


def test_half_plane_trace_against_closed_form():
    c = trace_boundary(T1, 0, N=500, F0=1)
    exact = 1j / np.tan(c.thetas / 2)
    assert np.max(np.abs(c.points - exact) / np.maximum(1, np.abs(exact))) < 1e-9


def test_catenoid_arcs_on_opposite_sides():
    a, b = (trace_boundary(T2, j, N=500) for j in range(2))
    assert np.sign(np.median(a.points.imag)) == -np.sign(np.median(b.points.imag))


# -- ends -----------------------------------------------------------------------------

@pytest.mark.parametrize("t", [T1, T2], ids=["n1", "n2"])
def test_end_angles_pi(t):
    for j in range(t.spectrum.n):
        r = end_data(t, j)
        assert abs(r.theta - math.pi) < 1e-3
        assert abs(abs(r.tau_minus) - 1) < 1e-12 and abs(abs(r.tau_plus) - 1) < 1e-12


def test_half_plane_end_directions():
    r = end_data(T1, 0)
    assert abs(r.tau_minus - 1j) < 1e-6 and abs(r.tau_plus + 1j) < 1e-6


def test_end_direction_matches_pole_asymptotics():
    t = assemble_triple(validate_spectrum([1, 1j, -1], [1, 0.5, 2]))
    for j in range(3):
        assert abs(end_data(t, j).tau_minus - end_direction_exact(t, j)) < 1e-6


@pytest.mark.parametrize("n", [1, 2, 3, 6])
def test_end_angle_ratio_invariance(n):
    t = assemble_triple(symmetric_spectrum(n))
    for j in range(n):
        a = end_data(t, j, geometric_ratio=0.5).theta
        b = end_data(t, j, geometric_ratio=0.8, K=8).theta
        assert abs(a - b) < 1e-6


def test_end_data_argument_checks():
    with pytest.raises(ValueError):
        end_data(T2, 0, geometric_ratio=1.5)
    with pytest.raises(ValueError):
        end_data(T2, 0, K=2)


# -- crossings ---------------------------------------------------------------------------

@pytest.mark.parametrize("n,embedded", [(1, True), (2, True), (3, False), (4, False)])
def test_crossings_by_n(n, embedded):
    t = assemble_triple(symmetric_spectrum(n))
    curves = [trace_boundary(t, j, N=2000) for j in range(n)]
    found = self_intersections(curves)
    assert (len(found) == 0) == embedded


# -- similarity ----------------------------------------------------------------------------

def test_fit_identity(rng):
    A = rng.normal(size=30) + 1j * rng.normal(size=30)
    T, res = fit_similarity(A, A)
    assert abs(T.rotation_scale - 1) < 1e-14 and abs(T.translation) < 1e-14 and res < 1e-15


def test_fit_recovers_exact_similarity(rng):
    A = rng.normal(size=50) + 1j * rng.normal(size=50)
    lam, c = 2 * cmath.exp(1j * math.pi / 3), 1 - 1j
    T, res = fit_similarity(A, lam * A + c)
    assert abs(T.rotation_scale - lam) < 1e-12 and abs(T.translation - c) < 1e-12 and res < 1e-12


def test_fit_reflection(rng):
    A = rng.normal(size=20) + 1j * rng.normal(size=20)
    B = 0.5j * np.conj(A) + 2
    _, res_plain = fit_similarity(A, B)
    T, res = fit_similarity(A, B, allow_reflection=True)
    assert T.reflection and res < 1e-14 < res_plain


def test_fit_degenerate():
    with pytest.raises(DegenerateConfiguration):
        fit_similarity([1, 1, 1], [0, 1, 2])


@given(st.complex_numbers(min_magnitude=0.1, max_magnitude=10), st.complex_numbers(max_magnitude=10),
       st.booleans())
def test_similarity_inverse(lam, c, refl):
    T = SimilarityTransform(lam, c, refl)
    z = np.array([0.3 - 1j, 2 + 0.5j])
    assert np.allclose(T.inverse()(T(z)), z, atol=1e-9)


def test_catenoid_is_a_hairpin():
    res = hairpin_comparison(T2)
    assert res.residual < 1e-4
    assert abs(abs(res.transform.rotation_scale) - 1) < 1e-4


def test_hairpin_reference_boundary():
    up, lo = hairpin_boundary(np.array([0.0, 1.0]))
    assert np.allclose(up, [1j * (HALF_PI + 1), 1 + 1j * (HALF_PI + math.cosh(1))])
    assert np.allclose(lo, np.conj(up))
