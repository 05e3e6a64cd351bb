"""Exact piecewise polynomials, B-splines, and oscillatory integrals."""

import cmath

import pytest
from hypothesis import given, strategies as st

from dgnet import splines as sp
from dgnet._ratback import Rat, rat

rationals = st.builds(
    rat, st.integers(-20, 20), st.integers(1, 8)
)
polys = st.lists(rationals, max_size=5).map(tuple)


@given(polys, rationals, rationals)
def test_poly_shift_evaluates(p, h, x):
    assert sp.poly_eval(sp.poly_shift(p, h), x) == sp.poly_eval(p, x - h)


@given(polys, polys, rationals)
def test_poly_ring_ops(p, q, x):
    assert sp.poly_eval(sp.poly_add(p, q), x) == (
        sp.poly_eval(p, x) + sp.poly_eval(q, x)
    )
    assert sp.poly_eval(sp.poly_mul(p, q), x) == (
        sp.poly_eval(p, x) * sp.poly_eval(q, x)
    )


@st.composite
def piecewise(draw):
    k = draw(st.integers(2, 4))
    breaks = sorted(draw(st.sets(rationals, min_size=k, max_size=k)))
    if len(breaks) < 2:
        breaks = [rat(0), rat(1)]
    pieces = [draw(polys) for _ in range(len(breaks) - 1)]
    return sp.PiecewisePoly(breaks, pieces)


@given(piecewise(), piecewise())
def test_pp_pointwise_ops(f, g):
    lo = min(f.breaks[0], g.breaks[0])
    hi = max(f.breaks[-1], g.breaks[-1])
    # probe off the breakpoints
    probes = [lo + (hi - lo) * rat(2 * j + 1, 14) for j in range(7)]
    s, p = sp.pp_add(f, g), sp.pp_mul(f, g)
    for x in probes:
        if any(x == b for b in s.breaks):
            continue
        assert s(x) == f(x) + g(x)
        assert p(x) == f(x) * g(x)


@given(piecewise())
def test_antiderivative_inverts_derivative(f):
    g = sp.pp_derivative(sp.pp_antiderivative(f))
    assert sp.pp_eq(g, f)


@given(piecewise(), rationals)
def test_translate(f, h):
    g = sp.pp_translate(f, h)
    a, b = f.support()
    assert g.support() == (a + h, b + h)
    x = (a + b) * rat(1, 3) + rat(1, 97)
    assert g(x + h) == f(x)
    assert sp.pp_integral(g) == sp.pp_integral(f)


@given(piecewise())
def test_moment_is_weighted_integral(f):
    assert sp.pp_moment(f, 1) == sp.pp_integral(sp.pp_mul_poly(f, (0, 1)))


KNOTS = [rat(2 * j - 15, 8) for j in range(16)]


@pytest.mark.parametrize("degree", [2, 3, 4])
def test_bspline_partition_of_unity(degree):
    bs = sp.basis(KNOTS, degree)
    assert len(bs) == sp.space_dim(KNOTS, degree)
    # on the interior span [knots[degree], knots[-degree-1]] the B-splines
    # sum to one
    lo, hi = KNOTS[degree], KNOTS[-degree - 1]
    for j in range(9):
        x = lo + (hi - lo) * rat(2 * j + 1, 18)
        assert sum(b(x) for b in bs) == 1


@pytest.mark.parametrize("degree", [2, 3, 4])
def test_bspline_nonnegative_and_local(degree):
    for i, b in enumerate(sp.basis(KNOTS, degree)):
        assert b.support() == (KNOTS[i], KNOTS[i + degree + 1])
        for j in range(7):
            x = KNOTS[i] + (KNOTS[i + degree + 1] - KNOTS[i]) * rat(j + 1, 8)
            assert b(x) >= 0


@pytest.mark.parametrize("degree", [2, 3])
def test_bump_normalized_even(degree):
    f = sp.combine(sp.basis(KNOTS, degree), sp.bump(KNOTS, degree))
    assert sp.pp_integral(f) == 1
    assert sp.pp_moment(f, 1) == 0
    for j in range(5):
        x = rat(2 * j + 1, 16)
        assert f(x) == f(-x)


def test_bump_needs_symmetric_knots():
    with pytest.raises(ValueError):
        sp.bump([0, 1, 2, 3, 4, 5, 6], 2)


@pytest.mark.parametrize("degree", [3, 4])
def test_derivative_matrix(degree):
    dmat = sp.derivative_matrix(KNOTS, degree)
    coeffs = sp.bump(KNOTS, degree)
    f = sp.combine(sp.basis(KNOTS, degree), coeffs)
    dcoeffs = [
        sum(dmat[i][j] * coeffs[j] for j in range(len(coeffs)))
        for i in range(len(dmat))
    ]
    g = sp.combine(sp.basis(KNOTS, degree - 1), dcoeffs)
    assert sp.pp_eq(g, sp.pp_derivative(f))


@pytest.mark.parametrize("k", [0, 1, 2])
def test_moment_vector(k):
    mv = sp.moment_vector(KNOTS, 3, k)
    coeffs = sp.bump(KNOTS, 3)
    f = sp.combine(sp.basis(KNOTS, 3), coeffs)
    assert sum(m * c for m, c in zip(mv, coeffs)) == sp.pp_moment(f, k)


# -- oscillatory integrals ---------------------------------------------------


def narrow_bump():
    """A degree-5 bump of width 0.1: expanded monomial coefficients reach
    1e10, the regime where naive antiderivative evaluation cancels
    catastrophically."""
    knots = [rat(j - 4, 80) for j in range(9)]
    return sp.combine(sp.basis(knots, 5), sp.bump(knots, 5))


def oracle_fourier(f, omega):
    """Slow independent oracle: per-piece quadrature at high precision."""
    import mpmath

    mpmath.mp.dps = 40
    total = mpmath.mpc(0)
    for i, p in enumerate(f.pieces):
        if not p:
            continue
        a, b = f.breaks[i], f.breaks[i + 1]
        total += mpmath.quad(
            lambda t, p=p: sum(
                mpmath.mpf(str(c)) * t ** j for j, c in enumerate(p)
            )
            * mpmath.exp(1j * omega * t),
            [mpmath.mpf(str(a)), mpmath.mpf(str(b))],
        )
    return complex(total)


@pytest.mark.parametrize("omega", [1.0, 6.283185307179586, 40.0, 300.0])
def test_fourier_matches_quadrature_oracle(omega):
    f = narrow_bump()
    got = sp.fourier(f, omega)
    want = oracle_fourier(f, omega)
    assert abs(got - want) < 1e-13


def test_fourier_zero_frequency_is_integral():
    f = narrow_bump()
    assert sp.fourier(f, 0.0) == complex(float(sp.pp_integral(f)))


@pytest.mark.parametrize("omega", [0.5, 17.0])
def test_fourier_conjugate_symmetry(omega):
    f = narrow_bump()
    z1, z2 = sp.fourier(f, omega), sp.fourier(f, -omega)
    assert abs(z1 - z2.conjugate()) < 1e-15


@pytest.mark.parametrize("omega", [2.0, 50.0])
def test_fourier_translation_law(omega):
    f = narrow_bump()
    h = rat(3, 7)
    z = sp.fourier(sp.pp_translate(f, h), omega)
    want = cmath.exp(1j * omega * float(h)) * sp.fourier(f, omega)
    assert abs(z - want) < 1e-14


def test_trig_moments_are_fourier_parts():
    f = narrow_bump()
    c, s = sp.trig_moments(f, 3.5)
    z = sp.fourier(f, 3.5)
    assert c == z.real and s == z.imag
