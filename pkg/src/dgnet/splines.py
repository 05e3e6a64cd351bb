"""Compactly supported splines on a rational knot grid, with exact calculus.

The time profiles of the cylinder models are piecewise polynomials with
rational breakpoints and coefficients.  This module provides:

* :class:`PiecewisePoly` -- exact piecewise polynomials (zero below the first
  breakpoint, an optional polynomial tail above the last one, so that
  antiderivatives stay in the class);
* B-spline bases via the Cox--de Boor recursion, exact derivative matrices
  realizing d/dt as a map between spline spaces of adjacent degrees, and
  exact moment functionals;
* closed-form oscillatory integrals (``fourier``) and the float-valued
  :class:`TrigPiecewise` class used by the numeric pairing layer for
  retarded/advanced kernels.

Polynomials are coefficient tuples, lowest degree first.  The polynomial
helpers are generic in the coefficient type: exact rationals for the spline
layer, floats for the oscillatory layer.
"""

from __future__ import annotations

import cmath
import math

from ._ratback import Rat, rat

# -- polynomial helpers (generic in the scalar type) ------------------------


def poly_trim(p):
    p = tuple(p)
    while p and not p[-1]:
        p = p[:-1]
    return p


def poly_add(p, q):
    n = max(len(p), len(q))
    return poly_trim(
        tuple((p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n))
    )


def poly_scale(c, p):
    return poly_trim(tuple(c * a for a in p))


def poly_mul(p, q):
    if not p or not q:
        return ()
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] = out[i + j] + a * b
    return poly_trim(out)


def poly_deriv(p):
    return poly_trim(tuple(p[i] * i for i in range(1, len(p))))


def poly_antider(p):
    """An antiderivative with zero constant term."""
    if not p:
        return ()
    return (0 * p[0],) + tuple(p[i] / (i + 1) for i in range(len(p)))


def poly_eval(p, x):
    out = 0
    for a in reversed(p):
        out = out * x + a
    return out


def poly_shift(p, h):
    """The polynomial t -> p(t - h)."""
    out = ()
    # binomial expansion via repeated composition with (t - h)
    shifted = (-h, 1) if p else ()
    power = (1,)
    for a in p:
        out = poly_add(out, poly_scale(a, power))
        power = poly_mul(power, shifted)
    return out


# -- exact piecewise polynomials --------------------------------------------


class PiecewisePoly:
    """A piecewise polynomial: zero below ``breaks[0]``, ``pieces[i]`` on
    ``[breaks[i], breaks[i+1]]``, and the polynomial ``tail`` above
    ``breaks[-1]`` (empty tuple for compactly supported functions)."""

    __slots__ = ("breaks", "pieces", "tail")

    def __init__(self, breaks, pieces, tail=()):
        breaks = tuple(Rat(b) for b in breaks)
        if len(breaks) < 2:
            raise ValueError("need at least two breakpoints")
        if any(breaks[i] >= breaks[i + 1] for i in range(len(breaks) - 1)):
            raise ValueError("breakpoints must increase strictly")
        if len(pieces) != len(breaks) - 1:
            raise ValueError("piece count does not match breakpoints")
        self.breaks = breaks
        self.pieces = tuple(poly_trim(tuple(Rat(c) for c in p)) for p in pieces)
        self.tail = poly_trim(tuple(Rat(c) for c in tail))

    def is_compact(self):
        return not self.tail

    def is_zero(self):
        return not self.tail and all(not p for p in self.pieces)

    def support(self):
        return self.breaks[0], self.breaks[-1]

    def piece_at(self, x):
        """The polynomial valid on the interval containing ``x`` (an interior
        point of some interval; breakpoints themselves are ambiguous)."""
        if x < self.breaks[0]:
            return ()
        if x > self.breaks[-1]:
            return self.tail
        for i in range(len(self.pieces)):
            if self.breaks[i] <= x <= self.breaks[i + 1]:
                return self.pieces[i]
        return ()

    def __call__(self, x):
        x = Rat(x)
        if x < self.breaks[0]:
            return Rat(0)
        if x >= self.breaks[-1]:
            return poly_eval(self.tail, x) if self.tail else Rat(0)
        return poly_eval(self.piece_at_index(x), x)

    def piece_at_index(self, x):
        for i in range(len(self.pieces)):
            if self.breaks[i] <= x < self.breaks[i + 1]:
                return self.pieces[i]
        return self.pieces[-1]

    def __repr__(self):
        return "PiecewisePoly(%d pieces on [%s, %s]%s)" % (
            len(self.pieces),
            self.breaks[0],
            self.breaks[-1],
            ", tailed" if self.tail else "",
        )


def pp_zero(a=0, b=1):
    return PiecewisePoly((a, b), ((),))


def _merged(f, g):
    bs = sorted(set(f.breaks) | set(g.breaks))
    return bs


def _on_breaks(f, bs):
    """Pieces of ``f`` on each interval of the refined partition ``bs``."""
    out = []
    for i in range(len(bs) - 1):
        mid = (bs[i] + bs[i + 1]) / 2
        out.append(f.piece_at(mid))
    return out


def pp_add(f, g):
    bs = _merged(f, g)
    fp, gp = _on_breaks(f, bs), _on_breaks(g, bs)
    return PiecewisePoly(bs, [poly_add(a, b) for a, b in zip(fp, gp)],
                         poly_add(f.tail, g.tail))


def pp_scale(c, f):
    c = Rat(c)
    return PiecewisePoly(f.breaks, [poly_scale(c, p) for p in f.pieces],
                         poly_scale(c, f.tail))


def pp_sub(f, g):
    return pp_add(f, pp_scale(-1, g))


def pp_mul(f, g):
    bs = _merged(f, g)
    fp, gp = _on_breaks(f, bs), _on_breaks(g, bs)
    return PiecewisePoly(bs, [poly_mul(a, b) for a, b in zip(fp, gp)],
                         poly_mul(f.tail, g.tail))


def pp_mul_poly(f, poly):
    """Multiply by a globally defined polynomial."""
    poly = poly_trim(tuple(Rat(c) for c in poly))
    return PiecewisePoly(f.breaks, [poly_mul(p, poly) for p in f.pieces],
                         poly_mul(f.tail, poly))


def pp_derivative(f):
    return PiecewisePoly(f.breaks, [poly_deriv(p) for p in f.pieces],
                         poly_deriv(f.tail))


def pp_antiderivative(f):
    """The antiderivative vanishing at -infinity (piecewise cumulative)."""
    pieces = []
    const = Rat(0)
    for i, p in enumerate(f.pieces):
        a = poly_antider(p)
        offset = const - poly_eval(a, f.breaks[i])
        pieces.append(poly_add(a, (offset,)))
        const = poly_eval(pieces[-1], f.breaks[i + 1])
    if f.tail:
        a = poly_antider(f.tail)
        tail = poly_add(a, (const - poly_eval(a, f.breaks[-1]),))
    else:
        tail = (const,) if const else ()
    return PiecewisePoly(f.breaks, pieces, tail)


def pp_integral(f):
    if f.tail:
        raise ValueError("integral of a tailed piecewise polynomial")
    total = Rat(0)
    for i, p in enumerate(f.pieces):
        a = poly_antider(p)
        total += poly_eval(a, f.breaks[i + 1]) - poly_eval(a, f.breaks[i])
    return total


def pp_moment(f, k=0):
    """Exact ``integral of t^k f(t) dt`` for compactly supported ``f``."""
    if k == 0:
        return pp_integral(f)
    return pp_integral(pp_mul_poly(f, (0,) * k + (1,)))


def pp_translate(f, h):
    """The time translate t -> f(t - h)."""
    h = Rat(h)
    return PiecewisePoly(tuple(b + h for b in f.breaks),
                         [poly_shift(p, h) for p in f.pieces],
                         poly_shift(f.tail, h))


def pp_eq(f, g):
    return pp_sub(f, g).is_zero()


def _centered_poly_fourier(q, h, omega):
    """``integral_{-h}^{h} q(u) exp(i omega u) du`` for a float polynomial
    ``q``, numerically stable at small ``omega * h`` via the power series
    ``sum_r (i omega)^r / r! integral q(u) u^r du``; closed-form
    antiderivative otherwise."""
    if not q:
        return 0j
    x = omega * h
    if abs(x) < 8.0:
        iw = 1j * omega
        scale = 2.0 * h * sum(abs(c) * h ** j for j, c in enumerate(q))
        total = 0j
        fac = 1.0 + 0j  # (i omega)^r / r!
        xr = 1.0  # |x|^r / r!
        for r in range(80):
            m_r = 0.0
            for j, c in enumerate(q):
                k = j + r
                if c and k % 2 == 0:
                    m_r += c * 2.0 * h ** (k + 1) / (k + 1)
            total += fac * m_r
            fac *= iw / (r + 1)
            xr *= abs(x) / (r + 1)
            if xr * scale < 1e-20 * (abs(total) + 1e-300) and r > abs(x):
                break
        return total
    iw = 1j * omega
    coeffs = []
    sign = 1.0
    p = tuple(q)
    while p:
        coeffs.append((sign, p))
        p = tuple(float(c) for c in poly_deriv(p))
        sign = -sign

    def anti(t):
        acc = 0j
        den = iw
        for s, poly in coeffs:
            acc += s * poly_eval(poly, t) / den
            den *= iw
        return cmath.exp(iw * t) * acc

    return anti(h) - anti(-h)


def fourier(f, omega):
    """Closed-form ``integral f(t) exp(i omega t) dt`` (complex float).

    Each piece is recentered exactly at its midpoint (so the shifted
    coefficients stay on the scale of the function values) before the
    oscillatory integral; ``omega`` may be any nonzero float.  ``omega == 0``
    returns the plain integral.
    """
    if not f.is_compact():
        raise ValueError("fourier transform of a tailed piecewise polynomial")
    if omega == 0:
        return complex(float(pp_integral(f)))
    total = 0j
    for i, p in enumerate(f.pieces):
        if not p:
            continue
        a, b = f.breaks[i], f.breaks[i + 1]
        mid = (a + b) * rat(1, 2)
        h = float(b - a) / 2.0
        # q(u) = p(mid + u), shifted exactly in rational arithmetic
        q = tuple(float(c) for c in poly_shift(p, -mid))
        z = _centered_poly_fourier(q, h, omega)
        total += cmath.exp(1j * omega * float(mid)) * z
    return total


def trig_moments(f, omega):
    """(integral f cos(wt), integral f sin(wt)) as floats."""
    z = fourier(f, omega)
    return z.real, z.imag


# -- B-splines ---------------------------------------------------------------


def space_dim(knots, degree):
    """Dimension of the compactly supported spline space of this degree."""
    return max(0, len(knots) - degree - 1)


def bspline(knots, degree, i):
    """The i-th B-spline of the given degree on the knot vector (exact)."""
    knots = [Rat(t) for t in knots]
    if not 0 <= i < space_dim(knots, degree):
        raise IndexError("B-spline index out of range")

    def build(d, j):
        if d == 0:
            return PiecewisePoly((knots[j], knots[j + 1]), ((rat(1),),))
        left = build(d - 1, j)
        right = build(d - 1, j + 1)
        la = knots[j + d] - knots[j]
        ra = knots[j + d + 1] - knots[j + 1]
        f = pp_mul_poly(left, (-knots[j] / la, 1 / la))
        g = pp_mul_poly(right, (knots[j + d + 1] / ra, -1 / ra))
        return pp_add(f, g)

    return build(degree, i)


def basis(knots, degree):
    return [bspline(knots, degree, i) for i in range(space_dim(knots, degree))]


def derivative_matrix(knots, degree):
    """Exact matrix of d/dt from degree-``degree`` splines to degree-1 lower.

    Rows index the degree-(degree-1) basis, columns the degree-``degree``
    basis; entries are rationals.
    """
    knots = [Rat(t) for t in knots]
    rows = space_dim(knots, degree - 1)
    cols = space_dim(knots, degree)
    mat = [[Rat(0)] * cols for _ in range(rows)]
    d = degree
    for i in range(cols):
        mat[i][i] += Rat(d) / (knots[i + d] - knots[i])
        mat[i + 1][i] -= Rat(d) / (knots[i + d + 1] - knots[i + 1])
    return mat


def moment_vector(knots, degree, k=0):
    return [pp_moment(b, k) for b in basis(knots, degree)]


def combine(basis_pps, coeffs):
    """The spline with the given exact coordinates in a basis."""
    out = None
    for b, c in zip(basis_pps, coeffs):
        if not c:
            continue
        term = pp_scale(c, b)
        out = term if out is None else pp_add(out, term)
    if out is None:
        k0, k1 = basis_pps[0].support()
        return pp_zero(k0, k1)
    return out


def bump(knots, degree):
    """Coordinates of a central even bump with integral 1, zero t-moment.

    Requires a knot grid symmetric about 0; the bump is the central basis
    spline (or the average of the middle pair), normalized.  Returns the
    exact coordinate vector in ``basis(knots, degree)``.
    """
    knots = [Rat(t) for t in knots]
    if any(a + b for a, b in zip(knots, reversed(knots))):
        raise ValueError("bump profile needs a knot grid symmetric about 0")
    m = space_dim(knots, degree)
    coeffs = [Rat(0)] * m
    if m % 2:
        coeffs[m // 2] = Rat(1)
    else:
        coeffs[m // 2 - 1] = rat(1, 2)
        coeffs[m // 2] = rat(1, 2)
    f = combine(basis(knots, degree), coeffs)
    total = pp_integral(f)
    return [c / total for c in coeffs]


# -- float trig-polynomial pieces (numeric layer) ---------------------------


class TrigPiecewise:
    """Float-valued function: zero below ``breaks[0]``; on each interval the
    value is ``p(t) + c cos(omega t) + s sin(omega t)``; the last entry of
    ``pieces`` (one more than the interval count) is the tail for
    ``t >= breaks[-1]``.  Closed under d/dt; integrates in closed form
    against exact piecewise polynomials."""

    __slots__ = ("omega", "breaks", "pieces")

    def __init__(self, omega, breaks, pieces):
        if len(pieces) != len(breaks):
            raise ValueError("need interval pieces plus a tail piece")
        self.omega = float(omega)
        self.breaks = tuple(float(b) for b in breaks)
        self.pieces = tuple(
            (poly_trim(tuple(float(c) for c in p)), float(c), float(s))
            for p, c, s in pieces
        )

    def piece_at(self, x):
        if x < self.breaks[0]:
            return ((), 0.0, 0.0)
        for i in range(len(self.breaks) - 1):
            if x <= self.breaks[i + 1]:
                return self.pieces[i]
        return self.pieces[-1]

    def __call__(self, x):
        p, c, s = self.piece_at(x)
        w = self.omega
        return poly_eval(p, x) + c * math.cos(w * x) + s * math.sin(w * x)

    def derivative(self):
        w = self.omega
        return TrigPiecewise(
            w,
            self.breaks,
            [(poly_deriv(p), s * w, -c * w) for p, c, s in self.pieces],
        )

    def scale(self, a):
        a = float(a)
        return TrigPiecewise(
            self.omega,
            self.breaks,
            [(poly_scale(a, p), a * c, a * s) for p, c, s in self.pieces],
        )

    def add(self, other):
        if other.omega != self.omega:
            raise ValueError("frequency mismatch")
        bs = sorted(set(self.breaks) | set(other.breaks))
        pieces = []
        for i in range(len(bs) - 1):
            mid = (bs[i] + bs[i + 1]) / 2
            (p1, c1, s1), (p2, c2, s2) = self.piece_at(mid), other.piece_at(mid)
            pieces.append((poly_add(p1, p2), c1 + c2, s1 + s2))
        big = bs[-1] + 1.0
        (p1, c1, s1), (p2, c2, s2) = self.piece_at(big), other.piece_at(big)
        pieces.append((poly_add(p1, p2), c1 + c2, s1 + s2))
        return TrigPiecewise(self.omega, bs, pieces)

    def integrate_against(self, probe):
        """Closed-form ``integral probe(t) * self(t) dt`` for a compactly
        supported exact :class:`PiecewisePoly` probe."""
        if not probe.is_compact():
            raise ValueError("probe must be compactly supported")
        bs = sorted({float(b) for b in probe.breaks} | set(self.breaks))
        lo, hi = float(probe.breaks[0]), float(probe.breaks[-1])
        bs = [b for b in bs if lo <= b <= hi]
        total = 0.0
        w = self.omega
        for i in range(len(bs) - 1):
            a, b = bs[i], bs[i + 1]
            mid = (a + b) / 2
            q = poly_trim(tuple(float(c) for c in probe.piece_at(rat_from_float(mid))))
            if not q:
                continue
            p, c, s = self.piece_at(mid)
            if p:
                pa = poly_antider(poly_mul(q, p))
                total += poly_eval(pa, b) - poly_eval(pa, a)
            if c or s:
                z = _poly_fourier(q, a, b, w)
                total += c * z.real + s * z.imag
        return total


def rat_from_float(x):
    return Rat(x) if not isinstance(x, float) else Rat(*x.as_integer_ratio())


def _poly_fourier(p, a, b, omega):
    """``integral_a^b p(t) exp(i omega t) dt`` for a float polynomial."""
    if not p:
        return 0j
    if omega == 0:
        pa = poly_antider(p)
        return complex(poly_eval(pa, b) - poly_eval(pa, a))
    mid = (a + b) / 2.0
    h = (b - a) / 2.0
    q = tuple(float(c) for c in poly_shift(p, -mid))
    return cmath.exp(1j * omega * mid) * _centered_poly_fourier(q, h, omega)


def trig_zero(omega):
    return TrigPiecewise(omega, (0.0,), [((), 0.0, 0.0)])
