"""The two-point function of the gauge-field vacuum on the cylinder.

The building block is the positive-frequency pairing ``W^(k)`` of two
``k``-forms: legwise (time legs negated), the constant mode contributes the
harmonic kernel

    (i/2) * (m1(f) m0(g) - m0(f) m1(g))  [+ optional symmetric m0 x A x m0]

and each mode ``n >= 1`` contributes the oscillator kernel

    (1/2) * kappa^(w+w') * F_f(kappa) conj(F_g(kappa)) / (2 kappa)

with ``kappa = 2 pi n``, ``F`` the time Fourier transform, the ``1/2`` the
circle average of ``cos^2``/``sin^2``, and ``kappa^(w+w')`` resolving the
formal weights carried by the mode bases.  The full two-point pairing of two
observable cochains of complementary degree is, by the degree of the first
argument,

    m = -1:  -W^(0)(delta phi1, phi2)
    m =  0:   W^(1)(phi1, phi2)
    m = +1:  +W^(0)(phi1, delta phi2),

which makes it a cochain map whose graded antisymmetric part is ``i`` times
the Poisson pairing: ``w2(x, y) - (-1)^(|x||y|) w2(y, x) = i tau(x, y)``.
"""

from __future__ import annotations

import math

from .. import splines as sp
from .._ratback import Rat, rat
from ..scalar import QQi
from .cylinder import ModeForm, ObsCochain, observable_differential, op_box, op_delta
from .green import TWO_PI, _leg_sign, poisson

I_HALF = QQi(Rat(0), rat(1, 2))


class TwoPointValue:
    """A complex pairing with its exact Gaussian-rational form when the
    inputs are exact constant-mode data, and a bound on the contribution of
    discarded angular modes."""

    __slots__ = ("value", "exact", "est_error")

    def __init__(self, value, exact=None, est_error=0.0):
        self.value = complex(value)
        self.exact = exact
        self.est_error = float(est_error)

    def __repr__(self):
        if self.exact is not None:
            return "TwoPointValue(%s exact)" % (self.exact,)
        return "TwoPointValue(%s +/- %g)" % (self.value, self.est_error)


def _component_moments(terms):
    """(m0, m1) of a constant-mode component, exact when possible."""
    m0 = Rat(0)
    m1 = Rat(0)
    exact = True
    f0 = f1 = 0.0
    for (w, c, f) in terms:
        if w:
            raise ValueError("constant-mode terms carry weight zero")
        a0, a1 = sp.pp_moment(f, 0), sp.pp_moment(f, 1)
        f0 += float(c) * float(a0)
        f1 += float(c) * float(a1)
        if isinstance(c, float):
            exact = False
        elif exact:
            m0 += Rat(c) * a0
            m1 += Rat(c) * a1
    if exact:
        return m0, m1, True
    return f0, f1, False


def _component_fourier(terms, kappa):
    """The weighted Fourier transform of a mode component at ``kappa``."""
    z = 0j
    for (w, c, f) in terms:
        z += float(c) * (kappa ** w if w else 1.0) * sp.fourier(f, kappa)
    return z


def _hook_value(a_hook, leg):
    if a_hook is None:
        return None
    if isinstance(a_hook, dict):
        return a_hook.get(leg)
    return a_hook


def w_pairing(f1, f2, a_hook=None):
    """The positive-frequency pairing ``W^(k)`` of two forms of the same
    form degree.  ``a_hook`` optionally adds the symmetric constant-mode
    term ``A * m0(f1) m0(f2)`` (a scalar, or a dict keyed by leg)."""
    if f1.k != f2.k:
        raise ValueError("form degree mismatch")
    total = 0j
    exact = QQi(0)
    exact_ok = True
    for key, t1 in f1.comps.items():
        t2 = f2.comps.get(key)
        if not t2:
            continue
        n, _, leg = key
        sigma = _leg_sign(leg)
        if n == 0:
            a0, a1, e1 = _component_moments(t1)
            b0, b1, e2 = _component_moments(t2)
            hook = _hook_value(a_hook, leg)
            if e1 and e2:
                v = I_HALF * QQi(a1 * b0 - a0 * b1)
                if hook is not None:
                    v = v + QQi(a0) * hook * QQi(b0)
                if sigma < 0:
                    v = -v
                exact = exact + v
                total += complex(float(v.re), float(v.im))
            else:
                exact_ok = False
                v = 0.5j * (float(a1) * float(b0) - float(a0) * float(b1))
                if hook is not None:
                    v += float(a0) * float(b0) * complex(float(hook.re),
                                                         float(hook.im))
                total += sigma * v
        else:
            exact_ok = False
            kappa = TWO_PI * n
            z1 = _component_fourier(t1, kappa)
            z2 = _component_fourier(t2, kappa)
            total += sigma * 0.5 * z1 * z2.conjugate() / (2 * kappa)
    err = f1.tail_bound * f2.tail_bound
    return TwoPointValue(total, exact if exact_ok else None, err)


def two_point(phi1, phi2, a_hook=None):
    """The two-point pairing of two observable cochains; zero unless the
    degrees sum to zero."""
    m = phi1.m
    if m + phi2.m != 0:
        return TwoPointValue(0j, QQi(0))
    if m == -1:
        v = w_pairing(op_delta(phi1.form), phi2.form, a_hook)
        return TwoPointValue(-v.value,
                             None if v.exact is None else -v.exact,
                             v.est_error)
    if m == 0:
        return w_pairing(phi1.form, phi2.form, a_hook)
    if m == 1:
        return w_pairing(phi1.form, op_delta(phi2.form), a_hook)
    return TwoPointValue(0j, QQi(0))


def cochain_defect(a, phi1, phi2, a_hook=None):
    """The residual of the cochain condition in bidegree ``(a, -1-a)``:

        w2(d phi1, phi2) + (-1)^a w2(phi1, d phi2)

    for ``phi1`` of degree ``a`` and ``phi2`` of degree ``-1-a``."""
    if phi1.m != a or phi2.m != -1 - a:
        raise ValueError("bidegree mismatch")
    total = 0j
    if a < 1:
        d1 = ObsCochain(a + 1, observable_differential(a, phi1.form))
        total += two_point(d1, phi2, a_hook).value
    if phi2.m < 1:
        d2 = ObsCochain(phi2.m + 1,
                        observable_differential(phi2.m, phi2.form))
        total += (-1) ** a * two_point(phi1, d2, a_hook).value
    return total


def antisymmetry_defect(phi1, phi2, a_hook=None):
    """``w2(x, y) - (-1)^(|x||y|) w2(y, x) - i tau(x, y)`` as a complex
    residual; zero when the antisymmetric part of the two-point function is
    ``i`` times the Poisson pairing."""
    w12 = two_point(phi1, phi2, a_hook).value
    w21 = two_point(phi2, phi1, a_hook).value
    tau = poisson(phi1, phi2).value
    return w12 - (-1) ** (phi1.m * phi2.m) * w21 - 1j * tau


def shift_defect(alpha, beta, a_hook=None):
    """``W^(1)(d alpha, beta) - W^(0)(alpha, delta beta)`` for a 0-form
    ``alpha`` and a 1-form ``beta``; vanishing expresses that the kernel
    intertwines the differential with the codifferential."""
    from .cylinder import op_d

    lhs = w_pairing(op_d(alpha), beta, a_hook).value
    rhs = w_pairing(alpha, op_delta(beta), a_hook).value
    return lhs - rhs


def bisolution_defect(f1, f2, a_hook=None):
    """``(W(box f1, f2), W(f1, box f2))`` for forms of equal degree; both
    vanish since the kernel is a bisolution of the wave equation."""
    return (w_pairing(op_box(f1), f2, a_hook).value,
            w_pairing(f1, op_box(f2), a_hook).value)
