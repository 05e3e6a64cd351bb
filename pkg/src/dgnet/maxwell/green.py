"""Green operators and the trivialization of the observable complex.

Per angular mode ``n`` the wave operator acts on time profiles as ``dt_^2 +
omega^2`` with ``omega = 2 pi n``.  The retarded/advanced inverses and their
difference are applied in closed form: the constant mode yields exact
piecewise polynomials (with polynomial tails), the oscillatory modes yield
piecewise polynomial-plus-trigonometric functions.

The trivialization ``Lambda`` maps a degree-``m`` observable cochain into the
solution complex in the same degree (``G delta`` / ``G`` legwise / ``d G``
through the degrees).  Each of the retarded and advanced variants satisfies
the homotopy identity

    d_Sol Lambda(phi) - Lambda(d phi) = j(phi)

with ``j`` the degree-shifting inclusion of observables into solutions, so
their difference is a chain map; the checks probe this identity by pairing
against compactly supported test profiles.  The Poisson pairing of two
observable cochains of complementary degree is ``-ev(Lambda(phi1), phi2)``
with ``ev`` the legwise metric pairing (time legs enter with a minus sign).
"""

from __future__ import annotations

import math

from .. import splines as sp
from .._ratback import Rat
from ..scalar import QQi
from .cylinder import (
    FORMDEG,
    ModeForm,
    ObsCochain,
    form_add,
    form_scale,
    form_sub,
    observable_differential,
    op_d,
    op_delta,
    op_deltad,
    zero_form,
)

# form degree carried by each solution-complex degree
SOL_FORMDEG = {-1: 0, 0: 1, 1: 1, 2: 0}

TWO_PI = 2 * math.pi


class ModeTimeFn:
    """A single-mode time profile closed under the Green operators:

        poly(t) + ccos cos(wt) + csin sin(wt) + ppc * pp(t) + tp(t)

    ``poly`` is a global polynomial (exact when its coefficients are
    rational), ``pp`` an exact piecewise polynomial scaled by ``ppc``, and
    ``tp`` a float piecewise polynomial-plus-trigonometric part."""

    __slots__ = ("omega", "poly", "ccos", "csin", "pp", "ppc", "tp")

    def __init__(self, omega=0.0, poly=(), ccos=0.0, csin=0.0,
                 pp=None, ppc=1, tp=None):
        self.omega = float(omega)
        self.poly = sp.poly_trim(tuple(poly))
        self.ccos = float(ccos)
        self.csin = float(csin)
        self.pp = None if (pp is None or pp.is_zero()) else pp
        self.ppc = ppc if self.pp is not None else 1
        self.tp = tp

    def is_zero(self):
        return (not self.poly and not self.ccos and not self.csin
                and self.pp is None
                and (self.tp is None or all(
                    not p and not c and not s for p, c, s in self.tp.pieces)))

    def is_exact(self):
        return (self.tp is None and not self.ccos and not self.csin
                and not isinstance(self.ppc, float)
                and all(not isinstance(c, float) for c in self.poly))

    def derivative(self):
        return ModeTimeFn(
            self.omega,
            poly=sp.poly_deriv(self.poly),
            ccos=self.csin * self.omega,
            csin=-self.ccos * self.omega,
            pp=None if self.pp is None else sp.pp_derivative(self.pp),
            ppc=self.ppc,
            tp=None if self.tp is None else self.tp.derivative(),
        )

    def __call__(self, t):
        v = sum(float(c) * float(t) ** k for k, c in enumerate(self.poly))
        if self.ccos or self.csin:
            v += (self.ccos * math.cos(self.omega * float(t))
                  + self.csin * math.sin(self.omega * float(t)))
        if self.pp is not None:
            v += float(self.ppc) * float(self.pp(sp.rat_from_float(t)))
        if self.tp is not None:
            v += self.tp(float(t))
        return v

    def eval_exact(self, t):
        """The value at an exact time, or None when the profile has float
        content."""
        if not self.is_exact():
            return None
        t = Rat(t)
        v = Rat(0)
        for k, c in enumerate(self.poly):
            v += Rat(c) * t ** k
        if self.pp is not None:
            v += Rat(self.ppc) * self.pp(t)
        return v

    def pair_float(self, probe):
        """Closed-form ``integral self * probe`` against a compactly
        supported exact piecewise polynomial probe, as a float."""
        v = 0.0
        for k, c in enumerate(self.poly):
            if c:
                v += float(c) * float(sp.pp_moment(probe, k))
        if self.ccos or self.csin:
            cm, sm = sp.trig_moments(probe, self.omega)
            v += self.ccos * cm + self.csin * sm
        if self.pp is not None:
            v += float(self.ppc) * float(sp.pp_integral(sp.pp_mul(self.pp, probe)))
        if self.tp is not None:
            v += self.tp.integrate_against(probe)
        return v

    def pair_exact(self, probe):
        """The same pairing as an exact rational, or None when the profile
        has float content."""
        if not self.is_exact():
            return None
        v = Rat(0)
        for k, c in enumerate(self.poly):
            if c:
                v += Rat(c) * sp.pp_moment(probe, k)
        if self.pp is not None:
            v += Rat(self.ppc) * sp.pp_integral(sp.pp_mul(self.pp, probe))
        return v

    def __repr__(self):
        bits = []
        if self.poly:
            bits.append("poly deg %d" % (len(self.poly) - 1))
        if self.ccos or self.csin:
            bits.append("trig")
        if self.pp is not None:
            bits.append("pp")
        if self.tp is not None:
            bits.append("trig-pp")
        return "ModeTimeFn(w=%g: %s)" % (self.omega, ", ".join(bits) or "0")


def time_fn(pp, omega=0.0):
    """Embed an exact compact profile as a mode time function."""
    return ModeTimeFn(omega, pp=pp)


# -- per-mode Green operators -----------------------------------------------


def green_difference(f, omega):
    """The difference Green operator (retarded minus advanced) of
    ``dt_^2 + omega^2`` applied to a compact exact profile."""
    if omega == 0:
        return ModeTimeFn(poly=(-sp.pp_moment(f, 1), sp.pp_moment(f, 0)))
    cm, sm = sp.trig_moments(f, omega)
    return ModeTimeFn(omega, ccos=-sm / omega, csin=cm / omega)


def _retarded_trig(f, omega):
    """The retarded solution of ``u'' + omega^2 u = f`` as a piecewise
    polynomial-plus-trigonometric function (closed form, no quadrature)."""
    w = float(omega)
    iw = 1j * w
    acc = 0j  # running integral of exp(-i w s) f(s) over completed cells
    breaks = [float(b) for b in f.breaks]
    pieces = []
    for i, p in enumerate(f.pieces):
        if not p:
            pieces.append(((), acc.imag / w, acc.real / w))
            continue
        # qc solves qc' - i w qc = p, so d/ds (qc e^{-iws}) = p e^{-iws}
        q = tuple(float(c) for c in p)
        qc = [0j] * len(q)
        deriv = q
        den = iw
        while deriv:
            for k, c in enumerate(deriv):
                qc[k] -= c / den
            deriv = sp.poly_deriv(deriv)
            den *= iw
        a, b = breaks[i], breaks[i + 1]
        za = sp.poly_eval(tuple(qc), a) * complex(math.cos(w * a), -math.sin(w * a))
        zb = sp.poly_eval(tuple(qc), b) * complex(math.cos(w * b), -math.sin(w * b))
        zc = acc - za
        pieces.append((tuple(c.imag / w for c in qc), zc.imag / w, zc.real / w))
        acc += zb - za
    pieces.append(((), acc.imag / w, acc.real / w))
    return sp.TrigPiecewise(w, breaks, pieces)


def green_retarded(f, omega):
    if omega == 0:
        a1 = sp.pp_antiderivative(f)
        a2 = sp.pp_antiderivative(sp.pp_mul_poly(f, (0, 1)))
        return ModeTimeFn(pp=sp.pp_sub(sp.pp_mul_poly(a1, (0, 1)), a2))
    return ModeTimeFn(omega, tp=_retarded_trig(f, omega))


def green_advanced(f, omega):
    r = green_retarded(f, omega)
    d = green_difference(f, omega)
    return ModeTimeFn(omega, poly=sp.poly_scale(Rat(-1), d.poly),
                      ccos=-d.ccos, csin=-d.csin, pp=r.pp, tp=r.tp)


GREEN_KINDS = {
    "difference": green_difference,
    "retarded": green_retarded,
    "advanced": green_advanced,
}


def _apply_green(form, kind):
    """Apply the chosen Green operator modewise to an exact mode-spline
    form; the result carries mode time functions as payloads."""
    g = GREEN_KINDS[kind]
    comps = {}
    for (n, trig, leg), terms in form.comps.items():
        omega = TWO_PI * n
        comps[(n, trig, leg)] = [(w, c, g(f, omega)) for (w, c, f) in terms]
    return ModeForm(form.k, comps, form.tail_bound)


def lift_cochain(form):
    """The inclusion j of an observable form into the solution complex:
    the same form with its profiles embedded as mode time functions."""
    comps = {
        key: [(w, c, time_fn(f, TWO_PI * key[0])) for (w, c, f) in terms]
        for key, terms in form.comps.items()
    }
    return ModeForm(form.k, comps, form.tail_bound)


def trivialization(m, form, kind="difference"):
    """The solution-complex form ``Lambda(phi)`` of a degree-``m``
    observable form (``G delta``, legwise ``G``, or ``d G``)."""
    if m == -2:
        return zero_form(0)
    if m == -1:
        return _apply_green(op_delta(form), kind)
    if m == 0:
        return _apply_green(form, kind)
    if m == 1:
        return op_d(_apply_green(form, kind))
    raise ValueError("no observable degree %d" % (m,))


def solution_differential(m, form):
    """The solution-complex differential in degree ``m`` (signs +d,
    +delta d, +delta through the degrees)."""
    if m == -1:
        return op_d(form)
    if m == 0:
        return op_deltad(form)
    if m == 1:
        return op_delta(form)
    return zero_form(0)


def homotopy_defect(phi, kind):
    """``d_Sol Lambda(phi) - Lambda(d phi) - j(phi)`` for an observable
    cochain; identically zero for the retarded and advanced variants."""
    lam = trivialization(phi.m, phi.form, kind)
    out = solution_differential(phi.m, lam)
    if phi.m < 1:
        dphi = observable_differential(phi.m, phi.form)
        out = form_sub(out, trivialization(phi.m + 1, dphi, kind))
    return form_sub(out, lift_cochain(phi.form))


def chain_map_defect(phi):
    """``d_Sol Lambda(phi) - Lambda(d phi)`` for the difference
    trivialization; identically zero since it is a chain map."""
    lam = trivialization(phi.m, phi.form, "difference")
    out = solution_differential(phi.m, lam)
    if phi.m < 1:
        dphi = observable_differential(phi.m, phi.form)
        out = form_sub(out, trivialization(phi.m + 1, dphi, "difference"))
    return out


def probe_form(form, probes):
    """Pair every mode/leg component of a time-function form against every
    probe profile; returns the largest absolute value (a residual norm)."""
    worst = 0.0
    for (n, trig, leg), terms in form.comps.items():
        kap = TWO_PI * n
        for probe in probes:
            v = 0.0
            for (w, c, fn) in terms:
                v += float(c) * (kap ** w if w else 1.0) * fn.pair_float(probe)
            worst = max(worst, abs(v))
    return worst


# -- pairings ---------------------------------------------------------------


class PairingValue:
    """A real pairing: float value, its exact rational form when available,
    and a bound on the error from discarded angular modes."""

    __slots__ = ("value", "exact", "est_error")

    def __init__(self, value, exact=None, est_error=0.0):
        self.value = float(value)
        self.exact = exact
        self.est_error = float(est_error)

    def __repr__(self):
        if self.exact is not None:
            return "PairingValue(%s exact)" % (self.exact,)
        return "PairingValue(%g +/- %g)" % (self.value, self.est_error)


def _leg_sign(leg):
    return -1 if leg == "T" else 1


def ev_pairing(alpha, beta):
    """The legwise metric pairing of a solution form (time-function
    payloads) with an observable form (exact profiles) of the same form
    degree: sum over matching modes of ``integral alpha_leg beta_leg`` with
    the time leg negated, cos/sin cross terms dropping out, and the
    half-circle factor on nonzero modes."""
    if alpha.k != beta.k:
        raise ValueError("form degree mismatch in pairing")
    total = 0.0
    exact = Rat(0)
    exact_ok = True
    for key, aterms in alpha.comps.items():
        bterms = beta.comps.get(key)
        if not bterms:
            continue
        n, _, leg = key
        sigma = _leg_sign(leg)
        theta = 1.0 if n == 0 else 0.5
        kap = TWO_PI * n
        for (wa, ca, fa) in aterms:
            for (wb, cb, fb) in bterms:
                w = wa + wb
                kapw = kap ** w if w else 1.0
                base = fa.pair_float(fb)
                total += sigma * theta * kapw * float(ca) * float(cb) * base
                if exact_ok and n == 0 and not w:
                    b = fa.pair_exact(fb)
                    if b is None or isinstance(ca, float) or isinstance(cb, float):
                        exact_ok = False
                    else:
                        exact += sigma * Rat(ca) * Rat(cb) * b
                elif n != 0:
                    pass
                else:
                    exact_ok = False
    nonzero_modes = any(key[0] for key in alpha.comps if key in beta.comps)
    if nonzero_modes:
        exact_ok = False
    err = alpha.tail_bound + beta.tail_bound
    return PairingValue(total, QQi(exact) if exact_ok else None, err)


def poisson(phi1, phi2):
    """The Poisson pairing of two observable cochains,

        tau(phi1, phi2) = -(-1)^(m(m-1)/2) ev(Lambda(phi1), phi2)

    with ``m`` the degree of the first argument; zero unless the degrees sum
    to zero.  The Koszul sign makes the pairing graded antisymmetric,
    ``tau(y, x) = -(-1)^(|x||y|) tau(x, y)``."""
    if phi1.m + phi2.m != 0:
        return PairingValue(0.0, QQi(0))
    m = phi1.m
    sign = -((-1) ** (m * (m - 1) // 2))
    lam = trivialization(m, phi1.form, "difference")
    pv = ev_pairing(lam, phi2.form)
    exact = None if pv.exact is None else sign * pv.exact
    return PairingValue(sign * pv.value, exact, pv.est_error)
