"""The flat Lorentz cylinder (unit circle times time) for 1-form gauge fields.

Differential forms are truncated to angular Fourier modes ``|n| <= N`` with
compactly supported spline time profiles.  A form is decomposed into its
circle leg ``alpha_S`` and its time leg ``alpha_T`` (``alpha = alpha_S +
dt /\\ alpha_T``); the operators used here are, legwise per mode,

* ``d alpha     = d_S alpha_S + dt /\\ (dt_ alpha_S - d_S alpha_T)``
* ``delta alpha = (dt_ alpha_T + delta_S alpha_S) - dt /\\ delta_S alpha_T``
* ``delta d``   the composite,

with ``d_S``/``delta_S`` the circle differential/codifferential (``d_S`` and
``delta_S`` act on the mode ``exp(2 pi i n theta)`` through ``kappa = 2 pi
n``).  The observable complex sits in degrees -2..1,

    Omega^0_c --(-d)--> Omega^1_c --(-delta d)--> Omega^1_c --(-delta)--> Omega^0_c,

and equals the compactly supported solution complex shifted by one with the
differential negated.

Exactness scheme: each mode sector carries the power of ``kappa`` shown in
``KWEIGHT`` on its basis vectors, which turns every differential block into a
rational matrix; the spline polynomial degree drops by the number of time
derivatives applied (``SPLDROP``), so the complexes are exact over the
Gaussian rationals.  For ``n >= 1`` a mode splits into two decoupled
sub-sectors (tagged ``A``/``B``) by the cos/sin pattern the differentials
propagate through the legs.
"""

from __future__ import annotations

import math

from .. import linalg as la
from .. import splines as sp
from .._ratback import Rat, rat
from ..complexes import CochainComplex, GradedSpace, cohomology, direct_sum
from ..scalar import QQi

# complex degree -> legs present ('S' is the circle leg; a 0-form is pure S)
LEGS = {-2: ("S",), -1: ("S", "T"), 0: ("S", "T"), 1: ("S",)}
# form degree of each complex degree of the observable complex
FORMDEG = {-2: 0, -1: 1, 0: 1, 1: 0}
# spline polynomial degree drop below the configured top degree
SPLDROP = {(-2, "S"): 0, (-1, "S"): 0, (-1, "T"): 1,
           (0, "S"): 2, (0, "T"): 1, (1, "S"): 2}
# kappa power carried by the weighted basis of each leg
KWEIGHT = {(-2, "S"): 0, (-1, "S"): 1, (-1, "T"): 0,
           (0, "S"): 1, (0, "T"): 2, (1, "S"): 2}
# cos/sin assignment of sub-sector A (B swaps the two)
SUB_A = {(-2, "S"): "c", (-1, "S"): "s", (-1, "T"): "c",
         (0, "S"): "s", (0, "T"): "c", (1, "S"): "c"}

DEGREES = (-2, -1, 0, 1)


def _dtheta_sign(trig):
    """d/dtheta cos = -kappa sin, d/dtheta sin = +kappa cos."""
    return -1 if trig == "c" else 1


class CylinderConfig:
    """Knot grid, top spline degree, mode cutoff, and tolerances."""

    def __init__(self, knots=None, degree=4, mode_cutoff=2, tail_tol=1e-9):
        if knots is None:
            # 16 symmetric knots, step 1/4
            knots = [rat(2 * j - 15, 8) for j in range(16)]
        self.knots = tuple(Rat(k) for k in knots)
        if any(a + b for a, b in zip(self.knots, reversed(self.knots))):
            raise ValueError("knot grid must be symmetric about t = 0")
        self.degree = int(degree)
        if self.degree < 3:
            raise ValueError("top spline degree must be at least 3")
        if len(self.knots) < self.degree + 3:
            raise ValueError("knot grid too coarse for the spline degrees")
        self.mode_cutoff = int(mode_cutoff)
        if self.mode_cutoff < 0:
            raise ValueError("mode cutoff must be nonnegative")
        self.tail_tol = float(tail_tol)
        if self.tail_tol <= 0:
            raise ValueError("tolerances must be positive")

    def spline_degree(self, complex_degree, leg="S"):
        return self.degree - SPLDROP[(complex_degree, leg)]

    @property
    def spline_degree_by_complex_degree(self):
        return {key: self.degree - drop for key, drop in SPLDROP.items()}

    def __repr__(self):
        return "CylinderConfig(%d knots, degree %d, N=%d)" % (
            len(self.knots), self.degree, self.mode_cutoff)


class Region:
    """A causally convex region: the full cylinder, a time slab, or a
    causal diamond (kept through its inscribed box)."""

    def __init__(self, kind, t0=None, t1=None, theta0=None, radius=None,
                 box_t=None, box_theta=None):
        if kind not in ("full", "slab", "diamond"):
            raise ValueError("unknown region kind %r" % (kind,))
        self.kind = kind
        if kind == "slab":
            self.t0, self.t1 = Rat(t0), Rat(t1)
            if self.t0 >= self.t1:
                raise ValueError("empty slab")
        elif kind == "diamond":
            self.t0 = Rat(t0)
            self.theta0 = Rat(theta0)
            self.radius = Rat(radius)
            if not 0 < self.radius < rat(1, 2):
                raise ValueError("diamond radius must lie in (0, 1/2)")
            a = Rat(box_t) if box_t is not None else self.radius / 2
            b = Rat(box_theta) if box_theta is not None else self.radius / 2
            if a + b > self.radius:
                raise ValueError("inscribed box exceeds the diamond")
            self.box_t = a
            self.box_theta = b

    @staticmethod
    def full():
        return Region("full")

    @staticmethod
    def slab(t0, t1):
        return Region("slab", t0=t0, t1=t1)

    @staticmethod
    def diamond(t0, theta0, radius, box_t=None, box_theta=None):
        return Region("diamond", t0=t0, theta0=theta0, radius=radius,
                      box_t=box_t, box_theta=box_theta)

    def time_window(self):
        if self.kind == "full":
            return None
        if self.kind == "slab":
            return self.t0, self.t1
        return self.t0 - self.box_t, self.t0 + self.box_t

    def __repr__(self):
        if self.kind == "slab":
            return "Region(slab [%s, %s])" % (self.t0, self.t1)
        if self.kind == "diamond":
            return "Region(diamond t0=%s theta0=%s r=%s)" % (
                self.t0, self.theta0, self.radius)
        return "Region(full)"


def region_knots(config, region):
    window = region.time_window()
    if window is None:
        return config.knots
    t0, t1 = window
    knots = tuple(k for k in config.knots if t0 <= k <= t1)
    if len(knots) < config.degree + 3:
        raise ValueError("region %r holds too few knots" % (region,))
    return knots


# -- matrix helpers ---------------------------------------------------------


def _qmat(rows):
    return [[QQi(Rat(x)) for x in row] for row in rows]


def _neg(mat):
    return la.scale(QQi(-1), mat)


class Sector:
    """One decoupled block of a region complex: a mode ``n`` with a cos/sin
    sub-sector assignment (``sub`` is None for the constant mode)."""

    def __init__(self, knots, degree, n, sub):
        self.knots = tuple(Rat(k) for k in knots)
        self.degree = int(degree)
        self.n = int(n)
        self.sub = sub
        self.tag = "m0" if n == 0 else "m%d%s" % (n, sub)
        if (n == 0) != (sub is None):
            raise ValueError("sub-sector tag mismatch")
        self.trig = None
        if sub is not None:
            self.trig = dict(SUB_A)
            if sub == "B":
                self.trig = {k: ("s" if v == "c" else "c")
                             for k, v in SUB_A.items()}
        self.spaces = {
            key: sp.basis(self.knots, self.degree - drop)
            for key, drop in SPLDROP.items()
        }
        self._offsets = {}
        labels = {}
        for deg in DEGREES:
            ls = []
            for leg in LEGS[deg]:
                self._offsets[(deg, leg)] = len(ls)
                ls.extend("%d:%s:%d" % (deg, leg, j)
                          for j in range(len(self.spaces[(deg, leg)])))
            labels[deg] = ls
        self._dmats = {d: sp.derivative_matrix(self.knots, self.degree - j)
                       for j, d in ((0, self.degree), (1, self.degree - 1))}
        diff = {m: _qmat(rows) for m, rows in self._observable_blocks().items()}
        self.complex = CochainComplex(GradedSpace(labels), diff)

    def dim(self, deg, leg=None):
        if leg is None:
            return sum(len(self.spaces[(deg, l)]) for l in LEGS[deg])
        return len(self.spaces[(deg, leg)])

    def offset(self, deg, leg):
        return self._offsets[(deg, leg)]

    def index(self, deg, leg, j):
        return self._offsets[(deg, leg)] + j

    def _observable_blocks(self):
        """Rational differential blocks of the observable complex
        (signs -d, -delta d, -delta)."""
        D = self.degree
        d_top = self._dmats[D]          # S_D -> S_{D-1}
        d_low = self._dmats[D - 1]      # S_{D-1} -> S_{D-2}
        d2 = _rat_matmul(d_low, d_top)  # S_D -> S_{D-2}
        harmonic = self.n == 0
        t = self.trig

        def zeros(r, c):
            return [[Rat(0)] * c for _ in range(r)]

        out = {}
        # degree -2 -> -1:  u |-> (-d_S u, -dt_ u)
        rS, rT = self.dim(-1, "S"), self.dim(-1, "T")
        c = self.dim(-2, "S")
        m = zeros(rS + rT, c)
        if not harmonic:
            s = _dtheta_sign(t[(-2, "S")])
            _put(m, 0, 0, _rat_scale(-s, _rat_eye(c)))
        _put(m, rS, 0, _rat_scale(-1, d_top))
        out[-2] = m
        # degree -1 -> 0 (minus delta d)
        rS, rT = self.dim(0, "S"), self.dim(0, "T")
        cS, cT = self.dim(-1, "S"), self.dim(-1, "T")
        m = zeros(rS + rT, cS + cT)
        _put(m, 0, 0, _rat_scale(-1, d2))
        if not harmonic:
            s_T = _dtheta_sign(t[(-1, "T")])
            s_S = _dtheta_sign(t[(-1, "S")])
            _put(m, 0, cS, _rat_scale(s_T, d_low))
            _put(m, rS, cS, _rat_scale(-1, _rat_eye(cT)))
            _put(m, rS, 0, _rat_scale(-s_S, d_top))
        out[-1] = m
        # degree 0 -> 1 (minus delta)
        r = self.dim(1, "S")
        cS, cT = self.dim(0, "S"), self.dim(0, "T")
        m = zeros(r, cS + cT)
        _put(m, 0, cS, _rat_scale(-1, d_low))
        if not harmonic:
            s_S0 = _dtheta_sign(t[(0, "S")])
            _put(m, 0, 0, _rat_scale(s_S0, _rat_eye(cS)))
        out[0] = m
        return out

    def __repr__(self):
        return "Sector(%s, dims %s)" % (self.tag, self.complex.dims)


def _rat_eye(n):
    return [[Rat(1) if i == j else Rat(0) for j in range(n)] for i in range(n)]


def _rat_scale(c, mat):
    c = Rat(c)
    return [[c * x for x in row] for row in mat]


def _rat_matmul(a, b):
    rows, inner, cols = len(a), len(b), len(b[0]) if b else 0
    out = [[Rat(0)] * cols for _ in range(rows)]
    for i in range(rows):
        for k in range(inner):
            if a[i][k]:
                aik = a[i][k]
                for j in range(cols):
                    if b[k][j]:
                        out[i][j] += aik * b[k][j]
    return out


def _put(dst, r0, c0, block):
    for i, row in enumerate(block):
        for j, x in enumerate(row):
            dst[r0 + i][c0 + j] = x


# -- the observable model ---------------------------------------------------


class ObservableModel:
    """The truncated observable complex of a region, organized by sector."""

    def __init__(self, config, region=None):
        self.config = config
        self.region = region or Region.full()
        self.knots = region_knots(config, self.region)
        self.sectors = [Sector(self.knots, config.degree, 0, None)]
        for n in range(1, config.mode_cutoff + 1):
            self.sectors.append(Sector(self.knots, config.degree, n, "A"))
            self.sectors.append(Sector(self.knots, config.degree, n, "B"))
        self.by_tag = {s.tag: s for s in self.sectors}
        self._assembled = None
        self._offsets = None

    @property
    def mode0(self):
        return self.sectors[0]

    def complex(self):
        if self._assembled is None:
            self._assembled = direct_sum([s.complex for s in self.sectors])
            self._offsets = {}
            for deg in DEGREES:
                pos = 0
                for s in self.sectors:
                    self._offsets[(s.tag, deg)] = pos
                    pos += s.complex.dim(deg)
        return self._assembled

    def offset(self, tag, deg):
        self.complex()
        return self._offsets[(tag, deg)]

    def sector_cohomology(self):
        return {s.tag: cohomology(s.complex) for s in self.sectors}

    def cohomology_dims(self):
        dims = {}
        for rep in self.sector_cohomology().values():
            for n, d in rep.dims.items():
                dims[n] = dims.get(n, 0) + d
        return {n: d for n, d in sorted(dims.items()) if d}

    def basis_form(self, tag, deg, leg, j):
        s = self.by_tag[tag]
        key = (s.n, None if s.n == 0 else s.trig[(deg, leg)], leg)
        w = 0 if s.n == 0 else KWEIGHT[(deg, leg)]
        return ModeForm(FORMDEG[deg], {key: [(w, Rat(1),
                                              s.spaces[(deg, leg)][j])]})

    def form_from_coords(self, tag, deg, coords):
        """The mode-spline form with the given exact coordinates in the
        sector's weighted basis at this complex degree."""
        s = self.by_tag[tag]
        form = ModeForm(FORMDEG[deg], {})
        for leg in LEGS[deg]:
            off = s.offset(deg, leg)
            for j in range(s.dim(deg, leg)):
                c = coords[off + j]
                c = c.re if isinstance(c, QQi) else Rat(c)
                if not c:
                    continue
                key = (s.n, None if s.n == 0 else s.trig[(deg, leg)], leg)
                w = 0 if s.n == 0 else KWEIGHT[(deg, leg)]
                form = form_add(form, ModeForm(FORMDEG[deg], {
                    key: [(w, c, s.spaces[(deg, leg)][j])]}))
        return form

    def __repr__(self):
        return "ObservableModel(%r, %r)" % (self.region, self.config)


def build_observable_complex(region, config):
    """The region's observable complex with its sector decomposition."""
    return ObservableModel(config, region)


# -- mode-spline forms ------------------------------------------------------


class ModeForm:
    """A differential form on the cylinder: per-mode spline coefficients.

    ``comps`` maps ``(n, trig, leg)`` -- with ``trig`` None for the constant
    mode and ``'c'``/``'s'`` otherwise -- to a list of terms ``(wexp, scale,
    spline)``; the coefficient function of that mode/leg is the sum of
    ``scale * (2 pi n)**wexp * spline(t)``.  ``scale`` is an exact rational
    except for theta-localized forms built from float Fourier data, which
    also carry a ``tail_bound`` for their discarded modes."""

    __slots__ = ("k", "comps", "tail_bound")

    def __init__(self, k, comps, tail_bound=0.0):
        self.k = int(k)
        self.comps = {}
        for key, terms in comps.items():
            n, trig, leg = key
            if (n == 0) != (trig is None):
                raise ValueError("constant-mode components carry trig None")
            if leg not in ("S", "T") or (self.k == 0 and leg != "S"):
                raise ValueError("bad leg %r for a %d-form" % (leg, self.k))
            kept = [(int(w), c, f) for (w, c, f) in terms
                    if c and not f.is_zero()]
            if kept:
                self.comps[key] = kept
        self.tail_bound = float(tail_bound)

    def is_zero(self):
        return not self.comps

    def is_exact(self):
        return self.tail_bound == 0.0 and all(
            not isinstance(c, float)
            for terms in self.comps.values() for (_, c, _) in terms)

    def modes(self):
        return sorted({n for (n, _, _) in self.comps})

    def component(self, key):
        """The terms of one mode/leg component."""
        return self.comps.get(key, [])

    def __repr__(self):
        return "ModeForm(k=%d, %d components)" % (self.k, len(self.comps))


def _add_term(comps, key, wexp, scale, f):
    if not scale or f.is_zero():
        return
    terms = comps.setdefault(key, [])
    for i, (w, c, g) in enumerate(terms):
        if w == wexp and g is f:
            terms[i] = (w, c + scale, g)
            return
    terms.append((wexp, scale, f))


def form_add(f1, f2):
    if f1.k != f2.k:
        raise ValueError("form degree mismatch")
    comps = {k: list(v) for k, v in f1.comps.items()}
    for key, terms in f2.comps.items():
        for (w, c, f) in terms:
            _add_term(comps, key, w, c, f)
    return ModeForm(f1.k, comps, f1.tail_bound + f2.tail_bound)


def form_scale(a, f):
    if isinstance(a, QQi):
        if a.im:
            raise ValueError("mode-spline forms are real")
        a = a.re
    comps = {key: [(w, a * c, g) for (w, c, g) in terms]
             for key, terms in f.comps.items()}
    return ModeForm(f.k, comps, abs(float(a)) * f.tail_bound)


def form_sub(f1, f2):
    return form_add(f1, form_scale(Rat(-1), f2))


def zero_form(k):
    return ModeForm(k, {})


def _dtheta_terms(key, terms):
    """Apply d/dtheta to one component; returns (new key, new terms)."""
    n, trig, leg = key
    if n == 0:
        return None
    s = _dtheta_sign(trig)
    other = "s" if trig == "c" else "c"
    return (n, other, leg), [(w + 1, s * c, f) for (w, c, f) in terms]


def _dt_one(f):
    """Time derivative of a term payload: either an exact piecewise
    polynomial or any object with a ``derivative`` method."""
    if isinstance(f, sp.PiecewisePoly):
        return sp.pp_derivative(f)
    return f.derivative()


def _dt_terms(terms):
    return [(w, c, _dt_one(f)) for (w, c, f) in terms]


def op_d(form):
    """d on 0-forms: (d_S u, dt /\\ dt_ u)."""
    if form.k != 0:
        raise ValueError("op_d expects a 0-form")
    comps = {}
    for key, terms in form.comps.items():
        n, trig, _ = key
        flipped = _dtheta_terms(key, terms)
        if flipped:
            (fn, ft, _), nt = flipped
            for (w, c, f) in nt:
                _add_term(comps, (fn, ft, "S"), w, c, f)
        for (w, c, f) in _dt_terms(terms):
            _add_term(comps, (n, trig, "T"), w, c, f)
    return ModeForm(1, comps, form.tail_bound)


def op_delta(form):
    """delta on 1-forms: dt_ alpha_T + delta_S alpha_S (a 0-form)."""
    if form.k != 1:
        raise ValueError("op_delta expects a 1-form")
    comps = {}
    for (n, trig, leg), terms in form.comps.items():
        if leg == "T":
            for (w, c, f) in _dt_terms(terms):
                _add_term(comps, (n, trig, "S"), w, c, f)
        else:
            flipped = _dtheta_terms((n, trig, leg), terms)
            if flipped:
                (fn, ft, _), nt = flipped
                # delta_S (u dtheta) = -du/dtheta
                for (w, c, f) in nt:
                    _add_term(comps, (fn, ft, "S"), w, -c, f)
    return ModeForm(0, comps, form.tail_bound)


def op_deltad(form):
    """delta d on 1-forms, legwise per mode:

    S-leg:  dt_^2 alpha_S - d_S dt_ alpha_T
    T-leg:  delta_S d_S alpha_T - delta_S dt_ alpha_S
    """
    if form.k != 1:
        raise ValueError("op_deltad expects a 1-form")
    comps = {}
    for (n, trig, leg), terms in form.comps.items():
        if leg == "S":
            for (w, c, f) in _dt_terms(_dt_terms(terms)):
                _add_term(comps, (n, trig, "S"), w, c, f)
            flipped = _dtheta_terms((n, trig, leg), _dt_terms(terms))
            if flipped:
                (fn, ft, _), nt = flipped
                # -delta_S dt_ alpha_S = +d/dtheta dt_ alpha_S
                for (w, c, f) in nt:
                    _add_term(comps, (fn, ft, "T"), w, c, f)
        else:
            if n:
                # delta_S d_S v = -d^2/dtheta^2 v = kappa^2 v
                for (w, c, f) in terms:
                    _add_term(comps, (n, trig, "T"), w + 2, c, f)
            flipped = _dtheta_terms((n, trig, leg), _dt_terms(terms))
            if flipped:
                (fn, ft, _), nt = flipped
                # -d_S dt_ alpha_T on the S-leg
                for (w, c, f) in nt:
                    _add_term(comps, (fn, ft, "S"), w, -c, f)
    return ModeForm(1, comps, form.tail_bound)


def op_box(form):
    """The wave operator dt_^2 + kappa^2, legwise per mode."""
    comps = {}
    for (n, trig, leg), terms in form.comps.items():
        for (w, c, f) in _dt_terms(_dt_terms(terms)):
            _add_term(comps, (n, trig, leg), w, c, f)
        if n:
            for (w, c, f) in terms:
                _add_term(comps, (n, trig, leg), w + 2, c, f)
    return ModeForm(form.k, comps, form.tail_bound)


def observable_differential(m, form):
    """The observable-complex differential applied to a degree-``m`` form;
    returns the degree ``m + 1`` form (zero in the top degree)."""
    if m == -2:
        return form_scale(Rat(-1), op_d(form))
    if m == -1:
        return form_scale(Rat(-1), op_deltad(form))
    if m == 0:
        return form_scale(Rat(-1), op_delta(form))
    return zero_form(0)


class ObsCochain:
    """A form together with its observable-complex degree."""

    __slots__ = ("m", "form")

    def __init__(self, m, form):
        if FORMDEG[m] != form.k:
            raise ValueError("degree %d holds %d-forms" % (m, FORMDEG[m]))
        self.m = int(m)
        self.form = form

    def d(self):
        if self.m >= 1:
            return None
        return ObsCochain(self.m + 1, observable_differential(self.m, self.form))

    def __repr__(self):
        return "ObsCochain(m=%d, %r)" % (self.m, self.form)


# -- solution complexes -----------------------------------------------------

SOL_DEGREES = (-1, 0, 1, 2)


def build_solution_complex(region, config, compact=False):
    """The solution complex of the region.

    With ``compact=True``: the compactly supported variant on spline spaces,
    all modes, degrees -1..2; it is degreewise the observable complex shifted
    by one, with the differential negated.

    With ``compact=False``: the constant-mode sector with the affine span
    {1, t} adjoined to every leg, which holds the images of the difference
    Green operator; returned as ``(complex, offsets)`` where ``offsets[(deg,
    leg)]`` locates the leg block (each block starts with the two affine
    basis vectors, then the splines).
    """
    model = ObservableModel(config, region)
    if compact:
        out = []
        for s in model.sectors:
            labels = {deg + 1: ["sol%d:%s" % (deg + 1, l)
                                for l in s.complex.basis_labels(deg)]
                      for deg in DEGREES}
            diff = {deg + 1: _neg(s.complex.d(deg)) for deg in (-2, -1, 0)}
            out.append(CochainComplex(GradedSpace(labels), diff))
        return direct_sum(out)

    s = model.mode0
    dims = {}
    offsets = {}
    labels = {}
    for deg in DEGREES:
        sdeg = deg + 1
        ls = []
        for leg in LEGS[deg]:
            offsets[(sdeg, leg)] = len(ls)
            ls.append("%d:%s:one" % (sdeg, leg))
            ls.append("%d:%s:t" % (sdeg, leg))
            ls.extend("%d:%s:%d" % (sdeg, leg, j)
                      for j in range(s.dim(deg, leg)))
        labels[sdeg] = ls
        dims[sdeg] = len(ls)

    D = config.degree
    d_top = s._dmats[D]
    d_low = s._dmats[D - 1]
    d2 = _rat_matmul(d_low, d_top)

    def zeros(r, c):
        return [[Rat(0)] * c for _ in range(r)]

    naff = 2
    diff = {}
    # degree -1 -> 0: u |-> (0, dt_ u)
    r, c = dims[0], dims[-1]
    m = zeros(r, c)
    rT = offsets[(0, "T")]
    m[rT + 0][1] = Rat(1)  # dt_ t = 1
    _put(m, rT + naff, naff, d_top)
    diff[-1] = m
    # degree 0 -> 1: (u, v) |-> (dt_^2 u, 0)
    r, c = dims[1], dims[0]
    m = zeros(r, c)
    _put(m, naff, naff, d2)
    diff[0] = m
    # degree 1 -> 2: (u, v) |-> dt_ v
    r, c = dims[2], dims[1]
    m = zeros(r, c)
    cT = offsets[(1, "T")]
    m[0][cT + 1] = Rat(1)
    _put(m, naff, cT + naff, d_low)
    diff[1] = m

    cx = CochainComplex(GradedSpace(labels),
                        {n: _qmat(rows) for n, rows in diff.items()})
    return cx, offsets
