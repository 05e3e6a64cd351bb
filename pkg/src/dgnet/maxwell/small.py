"""The four-generator model of the gauge field on the cylinder.

The complex ``L`` has basis ``e_dagger`` (degree -1), ``a1, a2`` (degree 0),
``e`` (degree 1) and zero differential; it computes the cohomology of the
truncated observable complex.  The inclusion ``c`` sends the generators to
constant-mode harmonic representatives built from two even unit-mass bump
profiles,

    e_dagger -> f1 dt        a1 -> f2 dtheta
    a2 -> -f1' dtheta        e  -> f3        (f3 = f2),

and the projection ``c_tilde`` reads off zeroth/first time moments of the
constant-mode legs.  ``c_tilde . c = id`` holds exactly, both maps are
quasi-isomorphisms, and the Poisson pairing transfers along ``c`` to the
integer table ``tau(e, e_dagger) = tau(a2, a1) = 1`` (mixed pairs zero),
which is the relation set of the CCR algebra ``A``.

Two profiles are used instead of one because the spline space of a degree
drops under time differentiation: ``f1`` lives in the degree ``D-1`` space
(so that ``f1'`` and ``f1 dt`` are well-typed) and ``f2`` in the degree
``D-2`` space shared by the degree 0 and 1 columns.  Both are even with
``integral f = 1``, so all moment conditions coincide with the one-profile
description.
"""

from __future__ import annotations

from .. import linalg as la
from .. import splines as sp
from .._ratback import Rat
from ..complexes import (
    CochainComplex,
    CochainMap,
    GradedSpace,
    cohomology,
    compose,
    identity_map,
    is_quasi_iso,
)
from ..freealg import CCRRelationSet, GeneratorSpec, PresentedDGA
from ..scalar import QQi
from .cylinder import CylinderConfig, ModeForm, ObsCochain, Region, build_observable_complex
from .green import poisson

GENERATOR_DEGREES = {"e_dagger": -1, "a1": 0, "a2": 0, "e": 1}
GENERATOR_ORDER = ("e_dagger", "a1", "a2", "e")
TAU_TABLE = {("e", "e_dagger"): 1, ("a2", "a1"): 1}


def harmonic_complex():
    """The complex ``L``: four generators, zero differential."""
    return CochainComplex(
        GradedSpace({-1: ["e_dagger"], 0: ["a1", "a2"], 1: ["e"]}), {})


def ccr_algebra(word_cutoff=6):
    """The CCR algebra ``A`` presented on the four generators with the
    transferred Poisson table; ``e`` is imaginary under the involution."""
    gens = [GeneratorSpec(name, GENERATOR_DEGREES[name], {})
            for name in GENERATOR_ORDER]
    return PresentedDGA(gens, tau=dict(TAU_TABLE), word_cutoff=word_cutoff,
                        star_table={"e": ("e", -1)})


class SmallModel:
    """The truncated cylinder model together with ``L``, ``c``,
    ``c_tilde``, the generator cochains, and the CCR algebra."""

    def __init__(self, config=None, word_cutoff=6):
        self.config = config or CylinderConfig()
        self.model = build_observable_complex(Region.full(), self.config)
        self.L = harmonic_complex()
        self.algebra = ccr_algebra(word_cutoff)
        knots, D = self.model.knots, self.config.degree
        self.f1 = sp.combine(sp.basis(knots, D - 1), sp.bump(knots, D - 1))
        self.f2 = sp.combine(sp.basis(knots, D - 2), sp.bump(knots, D - 2))
        self.f3 = self.f2
        self.profiles = {"f1": self.f1, "f2": self.f2, "f3": self.f3}
        self.c = self._build_c()
        self.c_tilde = self._build_c_tilde()
        self.cochains = {
            "e_dagger": ObsCochain(-1, ModeForm(1, {
                (0, None, "T"): [(0, Rat(1), self.f1)]})),
            "a1": ObsCochain(0, ModeForm(1, {
                (0, None, "S"): [(0, Rat(1), self.f2)]})),
            "a2": ObsCochain(0, ModeForm(1, {
                (0, None, "S"): [(0, Rat(-1), sp.pp_derivative(self.f1))]})),
            "e": ObsCochain(1, ModeForm(0, {
                (0, None, "S"): [(0, Rat(1), self.f3)]})),
        }

    def _mode0_column(self, deg, leg, coords):
        """A column of the assembled complex supported on the given leg of
        the constant-mode sector."""
        full = self.model.complex()
        s = self.model.mode0
        col = [[QQi(0)] for _ in range(full.dim(deg))]
        base = self.model.offset("m0", deg) + s.offset(deg, leg)
        for j, c in enumerate(coords):
            col[base + j][0] = QQi(Rat(c))
        return col

    def _build_c(self):
        knots, D = self.model.knots, self.config.degree
        f1c = sp.bump(knots, D - 1)
        f2c = sp.bump(knots, D - 2)
        dmat = sp.derivative_matrix(knots, D - 1)
        f1pc = [sum(dmat[i][j] * f1c[j] for j in range(len(f1c)))
                for i in range(len(dmat))]
        cols = {
            -1: [self._mode0_column(-1, "T", f1c)],
            0: [self._mode0_column(0, "S", f2c),
                self._mode0_column(0, "S", [-x for x in f1pc])],
            1: [self._mode0_column(1, "S", f2c)],
        }
        components = {
            deg: la.hstack(*[c for c in colset]) if len(colset) > 1
            else colset[0]
            for deg, colset in cols.items()
        }
        return CochainMap(self.L, self.model.complex(), components)

    def _mode0_moment_row(self, deg, leg, k):
        knots, D = self.model.knots, self.config.degree
        s = self.model.mode0
        full = self.model.complex()
        spdeg = self.config.spline_degree(deg, leg)
        mv = sp.moment_vector(knots, spdeg, k)
        row = [QQi(0)] * full.dim(deg)
        base = self.model.offset("m0", deg) + s.offset(deg, leg)
        for j, c in enumerate(mv):
            row[base + j] = QQi(Rat(c))
        return row

    def _build_c_tilde(self):
        components = {
            -1: [self._mode0_moment_row(-1, "T", 0)],
            0: [self._mode0_moment_row(0, "S", 0),
                self._mode0_moment_row(0, "S", 1)],
            1: [self._mode0_moment_row(1, "S", 0)],
        }
        return CochainMap(self.model.complex(), self.L, components)

    # -- checks ------------------------------------------------------------

    def retraction_is_identity(self):
        """Exact ``c_tilde . c = id`` on ``L``."""
        comp = compose(self.c_tilde, self.c)
        idm = identity_map(self.L)
        return all(la.eq(comp.f(n), idm.f(n)) for n in self.L.degrees())

    def sectorwise_quasi_iso(self):
        """``c`` is a quasi-isomorphism: its constant-mode block is one and
        every oscillator sector is acyclic (so the zero component into it
        is one as well)."""
        coh = self.model.sector_cohomology()
        for tag, rep in coh.items():
            if tag != "m0" and any(rep.dims.values()):
                return False
        s = self.model.mode0
        comps = {}
        for deg in self.L.degrees():
            base = self.model.offset("m0", deg)
            dim0 = s.complex.dim(deg)
            comps[deg] = [[self.c.f(deg)[base + i][j]
                           for j in range(self.L.dim(deg))]
                          for i in range(dim0)]
        c0 = CochainMap(self.L, s.complex, comps)
        return is_quasi_iso(c0)

    def cohomology_retraction(self):
        """``H(c) . H(c_tilde) = id`` on the cohomology of the truncated
        complex (so both maps identify the cohomologies)."""
        full = self.model.complex()
        rep = cohomology(full)
        for n in self.L.degrees():
            reps = rep.representatives.get(n)
            if not reps:
                return False
            # project each cohomology generator down and back up: the round
            # trip must fix the class, so the difference is a coboundary
            dn = full.d(n - 1) if full.dim(n - 1) else None
            for col in reps:
                down = la.matvec(self.c_tilde.f(n), col)
                back = la.matvec(self.c.f(n), down)
                diff = [[a - b] for a, b in zip(back, col)]
                if all(not x[0] for x in diff):
                    continue
                if dn is None or la.solve(dn, diff) is None:
                    return False
        return True

    def tau_value(self, name1, name2):
        return poisson(self.cochains[name1], self.cochains[name2])

    def tau_table(self):
        """The exact transferred Poisson table on all generator pairs."""
        out = {}
        for x in GENERATOR_ORDER:
            for y in GENERATOR_ORDER:
                out[(x, y)] = self.tau_value(x, y).exact
        return out

    def tau_matches_relations(self):
        """The transferred table coincides with the graded-antisymmetric
        completion of the CCR relation set."""
        rel = CCRRelationSet(dict(TAU_TABLE), GENERATOR_DEGREES)
        for (x, y), v in self.tau_table().items():
            if v is None or v != rel.tau(x, y):
                return False
        return True


def small_model(config=None, word_cutoff=6):
    return SmallModel(config, word_cutoff)
