"""Verification suites: homotopy identities, data comparison, time-slice
inclusions, and causality probes.

The time-slice check embeds the observable complex of a time slab into the
full cylinder's: slab splines are full-grid basis splines, so the inclusion
is an exact 0/1 cochain map per mode sector, and it is a quasi-isomorphism
(constant mode carries all cohomology; oscillator sectors are acyclic on
both sides).

The causality check pairs generators supported in two causal diamonds
through the Poisson structure.  A diamond generator is a time bump on the
inscribed box times a smooth periodic angular bump, expanded into angular
modes up to a cutoff; the discarded tail is bounded rigorously from the
total variation of the angular profile's top derivative.
"""

from __future__ import annotations

import math

from .. import linalg as la
from .. import splines as sp
from .._ratback import Rat, rat
from ..complexes import CochainMap, cohomology, is_quasi_iso
from .cylinder import (
    LEGS,
    ModeForm,
    ObsCochain,
    Region,
    build_observable_complex,
    region_knots,
)
from .data import (
    DATA_DEGREES,
    build_data_complex,
    mode0_data_lambda_map,
    sector_chain_defect,
)
from .green import homotopy_defect, poisson
from ..scalar import QQi

TWO_PI = 2 * math.pi


# -- trivialization homotopy ------------------------------------------------


def _form_residual(form, times=None):
    """Sampled magnitude of a (defect) form: the largest absolute component
    value over a time grid."""
    if times is None:
        times = [j / 8.0 - 3.0 for j in range(49)]
    worst = 0.0
    for (n, _, _), terms in form.comps.items():
        kap = TWO_PI * n
        for t in times:
            v = 0.0
            for (w, c, fn) in terms:
                v += float(c) * (kap ** w if w else 1.0) * float(fn(t))
            worst = max(worst, abs(v))
    return worst


def homotopy_report(model, kinds=("retarded", "advanced", "difference")):
    """Worst residual of the defining identity of each trivialization over
    every basis form of every sector.  For the retarded and advanced kinds
    the identity is the contracting homotopy equation; for the difference
    it is the chain-map equation."""
    from .green import chain_map_defect

    out = {}
    for kind in kinds:
        worst = 0.0
        for s in model.sectors:
            for m in sorted(LEGS):
                for leg in LEGS[m]:
                    for j in range(s.dim(m, leg)):
                        form = model.basis_form(s.tag, m, leg, j)
                        phi = ObsCochain(m, form)
                        if kind == "difference":
                            defect = chain_map_defect(phi)
                        else:
                            defect = homotopy_defect(phi, kind)
                        worst = max(worst, _form_residual(defect))
        out[kind] = worst
    return out


# -- data comparison --------------------------------------------------------


def data_comparison_report(model):
    """The composite of the data map with the trivialization is a
    quasi-isomorphism: exactly on the constant mode, and on each oscillator
    sector by acyclicity of both sides plus a numeric chain residual."""
    data_model = build_data_complex(model)
    f0 = mode0_data_lambda_map(model, data_model)
    report = {
        "mode0_quasi_iso": is_quasi_iso(f0),
        "observable_cohomology": model.cohomology_dims(),
        "data_cohomology": data_model.cohomology_dims(),
        "sector_defects": {},
        "oscillator_acyclic": True,
    }
    for s in model.sectors:
        if s.tag == "m0":
            continue
        if any(cohomology(data_model.by_tag[s.tag]).dims.values()):
            report["oscillator_acyclic"] = False
        if any(cohomology(s.complex).dims.values()):
            report["oscillator_acyclic"] = False
        report["sector_defects"][s.tag] = sector_chain_defect(
            model, data_model, s.tag)
    report["ok"] = (
        report["mode0_quasi_iso"]
        and report["oscillator_acyclic"]
        and report["observable_cohomology"] == report["data_cohomology"]
        and all(v < 1e-9 for v in report["sector_defects"].values())
    )
    return report


# -- two-point function -----------------------------------------------------


def _basis_forms(model, m):
    out = []
    for s in model.sectors:
        for leg in LEGS[m]:
            for j in range(s.dim(m, leg)):
                out.append(model.basis_form(s.tag, m, leg, j))
    return out


def two_point_condition_report(model, a_hook=None):
    """Residuals of the six conditions making the two-point pairing a
    cochain map, maximized over every basis pair of matching bidegree.
    The two middle ranges are empty for a 1-form field and report zero."""
    from .cylinder import op_d, op_delta, op_deltad
    from .twopoint import w_pairing

    def deltad0(f):
        return op_delta(op_d(f))

    forms = {m: _basis_forms(model, m) for m in sorted(LEGS)}
    out = {}
    worst = 0.0
    for a in forms[-2]:
        for b in forms[1]:
            worst = max(worst, abs(w_pairing(deltad0(a), b, a_hook).value))
    out["m=-1"] = worst
    out["m in (-p, 0)"] = 0.0
    worst = 0.0
    for a in forms[-1]:
        for b in forms[0]:
            v = (w_pairing(op_deltad(a), b, a_hook).value
                 + w_pairing(op_delta(a), op_delta(b), a_hook).value)
            worst = max(worst, abs(v))
    out["m=0"] = worst
    worst = 0.0
    for a in forms[0]:
        for b in forms[-1]:
            v = (w_pairing(op_delta(a), op_delta(b), a_hook).value
                 + w_pairing(a, op_deltad(b), a_hook).value)
            worst = max(worst, abs(v))
    out["m=1"] = worst
    out["m in (1, p+1)"] = 0.0
    worst = 0.0
    for a in forms[1]:
        for b in forms[-2]:
            worst = max(worst, abs(w_pairing(a, deltad0(b), a_hook).value))
    out["m=p+1"] = worst
    return out


def bisolution_report(model, a_hook=None):
    """Worst residual of the wave-operator bisolution property of the
    positive-frequency pairing over basis pairs of equal form degree."""
    from .twopoint import bisolution_defect

    worst = 0.0
    for m1 in sorted(LEGS):
        for m2 in sorted(LEGS):
            f1s = _basis_forms(model, m1)
            f2s = _basis_forms(model, m2)
            if not f1s or not f2s or f1s[0].k != f2s[0].k:
                continue
            for a in f1s:
                for b in f2s:
                    l, r = bisolution_defect(a, b, a_hook)
                    worst = max(worst, abs(l), abs(r))
    return worst


def antisymmetry_report(model_cochains, a_hook=None):
    """Worst residual of (antisymmetric part of the two-point pairing)
    minus i times the Poisson pairing over named generator cochains."""
    from .twopoint import antisymmetry_defect

    worst = 0.0
    for x, cx in model_cochains.items():
        for y, cy in model_cochains.items():
            if cx.m + cy.m != 0:
                continue
            worst = max(worst, abs(antisymmetry_defect(cx, cy, a_hook)))
    return worst


# -- time slice -------------------------------------------------------------


def slab_inclusion_maps(config, region):
    """The exact per-sector inclusion cochain maps of a slab's observable
    complex into the full cylinder's."""
    full = build_observable_complex(Region.full(), config)
    slab = build_observable_complex(region, config)
    offset = config.knots.index(region_knots(config, region)[0])
    maps = {}
    for s_slab, s_full in zip(slab.sectors, full.sectors):
        if s_slab.tag != s_full.tag:
            raise ValueError("sector tags out of step")
        comps = {}
        for m in sorted(LEGS):
            mat = la.zeros(s_full.complex.dim(m), s_slab.complex.dim(m))
            for leg in LEGS[m]:
                r0 = s_full.offset(m, leg) + offset
                c0 = s_slab.offset(m, leg)
                for j in range(s_slab.dim(m, leg)):
                    mat[r0 + j][c0 + j] = QQi(1)
            comps[m] = mat
        maps[s_slab.tag] = CochainMap(s_slab.complex, s_full.complex, comps)
    return maps, slab, full


def timeslice_check(config, region):
    """Quasi-isomorphism of the slab inclusion, sector by sector."""
    maps, slab, full = slab_inclusion_maps(config, region)
    sector_qi = {tag: is_quasi_iso(f) for tag, f in maps.items()}
    report = {
        "sector_quasi_iso": sector_qi,
        "slab_cohomology": slab.cohomology_dims(),
        "full_cohomology": full.cohomology_dims(),
    }
    report["ok"] = (all(sector_qi.values())
                    and report["slab_cohomology"] == report["full_cohomology"])
    return report


# -- causal diamonds --------------------------------------------------------


def _theta_coefficients(chi, n_modes):
    """Fourier data of a periodic angular profile supported in one period:
    (mean, {n: (cos coeff, sin coeff)})."""
    mean = float(sp.pp_moment(chi, 0))
    coeffs = {}
    for n in range(1, n_modes + 1):
        c, s = sp.trig_moments(chi, TWO_PI * n)
        coeffs[n] = (2.0 * c, 2.0 * s)
    return mean, coeffs


def _variation_bound(chi, degree):
    """Total variation of the profile's top derivative: |a_n| of either
    trig coefficient is at most 2 V / (2 pi n)^(degree + 1)."""
    d = chi
    for _ in range(degree):
        d = sp.pp_derivative(d)
    # d is piecewise constant; sum the jumps (including the two ends)
    vals = [float(p[0]) if p else 0.0 for p in d.pieces]
    v = abs(vals[0]) + abs(vals[-1])
    for x, y in zip(vals, vals[1:]):
        v += abs(y - x)
    return v


class DiamondGenerators:
    """Localized generators of every degree for one causal diamond, as
    mode-expanded observable cochains with rigorous tail bounds."""

    def __init__(self, region, n_modes=40, time_degree=3, theta_degree=5,
                 time_points=9, theta_points=9):
        if region.kind != "diamond":
            raise ValueError("causal generators need a diamond region")
        self.region = region
        self.n_modes = n_modes
        a = region.box_t
        tknots = [-a + 2 * a * rat(j, time_points - 1)
                  for j in range(time_points)]
        b = region.box_theta
        hknots = [-b + 2 * b * rat(j, theta_points - 1)
                  for j in range(theta_points)]
        f1 = sp.pp_translate(
            sp.combine(sp.basis(tknots, time_degree),
                       sp.bump(tknots, time_degree)), region.t0)
        f2 = sp.pp_translate(
            sp.combine(sp.basis(tknots, time_degree - 1),
                       sp.bump(tknots, time_degree - 1)), region.t0)
        chi = sp.pp_translate(
            sp.combine(sp.basis(hknots, theta_degree),
                       sp.bump(hknots, theta_degree)),
            region.theta0)
        self.chi = chi
        self.mean, self.coeffs = _theta_coefficients(chi, n_modes)
        self.variation = _variation_bound(chi, theta_degree)
        self.theta_degree = theta_degree
        self.time_bound = max(
            float(sp.pp_moment(f, 0)) + 2.0 * _abs_moment(f)
            for f in (f1, f2, sp.pp_derivative(f1)))
        self.cochains = {
            "e_dagger": self._localized(-1, "T", f1),
            "a1": self._localized(0, "S", f2),
            "a2": self._localized(0, "S", sp.pp_scale(-1,
                                                      sp.pp_derivative(f1))),
            "e": self._localized(1, "S", f2),
        }

    def coefficient_bound(self, n):
        return 2.0 * self.variation / (TWO_PI * n) ** (self.theta_degree + 1)

    def _localized(self, m, leg, f):
        from .cylinder import FORMDEG

        comps = {(0, None, leg): [(0, sp.pp_moment(self.chi, 0), f)]}
        for n, (c, s) in self.coeffs.items():
            if c:
                comps[(n, "c", leg)] = [(0, c, f)]
            if s:
                comps[(n, "s", leg)] = [(0, s, f)]
        form = ModeForm(FORMDEG[m], comps)
        return ObsCochain(m, form)


def _abs_moment(f):
    """An upper bound on the integral of |f| (crude: sum of per-piece
    coefficient magnitudes times interval lengths)."""
    total = 0.0
    for i, p in enumerate(f.pieces):
        width = float(f.breaks[i + 1] - f.breaks[i])
        scale = max(abs(float(f.breaks[i])), abs(float(f.breaks[i + 1])))
        total += width * sum(abs(float(c)) * scale ** k
                             for k, c in enumerate(p))
    return total


def pairing_tail_bound(g1, g2):
    """A rigorous bound on the total Poisson pairing carried by angular
    modes above the cutoff.  Each mode contributes at most the product of
    the two angular coefficient bounds times a time-profile constant and a
    kappa factor of at most kappa^2 x (1/kappa) from the operators in the
    pairing; the resulting series is summed by an integral estimate."""
    n0 = min(g1.n_modes, g2.n_modes) + 1
    power = g1.theta_degree + g2.theta_degree + 2 - 1  # minus the kappa net
    const = (4.0 * g1.variation * g2.variation
             * g1.time_bound * g2.time_bound
             / TWO_PI ** (g1.theta_degree + g2.theta_degree + 2))
    # sum_{n >= n0} n^{-power} <= n0^{-power} + integral
    tail = n0 ** (-power) + n0 ** (1 - power) / (power - 1)
    return const * tail * TWO_PI


def causality_check(region1, region2, n_modes=40):
    """All Poisson pairings between the localized generators of two
    diamonds, with the worst magnitude, per-pair values, and the rigorous
    mode-truncation error bound."""
    g1 = DiamondGenerators(region1, n_modes)
    g2 = DiamondGenerators(region2, n_modes)
    tail = pairing_tail_bound(g1, g2)
    pairs = {}
    worst = 0.0
    for x, cx in g1.cochains.items():
        for y, cy in g2.cochains.items():
            if cx.m + cy.m != 0:
                continue
            v = poisson(cx, cy).value
            pairs[(x, y)] = v
            worst = max(worst, abs(v))
    return {"pairings": pairs, "max_pairing": worst, "tail_bound": tail,
            "n_modes": n_modes}
