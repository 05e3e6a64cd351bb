"""The initial-data complex on the circle and the data map at t = 0.

A solution cochain is reduced to its Cauchy data on the slice ``t = 0``:
degreewise the pullback, and in the middle degree additionally the Hodge
contraction of the field strength,

    degree -1 (0-form u):            u(0)
    degree  0 (u dtheta + v dt):     ( u(0),  u'(0) - v_theta(0) )
    degree +1 (u dtheta + v dt):     v(0)

per angular mode and cos/sin sub-sector.  The slots carry the kappa weights
0 / 1, 1 / 2, matching the weighted mode bases, so the data differentials
are the rational matrices

    d^-1 = (s_c, 0)^T        d^0 = (0, s_s)

with ``s_c``/``s_s`` the theta-derivative signs of the sub-sector's degree
-2 and -1 circle legs (both differentials vanish on the constant mode).
The composite of the data map with the trivialization is a quasi-
isomorphism from the observable complex: exactly on the constant mode, and
by acyclicity of both sides plus a numeric chain-map residual on the
oscillator sectors.
"""

from __future__ import annotations

from .. import linalg as la
from .._ratback import Rat
from ..complexes import (
    CochainComplex,
    CochainMap,
    GradedSpace,
    cohomology,
    direct_sum,
)
from ..scalar import QQi
from .cylinder import LEGS, _dtheta_sign, _qmat
from .green import TWO_PI, trivialization

DATA_DEGREES = (-1, 0, 1)
# (degree, slot) -> kappa weight of the stored coordinate
DATA_WEIGHT = {(-1, 0): 0, (0, 0): 1, (0, 1): 1, (1, 0): 2}
# (degree, slot) -> the observable (degree, leg) whose trig pattern the
# slot inherits
DATA_TRIG_KEY = {(-1, 0): (-2, "S"), (0, 0): (-1, "S"),
                 (0, 1): (-1, "S"), (1, 0): (0, "T")}


def sector_data_complex(sector):
    """The initial-data block of one mode sector."""
    labels = {-1: ["-1:0"], 0: ["0:0", "0:1"], 1: ["1:0"]}
    if sector.n == 0:
        diff = {-1: _qmat([[0], [0]]), 0: _qmat([[0, 0]])}
    else:
        s_c = _dtheta_sign(sector.trig[(-2, "S")])
        s_s = _dtheta_sign(sector.trig[(-1, "S")])
        diff = {-1: _qmat([[s_c], [0]]), 0: _qmat([[0, s_s]])}
    return CochainComplex(GradedSpace(labels), diff)


class DataModel:
    """The assembled initial-data complex of a truncated model, organized
    by the same sectors as the observable complex."""

    def __init__(self, model):
        self.model = model
        self.by_tag = {s.tag: sector_data_complex(s) for s in model.sectors}
        self.complexes = [self.by_tag[s.tag] for s in model.sectors]
        self._assembled = None
        self._offsets = None

    def complex(self):
        if self._assembled is None:
            self._assembled = direct_sum(self.complexes)
            self._offsets = {}
            for deg in DATA_DEGREES:
                pos = 0
                for s, c in zip(self.model.sectors, self.complexes):
                    self._offsets[(s.tag, deg)] = pos
                    pos += c.dim(deg)
        return self._assembled

    def offset(self, tag, deg):
        self.complex()
        return self._offsets[(tag, deg)]

    def cohomology_dims(self):
        dims = {}
        for c in self.complexes:
            for n, d in cohomology(c).dims.items():
                dims[n] = dims.get(n, 0) + d
        return {n: d for n, d in sorted(dims.items()) if d}


def build_data_complex(model):
    return DataModel(model)


def _component_value(terms, kappa, t=0.0, exact=False):
    """Evaluate a weighted time-function component at a time."""
    if exact:
        v = Rat(0)
        for (w, c, fn) in terms:
            if w:
                raise ValueError("constant-mode terms carry weight zero")
            x = fn.eval_exact(t)
            if x is None or isinstance(c, float):
                return None
            v += Rat(c) * x
        return v
    v = 0.0
    for (w, c, fn) in terms:
        v += float(c) * (kappa ** w if w else 1.0) * fn(t)
    return v


def data_of_solution(sector, solform, m, exact=False):
    """The data slots of a solution form of degree ``m`` restricted to one
    sector; float values, or exact rationals for the constant mode."""
    n = sector.n
    kappa = TWO_PI * n
    src = m - 1  # observable degree whose spaces the solution degree carries

    def comp(leg):
        trig = None if n == 0 else sector.trig[(src, leg)]
        return solform.comps.get((n, trig, leg), [])

    def value(terms, t=0.0):
        if not terms:
            return Rat(0) if exact else 0.0
        return _component_value(terms, kappa, t, exact)

    def dt_value(terms):
        return value([(w, c, fn.derivative()) for (w, c, fn) in terms])

    def norm(actual, weight):
        """Divide out the slot's kappa weight (a no-op on the constant
        mode and in the exact branch, which is constant-mode only)."""
        if actual is None or exact or n == 0:
            return actual
        return actual / kappa ** weight

    if m == -1:
        return [norm(value(comp("S")), 0)]
    if m == 0:
        u0 = value(comp("S"))
        slope = dt_value(comp("S"))
        if n and slope is not None:
            # subtract the theta derivative of the time leg; the trig flip
            # lands the term on the slot's own cos/sin pattern
            s_v = _dtheta_sign(sector.trig[(src, "T")])
            v0 = value(comp("T"))
            slope = None if v0 is None else slope - s_v * kappa * v0
        return [norm(u0, 1), norm(slope, 1)]
    if m == 1:
        return [norm(value(comp("T")), 2)]
    return []


def data_lambda_columns(model, tag, m, exact=False):
    """The data-of-trivialization images of the sector's degree-``m``
    observable basis, as columns of slot coordinates."""
    sector = model.by_tag[tag]
    cols = []
    for j in range(sector.complex.dim(m)):
        for leg in LEGS[m]:
            off = sector.offset(m, leg)
            if off <= j < off + sector.dim(m, leg):
                form = model.basis_form(tag, m, leg, j - off)
                break
        lam = trivialization(m, form, "difference")
        cols.append(data_of_solution(sector, lam, m, exact=exact))
    return cols


def mode0_data_lambda_map(model, data_model):
    """The composite data map after trivialization on the constant mode, as
    an exact cochain map from the mode-0 observable block to the mode-0
    data block."""
    src = model.mode0.complex
    tgt = data_model.by_tag["m0"]
    components = {}
    for m in DATA_DEGREES:
        cols = data_lambda_columns(model, "m0", m, exact=True)
        rows = tgt.dim(m)
        mat = la.zeros(rows, len(cols))
        for j, col in enumerate(cols):
            for i, v in enumerate(col):
                if v is None:
                    raise ValueError("constant-mode data map must be exact")
                mat[i][j] = QQi(v)
        components[m] = mat
    return CochainMap(src, tgt, components)


def sector_chain_defect(model, data_model, tag):
    """The worst residual of the chain-map squares of data-after-
    trivialization on one sector's basis (float; zero sectors give 0)."""
    sector = model.by_tag[tag]
    dcx = data_model.by_tag[tag]
    worst = 0.0
    for m in (-2, -1, 0):
        dmat = sector.complex.d(m)
        cols_src = (data_lambda_columns(model, tag, m)
                    if m in DATA_DEGREES else
                    [[0.0] * 0 for _ in range(sector.complex.dim(m))])
        cols_dst = data_lambda_columns(model, tag, m + 1)
        ddata = dcx.d(m) if m in (-1, 0) else None
        for j in range(sector.complex.dim(m)):
            # data(Lambda(d phi)) assembled from the differential column
            via_l = [0.0] * dcx.dim(m + 1)
            for i in range(sector.complex.dim(m + 1)):
                c = dmat[i][j]
                if c.re or c.im:
                    for r in range(dcx.dim(m + 1)):
                        via_l[r] += float(c.re) * cols_dst[i][r]
            # d_data(data(Lambda(phi)))
            via_d = [0.0] * dcx.dim(m + 1)
            if ddata is not None:
                col = cols_src[j]
                for r in range(dcx.dim(m + 1)):
                    for sidx in range(dcx.dim(m)):
                        e = ddata[r][sidx]
                        if e.re or e.im:
                            via_d[r] += float(e.re) * col[sidx]
            worst = max(worst,
                        max((abs(a - b) for a, b in zip(via_l, via_d)),
                            default=0.0))
    return worst
