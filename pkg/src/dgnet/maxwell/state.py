"""The quantized observable algebra, quasi-free state, and GNS module.

The global algebra is generated by a copy of the four harmonic generators
for each region of a nested family (two slabs inside the full cylinder),
plus, for each adjacent pair of regions, four connector generators one
degree lower whose differentials are the corresponding generator
differences.  The underlying observable cochains of the connectors are
(double) antiderivatives of profile differences, compact because equal-name
profiles share their zeroth and first moments; this makes same-name
generators of different regions cohomologous, so the generator complex has
the cohomology of the four-generator model and the name-preserving morphism
from it is a weak equivalence.

The quasi-free state is defined on tensor words by the pair-partition sum
with Koszul signs, with the exact two-point table computed from the
underlying cochains.  Its GNS radical is the exact nullspace of the Gram
pairing ``(b, a) -> omega(b* a)`` between PBW monomials of opposite
degrees; the GNS module is the cyclic module presented by those relations.
"""

from __future__ import annotations

from .. import linalg as la
from .. import splines as sp
from .._ratback import Rat, rat
from ..freealg import (
    DGAMorphism,
    GeneratorSpec,
    NCElement,
    PresentedDGA,
    pbw_monomials,
    star,
)
from ..nets import Net, const_rep, poset_site
from ..modules import LeftModule
from ..scalar import QQi, ZERO
from .cylinder import ModeForm, ObsCochain, Region, region_knots
from .green import poisson
from .twopoint import two_point

BASE_DEGREES = {"edag": -1, "a1": 0, "a2": 0, "e": 1}
BASE_ORDER = ("edag", "a1", "a2", "e")
DEFAULT_REGIONS = (
    ("U0", Region.slab(rat(-7, 8), rat(7, 8))),
    ("U1", Region.slab(rat(-11, 8), rat(11, 8))),
    ("M", Region.full()),
)


def _mode0(m, leg, pp, k):
    return ObsCochain(m, ModeForm(k, {(0, None, leg): [(0, Rat(1), pp)]}))


def _region_profiles(config, region):
    """The two even unit-mass bump profiles of a region's knot grid."""
    knots = region_knots(config, region)
    D = config.degree
    f1 = sp.combine(sp.basis(knots, D - 1), sp.bump(knots, D - 1))
    f2 = sp.combine(sp.basis(knots, D - 2), sp.bump(knots, D - 2))
    return f1, f2


def _region_cochains(config, region):
    f1, f2 = _region_profiles(config, region)
    return {
        "edag": _mode0(-1, "T", f1, 1),
        "a1": _mode0(0, "S", f2, 1),
        "a2": _mode0(0, "S", sp.pp_scale(-1, sp.pp_derivative(f1)), 1),
        "e": _mode0(1, "S", f2, 0),
    }


def _profile(cochain):
    """The single constant-mode profile of a generator cochain."""
    ((terms),) = [t for t in cochain.form.comps.values()]
    (w, c, f) = terms[0]
    return sp.pp_scale(Rat(c), f)


def _connector_cochain(base, lo, hi):
    """The observable cochain whose differential is the difference of two
    same-name generator cochains (degree one lower)."""
    diff = sp.pp_sub(_profile(lo), _profile(hi))
    if base == "edag":
        # -d u = g dt  with  g the T-leg difference
        u = sp.pp_scale(-1, sp.pp_antiderivative(diff))
        assert u.is_compact()
        return _mode0(-2, "S", u, 0)
    if base in ("a1", "a2"):
        # -(u'') dtheta = g dtheta on the constant mode
        u = sp.pp_scale(-1, sp.pp_antiderivative(sp.pp_antiderivative(diff)))
        assert u.is_compact()
        return _mode0(-1, "S", u, 1)
    # -v' = g  for the degree-one difference
    v = sp.pp_scale(-1, sp.pp_antiderivative(diff))
    assert v.is_compact()
    return _mode0(0, "T", v, 1)


class GlobalAlgebra:
    """The presented observable algebra of a nested region family, with the
    underlying cochain of every generator and the exact two-point table."""

    def __init__(self, config, regions=DEFAULT_REGIONS, word_cutoff=4):
        self.config = config
        self.regions = tuple(regions)
        self.region_names = [name for name, _ in self.regions]
        if self.region_names[-1] != "M":
            raise ValueError("the last region must be the full cylinder M")
        self.cochains = {}
        specs = []
        star_table = {}
        for rname, region in self.regions:
            region_cochains = _region_cochains(config, region)
            for base in BASE_ORDER:
                name = "%s_%s" % (base, rname)
                self.cochains[name] = region_cochains[base]
                specs.append(GeneratorSpec(name, BASE_DEGREES[base], {}))
                if base == "e":
                    star_table[name] = (name, -1)
        for (r1, _), (r2, _) in zip(self.regions, self.regions[1:]):
            for base in BASE_ORDER:
                lo, hi = "%s_%s" % (base, r1), "%s_%s" % (base, r2)
                name = "k_%s_%s_%s" % (base, r1, r2)
                self.cochains[name] = _connector_cochain(
                    base, self.cochains[lo], self.cochains[hi])
                specs.append(GeneratorSpec(name, BASE_DEGREES[base] - 1,
                                           {lo: 1, hi: -1}))
                if base == "e":
                    star_table[name] = (name, -1)
        self.omega2 = two_point_table(self.cochains)
        self.algebra = PresentedDGA(specs, tau=poisson_table(self.cochains),
                                    word_cutoff=word_cutoff,
                                    star_table=star_table)

    def state(self):
        return QuasifreeState(self.algebra, self.omega2)

    def degree(self, name):
        return self.algebra.degree(name)

    def subalgebra_names(self, upto):
        """Generator names visible in the region ``upto`` (its own copy and
        all earlier copies plus their connectors)."""
        idx = self.region_names.index(upto)
        names = []
        for g in self.algebra.names():
            if g.startswith("k_"):
                _, _, r1, r2 = g.split("_")
                if self.region_names.index(r2) <= idx:
                    names.append(g)
            else:
                _, r = g.split("_")
                if self.region_names.index(r) <= idx:
                    names.append(g)
        return names


def observable_algebra(config, regions=DEFAULT_REGIONS, word_cutoff=4):
    return GlobalAlgebra(config, regions, word_cutoff)


def _exact_pairings(cochains, pairing):
    names = list(cochains)
    out = {}
    for x in names:
        for y in names:
            cx, cy = cochains[x], cochains[y]
            if cx.m + cy.m != 0:
                continue
            v = pairing(cx, cy).exact
            if v is None:
                raise ValueError(
                    "generator pairing (%s, %s) is not exact" % (x, y))
            if v:
                out[(x, y)] = v
    return out


def poisson_table(cochains):
    """Exact Poisson pairings of a named cochain family (a CCR table)."""
    return _exact_pairings(cochains, poisson)


def two_point_table(cochains):
    """Exact two-point pairings of a named cochain family."""
    return _exact_pairings(cochains, two_point)


# -- the quasi-free state ---------------------------------------------------


def koszul_extract_sign(degrees, j):
    """Koszul sign for moving entry ``j`` of a word to position 1 (just
    after the head), across entries 1..j-1."""
    s = 1
    for k in range(1, j):
        if degrees[j] % 2 and degrees[k] % 2:
            s = -s
    return s


class QuasifreeState:
    """The quasi-free functional on tensor words over the generators:
    ``omega(1) = 1``, odd words vanish, and even words are the sum over
    ordered pair partitions of products of two-point values with Koszul
    signs."""

    def __init__(self, algebra, table):
        self.algebra = algebra
        self.table = dict(table)
        self._cache = {(): QQi(1)}

    def pair(self, a, b):
        return self.table.get((a, b), ZERO)

    def word(self, word):
        word = tuple(word)
        if word in self._cache:
            return self._cache[word]
        if len(word) % 2:
            return ZERO
        degs = [self.algebra.degree(g) for g in word]
        total = ZERO
        for j in range(1, len(word)):
            v = self.pair(word[0], word[j])
            if not v:
                continue
            sign = koszul_extract_sign(degs, j)
            rest = word[1:j] + word[j + 1:]
            total = total + QQi(sign) * v * self.word(rest)
        self._cache[word] = total
        return total

    def element(self, x):
        """Evaluate on an algebra element, term by tensor word."""
        total = ZERO
        for w, c in x.terms.items():
            total = total + c * self.word(w)
        return total

    def __call__(self, x):
        if isinstance(x, NCElement):
            return self.element(x)
        return self.word(x)


def quasifree_state(algebra, table):
    return QuasifreeState(algebra, table)


# -- GNS radical and module -------------------------------------------------


def _monomials_by_degree(algebra, cutoff):
    out = {}
    for w in pbw_monomials(algebra, cutoff):
        out.setdefault(algebra.word_degree(w), []).append(w)
    return out


def gram_matrix(state, rows, cols):
    """``omega(b* a)`` for PBW words ``b`` in rows and ``a`` in cols."""
    algebra = state.algebra
    out = []
    for b in rows:
        sb = star(NCElement(algebra, {b: QQi(1)}), algebra)
        row = []
        for a in cols:
            v = ZERO
            for w, c in sb.terms.items():
                v = v + c * state.word(w + a)
            row.append(v)
        out.append(row)
    return out


def degree_zero_gram(state, cutoff=1):
    """The Gram matrix ``omega(b* a)`` over the degree-0 PBW monomials in
    even (bosonic) generators up to the cutoff; returns (monomials, matrix,
    eigenvalues) with float eigenvalues of the hermitian matrix."""
    import numpy as np

    algebra = state.algebra
    mono = [w for w in pbw_monomials(algebra, cutoff)
            if algebra.word_degree(w) == 0
            and all(algebra.degree(g) % 2 == 0 for g in w)]
    g = gram_matrix(state, mono, mono)
    arr = np.array([[complex(float(x.re), float(x.im)) for x in row]
                    for row in g])
    eig = np.linalg.eigvalsh(arr) if mono else np.array([])
    return mono, g, [float(v) for v in eig]


class RadicalReport:
    """Per-degree radical bases (coefficient vectors over the degree's PBW
    monomials) plus the singular-value audit of each Gram matrix."""

    def __init__(self, monomials, basis, svd_gaps):
        self.monomials = monomials  # degree -> [word]
        self.basis = basis          # degree -> [coefficient vector]
        self.svd_gaps = svd_gaps    # degree -> (smallest kept, largest dropped)

    def dim(self, degree):
        return len(self.basis.get(degree, []))

    def quotient_dims(self):
        return {n: len(self.monomials[n]) - self.dim(n)
                for n in sorted(self.monomials)}


def gns_radical(state, cutoff, row_cutoff=None, svd_gap=1e-7):
    """The exact per-degree nullspace of the Gram pairing between opposite
    degrees at the length cutoff, with a float singular-value cross-check
    of every rank decision.  ``row_cutoff`` optionally enlarges the space
    of test monomials beyond the column cutoff (to probe stability of the
    rank decisions under cutoff increase)."""
    import numpy as np

    algebra = state.algebra
    mono = _monomials_by_degree(algebra, cutoff)
    row_mono = (mono if row_cutoff is None else
                _monomials_by_degree(algebra, row_cutoff))
    basis = {}
    gaps = {}
    for n, cols in sorted(mono.items()):
        rows = row_mono.get(-n, [])
        if not rows:
            basis[n] = [[QQi(1) if i == j else QQi(0)
                         for i in range(len(cols))] for j in range(len(cols))]
            gaps[n] = (0.0, 0.0)
            continue
        g = gram_matrix(state, rows, cols)
        basis[n] = la.nullspace(g)
        arr = np.array([[complex(float(x.re), float(x.im)) for x in row]
                        for row in g])
        sv = np.linalg.svd(arr, compute_uv=False) if arr.size else np.array([])
        rank = len(cols) - len(basis[n])
        kept = float(sv[rank - 1]) if rank else 0.0
        dropped = float(sv[rank]) if rank < len(sv) else 0.0
        if rank and kept < svd_gap:
            raise ValueError(
                "ambiguous numeric rank at degree %d: "
                "smallest kept singular value %g" % (n, kept))
        if dropped > svd_gap:
            raise ValueError(
                "ambiguous numeric rank at degree %d: "
                "largest dropped singular value %g" % (n, dropped))
        gaps[n] = (kept, dropped)
    return RadicalReport(mono, basis, gaps)


def radical_contains(state, report, word):
    """Whether a PBW word lies in the computed radical span of its degree."""
    n = state.algebra.word_degree(word)
    cols = report.monomials.get(n, [])
    if word not in cols:
        return False
    vecs = report.basis.get(n, [])
    if not vecs:
        return False
    mat = la.from_columns(vecs, len(cols))
    target = [[QQi(1)] if c == word else [QQi(0)] for c in cols]
    return la.solve(mat, target) is not None


def left_ideal_defect(state, report, test_cutoff=3, sample=None, seed=0):
    """Closure of the radical under left multiplication by generators.

    For each radical vector ``x`` and generator ``g``, membership of
    ``g x`` in the radical is tested through the state itself:
    ``omega(b . g . x)`` must vanish for every PBW test monomial ``b`` of
    the complementary degree up to ``test_cutoff``.  Returns the number of
    failing ``(x, g)`` pairs; ``sample`` optionally caps how many pairs are
    checked (deterministically, via ``seed``)."""
    import random

    algebra = state.algebra
    test = _monomials_by_degree(algebra, test_cutoff)
    pairs = []
    for n, vecs in report.basis.items():
        cols = report.monomials[n]
        for vec in vecs:
            terms = [(w, c) for w, c in zip(cols, vec) if c]
            for g in algebra.names():
                pairs.append((n, terms, g))
    if sample is not None and sample < len(pairs):
        pairs = random.Random(seed).sample(pairs, sample)
    failures = 0
    for n, terms, g in pairs:
        m = n + algebra.degree(g)
        for b in test.get(-m, []):
            acc = ZERO
            for w, c in terms:
                acc = acc + c * state.word(b + (g,) + w)
            if acc:
                failures += 1
                break
    return failures


# -- the observable net and the vacuum representation -----------------------


def _subalgebra(global_algebra, names):
    if set(names) == set(global_algebra.algebra.names()):
        return global_algebra.algebra
    big = global_algebra.algebra
    keep = set(names)
    specs = [GeneratorSpec(g.name, g.degree, dict(g.diff))
             for g in big.generators if g.name in keep]
    tau = {(x, y): v for (x, y), v in big.relations.table.items()
           if v and x in keep and y in keep}
    star_table = {n: big.star_table[n] for n in keep}
    return PresentedDGA(specs, tau=tau, word_cutoff=big.word_cutoff,
                        star_table=star_table)


def _inclusion(sub, sup):
    return DGAMorphism(sub, sup, {g: sup.gen(g) for g in sub.names()})


def observable_net(global_algebra):
    """The net of observable algebras over the nested region poset; the
    algebra at a region is spanned by its own generator copy, all earlier
    copies, and the connectors between them."""
    names = global_algebra.region_names
    site = poset_site(names, [(a, b) for i, a in enumerate(names)
                              for b in names[i + 1:]])
    algebra_at = {r: _subalgebra(global_algebra,
                                 global_algebra.subalgebra_names(r))
                  for r in names}
    map_at = {}
    for m, (s, t) in site.morphisms.items():
        if s == t:
            alg = algebra_at[s]
            map_at[m] = _inclusion(alg, alg)
        else:
            map_at[m] = _inclusion(algebra_at[s], algebra_at[t])
    return Net(site, algebra_at, map_at)


def vacuum_rep(net, module):
    """The constant net representation on the GNS module at the full
    cylinder."""
    return const_rep(net, module, "M")


def comparison_morphism(small, global_algebra):
    """The weak equivalence from the four-generator CCR algebra into the
    global algebra, sending each generator to its full-cylinder copy."""
    tgt = global_algebra.algebra
    rename = {"e_dagger": "edag_M", "a1": "a1_M", "a2": "a2_M", "e": "e_M"}
    return DGAMorphism(small.algebra, tgt,
                       {g: tgt.gen(rename[g]) for g in rename})


def gns_module(algebra, report, cutoff=3):
    """The cyclic GNS module: one degree-0 generator with the radical
    elements as relations."""
    relations = []
    for n, vecs in report.basis.items():
        cols = report.monomials[n]
        for vec in vecs:
            rel = {(w, "v"): c for w, c in zip(cols, vec) if c}
            if rel:
                relations.append(rel)
    return LeftModule(algebra, [("v", 0)], {}, relations=relations,
                      cutoff=cutoff)
