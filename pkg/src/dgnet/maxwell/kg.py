"""The scalar field on the cylinder in two presentations, and their
comparison.

Constant-mode truncation of the mass-``m`` scalar field governed by
``P = d^2/dt^2 + m^2``.  Per region the standard algebra has two degree-0
generators ``u1, u2`` representing test-function classes with time moments
``(1, 0)`` and ``(0, 1)`` (a basis of the cokernel of ``P`` at this
truncation), with commutator ``i`` times the Green pairing of the
representatives.  The resolved algebra replaces the quotient by a two-term
complex: degree ``-1`` generators ``w1, w2`` with ``d wi = qi``, where
``qi`` names the class of ``P wi`` (a degree-0 generator that pairs
trivially under the Green operator, so it commutes with everything).

The comparison morphism sends ``vi`` to ``ui`` and kills ``wi, qi``.  It is
a weak equivalence of nets, yet no representation restricted along it can
have a nonzero action of the degree ``-1`` generators — the obstruction to
essential surjectivity of the restriction functor.
"""

from __future__ import annotations

from .. import linalg as la
from .. import splines as sp
from ..freealg import DGAMorphism, GeneratorSpec, NCElement, PresentedDGA
from ..modules import regular_module
from ..nets import Net, NetMorphism, NetRep, poset_site
from ..scalar import ONE, QQi
from .cylinder import CylinderConfig, region_knots
from .green import green_difference
from .state import DEFAULT_REGIONS

STANDARD_GENERATORS = ("u1", "u2")
RESOLVED_GENERATORS = ("w1", "w2", "v1", "v2", "q1", "q2")


def kg_profiles(config, region):
    """Representative test functions with moments (1,0) and (0,1) on the
    region's knot grid."""
    knots = region_knots(config, region)
    f1 = sp.combine(sp.basis(knots, config.degree),
                    sp.bump(knots, config.degree))
    f2 = sp.pp_scale(-1, sp.pp_derivative(f1))
    return f1, f2


def green_pairing(f, g, mass):
    """``integral f . (G g)`` for the difference Green operator of
    ``P = d^2/dt^2 + mass^2`` on the constant mode; exact for mass 0."""
    kernel = green_difference(g, float(mass))
    if mass == 0:
        v = kernel.pair_exact(f)
        if v is None:
            raise ValueError("massless Green pairing should be exact")
        return QQi(v), float(v)
    x = kernel.pair_float(f)
    return QQi(sp.rat_from_float(x)), x


class KGModel:
    """The two scalar-field nets over the nested region poset and the
    comparison morphism between them."""

    def __init__(self, mass=0, config=None, regions=DEFAULT_REGIONS,
                 word_cutoff=4):
        self.config = config or CylinderConfig()
        self.mass = mass
        self.regions = tuple(regions)
        names = [r for r, _ in self.regions]
        self.site = poset_site(names, [(a, b) for i, a in enumerate(names)
                                       for b in names[i + 1:]])
        self.profiles = {r: kg_profiles(self.config, region)
                         for r, region in self.regions}
        self.tau_at = {}
        self.tau_float_at = {}
        for r, (f1, f2) in self.profiles.items():
            self.tau_at[r], self.tau_float_at[r] = green_pairing(
                f1, f2, mass)
        self.net = self._standard_net(word_cutoff)
        self.net_bv = self._resolved_net(word_cutoff)
        self.phi = self._comparison()

    def _standard_net(self, word_cutoff):
        algebra_at = {}
        for r, _ in self.regions:
            specs = [GeneratorSpec(g, 0, {}) for g in STANDARD_GENERATORS]
            algebra_at[r] = PresentedDGA(
                specs, tau={("u1", "u2"): self.tau_at[r]},
                word_cutoff=word_cutoff)
        return self._name_net(algebra_at)

    def _resolved_net(self, word_cutoff):
        algebra_at = {}
        for r, _ in self.regions:
            specs = [
                GeneratorSpec("w1", -1, {"q1": 1}),
                GeneratorSpec("w2", -1, {"q2": 1}),
                GeneratorSpec("v1", 0, {}),
                GeneratorSpec("v2", 0, {}),
                GeneratorSpec("q1", 0, {}),
                GeneratorSpec("q2", 0, {}),
            ]
            algebra_at[r] = PresentedDGA(
                specs, tau={("v1", "v2"): self.tau_at[r]},
                word_cutoff=word_cutoff)
        return self._name_net(algebra_at)

    def _name_net(self, algebra_at):
        map_at = {}
        for m, (s, t) in self.site.morphisms.items():
            src, tgt = algebra_at[s], algebra_at[t]
            map_at[m] = DGAMorphism(src, tgt,
                                    {g: tgt.gen(g) for g in src.names()})
        return Net(self.site, algebra_at, map_at)

    def _comparison(self):
        images = {"v1": "u1", "v2": "u2", "w1": None, "w2": None,
                  "q1": None, "q2": None}
        component_at = {}
        for r, _ in self.regions:
            src = self.net_bv.algebra(r)
            tgt = self.net.algebra(r)
            component_at[r] = DGAMorphism(
                src, tgt,
                {g: (tgt.zero() if images[g] is None else tgt.gen(images[g]))
                 for g in src.names()})
        return NetMorphism(self.net_bv, self.net, component_at)

    def tau_residual(self):
        """Worst |tau - Green quadrature| over the regions (the commutator
        oracle)."""
        worst = 0.0
        for r, _ in self.regions:
            t = self.tau_at[r]
            worst = max(worst, abs(float(t.re) - self.tau_float_at[r])
                        + abs(float(t.im)))
        return worst


def kg_model(mass=0, config=None, regions=DEFAULT_REGIONS, word_cutoff=4):
    return KGModel(mass, config, regions, word_cutoff)


# -- representations and the obstruction ------------------------------------


def net_regular_rep(net, cutoff):
    """Each algebra of the net acting on itself, with structure maps given
    by the net's algebra maps on realized PBW bases."""
    site = net.site
    module_at = {c: regular_module(net.algebra(c), cutoff)
                 for c in site.objects}
    structure = {}
    for m, (s, t) in site.morphisms.items():
        phi = net.map(m)
        rs = module_at[s].realization()
        rt = module_at[t].realization()
        index = {}
        for n in rt.complex.degrees():
            for i, (w, _) in enumerate(rt.basis[n]):
                index[(n, w)] = i
        comps = {}
        for n in rs.complex.degrees():
            mat = la.zeros(rt.dim(n), len(rs.basis[n]))
            for j, (w, _) in enumerate(rs.basis[n]):
                img = phi.apply(NCElement(phi.source, {w: ONE}))
                for w2, c in img.terms.items():
                    mat[index[(n, w2)]][j] = c
            comps[n] = mat
        structure[m] = comps
    return NetRep(net, module_at, structure)


def negative_generator_actions(rep):
    """All realized action matrices of degree ``-1`` generators, keyed by
    (object, generator, degree)."""
    out = {}
    for c in rep.net.site.objects:
        alg = rep.net.algebra(c)
        r = rep.module_at[c].realization()
        for g in alg.names():
            if alg.degree(g) != -1:
                continue
            for n in r.complex.degrees():
                mat = r.action_matrix(g, n)
                if la.shape(mat)[0] and la.shape(mat)[1]:
                    out[(c, g, n)] = mat
    return out


def has_nonzero_negative_action(rep):
    return any(not la.is_zero(m)
               for m in negative_generator_actions(rep).values())


def all_negative_actions_zero(rep):
    return all(la.is_zero(m)
               for m in negative_generator_actions(rep).values())
