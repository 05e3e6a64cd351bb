"""Nets of presented DGAs over finite sites, and their representations.

A site is a finite category, tabulated explicitly; the intended instances
are finite posets of regions with a top object.  A net assigns an algebra to
every object and a morphism of algebras to every site morphism, functorially.
A net representation assigns a left module to every object and, to every
site morphism gamma: c1 -> c2, a structure map
L_{c1} -> restrict(L_{c2}, along the algebra map of gamma); coherence is
strict (exact matrix equalities on realizations).

Four adjunctions are materialized with explicit matrices so their triangle
identities can be checked exactly: change-of-net restriction/extension,
evaluation/constant representations, and free/forget.
"""

from __future__ import annotations

import itertools

from . import linalg as la
from .complexes import (
    CochainComplex,
    CochainMap,
    GradedSpace,
    interval_object,
    is_quasi_iso,
)
from .freealg import NCElement, is_weak_equivalence_dga
from .modules import (
    LeftModule,
    ModuleMorphism,
    adjunction_unit,
    extend,
    restrict,
    module_from_realization,
    _free_vector_to_column,
)
from .scalar import QQi, ZERO, ONE


# ---------------------------------------------------------------------------
# sites


class Site:
    """A finite category: objects, morphisms, identities, composition table.

    ``morphisms`` maps a morphism name to (source, target); ``identity``
    maps each object to its identity morphism's name; ``compose`` maps a
    composable pair of names (g2, g1), g1 first, to the composite's name.
    Category axioms are verified on construction.
    """

    def __init__(self, objects, morphisms, identity, compose):
        self.objects = list(objects)
        self.morphisms = {str(m): (s, t) for m, (s, t) in morphisms.items()}
        self.identity = dict(identity)
        self.compose_table = dict(compose)
        self._validate()

    def source(self, m):
        return self.morphisms[m][0]

    def target(self, m):
        return self.morphisms[m][1]

    def hom(self, c1, c2):
        return [m for m, (s, t) in self.morphisms.items() if s == c1 and t == c2]

    def compose(self, g2, g1):
        """The composite of g1 followed by g2."""
        if self.target(g1) != self.source(g2):
            raise ValueError("morphisms %s, %s are not composable" % (g1, g2))
        return self.compose_table[(g2, g1)]

    def composable_pairs(self):
        return [
            (g2, g1)
            for g2 in self.morphisms
            for g1 in self.morphisms
            if self.target(g1) == self.source(g2)
        ]

    def _validate(self):
        for c in self.objects:
            e = self.identity.get(c)
            if e is None or self.morphisms.get(e) != (c, c):
                raise ValueError("missing or ill-typed identity at %r" % (c,))
        for g2, g1 in self.composable_pairs():
            comp = self.compose_table.get((g2, g1))
            if comp is None:
                raise ValueError("composition %s . %s missing" % (g2, g1))
            if self.morphisms[comp] != (self.source(g1), self.target(g2)):
                raise ValueError("composition %s . %s ill-typed" % (g2, g1))
        for m, (s, t) in self.morphisms.items():
            if self.compose_table[(m, self.identity[s])] != m:
                raise ValueError("right identity law fails at %s" % m)
            if self.compose_table[(self.identity[t], m)] != m:
                raise ValueError("left identity law fails at %s" % m)
        for g3 in self.morphisms:
            for g2 in self.hom_into(self.source(g3)):
                for g1 in self.hom_into(self.source(g2)):
                    if self.compose(g3, self.compose(g2, g1)) != self.compose(
                        self.compose(g3, g2), g1
                    ):
                        raise ValueError(
                            "associativity fails at (%s, %s, %s)" % (g3, g2, g1)
                        )

    def hom_into(self, c):
        return [m for m, (s, t) in self.morphisms.items() if t == c]

    def __repr__(self):
        return "Site(%d objects, %d morphisms)" % (
            len(self.objects),
            len(self.morphisms),
        )


def poset_site(objects, pairs):
    """The site of a finite poset; ``pairs`` lists the (c1, c2) with c1 <= c2.

    Reflexive pairs are added automatically and transitivity is required.
    """
    rel = {(c, c) for c in objects} | {tuple(p) for p in pairs}
    for (a, b), (c, d) in itertools.product(rel, rel):
        if b == c and (a, d) not in rel:
            raise ValueError("relation is not transitive at (%r, %r)" % (a, d))
    name = {(a, b): "%s<=%s" % (a, b) for (a, b) in rel}
    morphisms = {name[p]: p for p in rel}
    identity = {c: name[(c, c)] for c in objects}
    compose = {}
    for (b2, d) in rel:
        for (a, b1) in rel:
            if b1 == b2:
                compose[(name[(b2, d)], name[(a, b1)])] = name[(a, d)]
    return Site(objects, morphisms, identity, compose)


# ---------------------------------------------------------------------------
# nets and their morphisms


class Net:
    """A functor from a site to presented DGAs."""

    def __init__(self, site, algebra_at, map_at, check=True):
        self.site = site
        self.algebra_at = dict(algebra_at)
        self.map_at = dict(map_at)
        if check:
            validate_net(self)

    def algebra(self, c):
        return self.algebra_at[c]

    def map(self, m):
        return self.map_at[m]


def validate_net(net):
    """Functoriality of the algebra assignment, checked on generators."""
    site = net.site
    for c in site.objects:
        if c not in net.algebra_at:
            raise ValueError("no algebra at object %r" % (c,))
    for m, (s, t) in site.morphisms.items():
        phi = net.map_at.get(m)
        if phi is None:
            raise ValueError("no algebra map at morphism %s" % m)
        if phi.source is not net.algebra_at[s] or phi.target is not net.algebra_at[t]:
            raise ValueError("algebra map at %s has wrong (co)domain" % m)
    for c in site.objects:
        phi = net.map_at[site.identity[c]]
        alg = net.algebra_at[c]
        for g in alg.names():
            if phi.apply(alg.gen(g)) != alg.gen(g):
                raise ValueError("identity morphism does not act as identity at %r" % (c,))
    for g2, g1 in site.composable_pairs():
        comp = net.map_at[site.compose(g2, g1)]
        phi1, phi2 = net.map_at[g1], net.map_at[g2]
        alg = net.algebra_at[site.source(g1)]
        for g in alg.names():
            if comp.apply(alg.gen(g)) != phi2.apply(phi1.apply(alg.gen(g))):
                raise ValueError("functoriality fails at (%s, %s)" % (g2, g1))


class NetMorphism:
    """A natural transformation of nets over the same site."""

    def __init__(self, source, target, component_at, check=True):
        if source.site is not target.site:
            raise ValueError("nets over different sites")
        self.source = source
        self.target = target
        self.component_at = dict(component_at)
        if check:
            self.validate()

    def component(self, c):
        return self.component_at[c]

    def validate(self):
        site = self.source.site
        for c in site.objects:
            phi = self.component_at.get(c)
            if phi is None:
                raise ValueError("no component at object %r" % (c,))
            if (
                phi.source is not self.source.algebra_at[c]
                or phi.target is not self.target.algebra_at[c]
            ):
                raise ValueError("component at %r has wrong (co)domain" % (c,))
        for m, (s, t) in site.morphisms.items():
            alg = self.source.algebra_at[s]
            left = self.component_at[t]
            right = self.component_at[s]
            for g in alg.names():
                via_source = left.apply(self.source.map_at[m].apply(alg.gen(g)))
                via_target = self.target.map_at[m].apply(right.apply(alg.gen(g)))
                if via_source != via_target:
                    raise ValueError("naturality fails at morphism %s" % m)


# ---------------------------------------------------------------------------
# net representations


class NetRep:
    """Modules over a net's algebras with strictly coherent structure maps.

    ``structure_map_at`` assigns to each site morphism gamma: c1 -> c2 its
    degreewise matrices {n: matrix} from the realization of the module at c1
    to the realization of the module at c2; restriction does not change the
    underlying complex, so coherence is plain matrix equality.
    """

    def __init__(self, net, module_at, structure_map_at, check=True):
        self.net = net
        self.module_at = dict(module_at)
        self.structure_map_at = {m: dict(f) for m, f in structure_map_at.items()}
        self._restricted = {}
        if check:
            validate_rep(self)

    def module(self, c):
        return self.module_at[c]

    def structure_matrix(self, m, n):
        site = self.net.site
        rs = self.module_at[site.source(m)].realization()
        rt = self.module_at[site.target(m)].realization()
        mat = self.structure_map_at.get(m, {}).get(n)
        if mat is None:
            return la.zeros(rt.dim(n), rs.dim(n))
        return mat

    def restricted_target(self, m):
        """restrict(module at target(m), algebra map of m), cached."""
        if m not in self._restricted:
            self._restricted[m] = restrict(
                self.module_at[self.net.site.target(m)], self.net.map_at[m]
            )
        return self._restricted[m]

    def structure_morphism(self, m, check=False):
        src = self.module_at[self.net.site.source(m)]
        comps = {
            n: self.structure_matrix(m, n)
            for n in src.realization().complex.degrees()
        }
        return ModuleMorphism(src, self.restricted_target(m), comps, check=check)


def validate_rep(rep):
    """Structure maps are module morphisms; identity and composition laws."""
    site = rep.net.site
    for c in site.objects:
        mod = rep.module_at.get(c)
        if mod is None:
            raise ValueError("no module at object %r" % (c,))
        if mod.algebra is not rep.net.algebra_at[c]:
            raise ValueError("module at %r is over the wrong algebra" % (c,))
    for m in site.morphisms:
        rep.structure_morphism(m, check=True)
    for c in site.objects:
        e = site.identity[c]
        r = rep.module_at[c].realization()
        for n in r.complex.degrees():
            if not la.eq(rep.structure_matrix(e, n), la.identity(r.dim(n))):
                raise ValueError("structure map at identity %s is not the identity" % e)
    for g2, g1 in site.composable_pairs():
        comp = site.compose(g2, g1)
        r1 = rep.module_at[site.source(g1)].realization()
        for n in r1.complex.degrees():
            lhs = rep.structure_matrix(comp, n)
            a = rep.structure_matrix(g2, n)
            b = rep.structure_matrix(g1, n)
            if la.shape(a)[1] and la.shape(b)[0]:
                rhs = la.matmul(a, b)
            else:
                rhs = la.zeros(*la.shape(lhs))
            if not la.eq(lhs, rhs):
                raise ValueError(
                    "composition coherence fails at (%s, %s) in degree %d"
                    % (g2, g1, n)
                )


class RepMorphism:
    """A morphism of net representations: componentwise module morphisms
    commuting with the structure maps."""

    def __init__(self, source, target, components, check=True):
        if source.net is not target.net:
            raise ValueError("representations of different nets")
        self.source = source
        self.target = target
        self.components = {c: dict(f) for c, f in components.items()}
        if check:
            validate_rep_morphism(self)

    def component_matrix(self, c, n):
        rs = self.source.module_at[c].realization()
        rt = self.target.module_at[c].realization()
        mat = self.components.get(c, {}).get(n)
        if mat is None:
            return la.zeros(rt.dim(n), rs.dim(n))
        return mat

    def module_morphism(self, c, check=False):
        src = self.source.module_at[c]
        comps = {
            n: self.component_matrix(c, n)
            for n in src.realization().complex.degrees()
        }
        return ModuleMorphism(src, self.target.module_at[c], comps, check=check)


def validate_rep_morphism(f):
    site = f.source.net.site
    for c in site.objects:
        f.module_morphism(c, check=True)
    for m, (s, t) in site.morphisms.items():
        rs_s = f.source.module_at[s].realization()
        rs_t = f.source.module_at[t].realization()
        rt_s = f.target.module_at[s].realization()
        rt_t = f.target.module_at[t].realization()
        for n in rs_s.complex.degrees():
            rows, cols = rt_t.dim(n), rs_s.dim(n)
            if not rows or not cols:
                continue
            if rs_t.dim(n):
                lhs = la.matmul(
                    f.component_matrix(t, n), f.source.structure_matrix(m, n)
                )
            else:
                lhs = la.zeros(rows, cols)
            if rt_s.dim(n):
                rhs = la.matmul(
                    f.target.structure_matrix(m, n), f.component_matrix(s, n)
                )
            else:
                rhs = la.zeros(rows, cols)
            if not la.eq(lhs, rhs):
                raise ValueError(
                    "components do not commute with structure map %s in degree %d"
                    % (m, n)
                )


def identity_rep_morphism(rep):
    comps = {}
    for c in rep.net.site.objects:
        r = rep.module_at[c].realization()
        comps[c] = {n: la.identity(r.dim(n)) for n in r.complex.degrees()}
    return RepMorphism(rep, rep, comps, check=False)


def compose_rep_morphisms(g, f):
    """g after f."""
    comps = {}
    for c in f.source.net.site.objects:
        rs = f.source.module_at[c].realization()
        comps[c] = {
            n: la.matmul(g.component_matrix(c, n), f.component_matrix(c, n))
            for n in rs.complex.degrees()
        }
    return RepMorphism(f.source, g.target, comps, check=False)


def rep_morphism_eq(f, g):
    for c in f.source.net.site.objects:
        rs = f.source.module_at[c].realization()
        for n in rs.complex.degrees():
            if not la.eq(f.component_matrix(c, n), g.component_matrix(c, n)):
                return False
    return True


# ---------------------------------------------------------------------------
# homotopy predicates


def is_we_rep(f):
    return all(
        is_quasi_iso(f.module_morphism(c).cochain_map())
        for c in f.source.net.site.objects
    )


def is_fib_rep(f):
    for c in f.source.net.site.objects:
        rt = f.target.module_at[c].realization()
        for n in rt.complex.degrees():
            if la.rank(f.component_matrix(c, n)) != rt.dim(n):
                return False
    return True


def is_we_net(phi, length_cutoff=3):
    """Componentwise weak equivalence of algebras, at the given truncation."""
    return all(
        is_weak_equivalence_dga(phi.component(c), length_cutoff)
        for c in phi.source.site.objects
    )


# ---------------------------------------------------------------------------
# change-of-net adjunction


def change_of_net_res(rep, phi):
    """Restrict a representation of phi's target net along phi.

    Underlying complexes are unchanged, so the structure matrices carry over
    verbatim.
    """
    module_at = {
        c: restrict(rep.module_at[c], phi.component(c))
        for c in phi.source.site.objects
    }
    return NetRep(phi.source, module_at, rep.structure_map_at)


def change_of_net_ext(rep, phi):
    """Extend a representation of phi's source net along phi."""
    site = phi.source.site
    module_at = {
        c: extend(rep.module_at[c], phi.component(c)) for c in site.objects
    }
    structure = {}
    for m, (s, t) in site.morphisms.items():
        structure[m] = _extended_structure_matrices(rep, phi, m, module_at)
    return NetRep(phi.target, module_at, structure)


def _extended_structure_matrices(rep, phi, m, module_at):
    """Structure matrices of the extended representation at morphism m.

    A realized basis vector w . (1 (x) v) of the extension at source(m) maps
    to (target net map of m)(w) . (1 (x) structure(v)), expanded in the
    realization of the extension at target(m).
    """
    site = phi.source.site
    s, t = site.morphisms[m]
    ext_s, ext_t = module_at[s], module_at[t]
    r_es, r_et = ext_s.realization(), ext_t.realization()
    mod_s, mod_t = rep.module_at[s], rep.module_at[t]
    r_s, r_t = mod_s.realization(), mod_t.realization()
    phi_t = phi.component(t)
    b_map = phi.target.map_at[m]
    b_alg = phi.target.algebra_at[t]
    comps = {}
    for n in r_es.complex.degrees():
        if not r_et.dim(n):
            continue
        cols = []
        for w, v in r_es.basis[n]:
            # the generator v of the source module, in realized coordinates
            vn = mod_s.generator_degree(v)
            gen_col = _free_vector_to_column(r_s, vn, {((), v): ONE})
            img_col = la.matvec(rep.structure_matrix(m, vn), gen_col)
            # push each target basis vector into the extension and multiply
            # by the transported word
            word_elt = b_map.apply(NCElement(b_map.source, {w: ONE}))
            vec = {}
            for i, c in enumerate(img_col):
                if not c:
                    continue
                w2, v2 = r_t.basis[vn][i]
                pushed = phi_t.apply(NCElement(phi_t.source, {w2: c}))
                for w3, c3 in pushed.terms.items():
                    for wl, cl in word_elt.terms.items():
                        prod = b_alg.normal_form({wl + w3: cl * c3})
                        for w4, c4 in prod.terms.items():
                            key = (w4, v2)
                            vec[key] = vec.get(key, ZERO) + c4
            cols.append(_free_vector_to_column(r_et, n, vec))
        comps[n] = la.from_columns(cols, r_et.dim(n))
    return comps


def change_of_net_unit(rep, phi, extended=None):
    """The unit R -> Res Ext R of the change-of-net adjunction.

    Returns (RepMorphism, extended rep, restricted-extended rep).
    """
    ext = extended if extended is not None else change_of_net_ext(rep, phi)
    res = change_of_net_res(ext, phi)
    comps = {}
    for c in phi.source.site.objects:
        unit_c, _, _ = adjunction_unit(
            rep.module_at[c], phi.component(c), extended=ext.module_at[c]
        )
        comps[c] = dict(unit_c.components)
    return RepMorphism(rep, res, comps), ext, res


def change_of_net_counit(rep, phi, restricted=None):
    """The counit Ext Res R -> R of the change-of-net adjunction.

    Returns (RepMorphism, restricted rep, extended-restricted rep).
    """
    from .modules import adjunction_counit

    res = restricted if restricted is not None else change_of_net_res(rep, phi)
    site = phi.source.site
    ext_modules = {}
    comps = {}
    for c in site.objects:
        counit_c, _, ext_c = adjunction_counit(
            rep.module_at[c], phi.component(c), restricted=res.module_at[c]
        )
        ext_modules[c] = ext_c
        comps[c] = dict(counit_c.components)
    structure = {
        m: _extended_structure_matrices(res, phi, m, ext_modules)
        for m in site.morphisms
    }
    ext = NetRep(phi.target, ext_modules, structure)
    return RepMorphism(ext, rep, comps), res, ext


def quillen_unit_check_net(phi, rep):
    """True iff the change-of-net unit on the given representation is a
    componentwise quasi-isomorphism (the Quillen-equivalence condition on
    representations built by free_rep)."""
    unit, _, _ = change_of_net_unit(rep, phi)
    return is_we_rep(unit)


# ---------------------------------------------------------------------------
# evaluation / constant representations


def eval_at(rep, c):
    """Evaluation of a representation at an object."""
    return rep.module_at[c]


def _product_module(algebra, factors, tags):
    """Finite product of modules over one algebra, as one realized module.

    Factors must share degreewise dimensions of their complexes is NOT
    required; the product is the degreewise direct sum with block-diagonal
    action.
    """
    reals = [f.realization() for f in factors]
    labels = {}
    for n in sorted({n for r in reals for n in r.complex.degrees()}):
        labels[n] = [
            "%s:%s" % (tag, lab)
            for tag, r in zip(tags, reals)
            for lab in r.complex.basis_labels(n)
        ]
    diff = {}
    for n in labels:
        if n + 1 in labels:
            diff[n] = la.block_diag([r.complex.d(n) for r in reals])
    cx = CochainComplex(GradedSpace(labels), diff)
    action = {}
    for g in algebra.names():
        dg = algebra.degree(g)
        mats = {}
        for n in labels:
            if n + dg in labels:
                mats[n] = la.block_diag([r.action_matrix(g, n) for r in reals])
        action[g] = mats
    lengths = {
        n: [x for r in reals for x in r.lengths.get(n, [0] * r.complex.dim(n))]
        for n in labels
    }
    awl = {
        g: max((r.action_word_len[g] for r in reals), default=1)
        for g in algebra.names()
    }
    budget = min((r.budget for r in reals), default=algebra.word_cutoff)
    return module_from_realization(algebra, cx, action, lengths, awl, budget)


def _block_offsets(reals, n):
    offs = [0]
    for r in reals:
        offs.append(offs[-1] + r.complex.dim(n))
    return offs


def const_rep(net, module, c_tilde):
    """The constant representation of a module at an object.

    At each object c it is the product over hom(c, c_tilde) of the module
    restricted along the corresponding algebra map; structure maps re-index
    the factors by precomposition.
    """
    site = net.site
    factors_at = {}
    module_at = {}
    for c in site.objects:
        homs = site.hom(c, c_tilde)
        factors = [restrict(module, net.map_at[d]) for d in homs]
        factors_at[c] = (homs, factors)
        module_at[c] = _product_module(net.algebra_at[c], factors, homs)
    structure = {}
    for m, (s, t) in site.morphisms.items():
        homs_s, facs_s = factors_at[s]
        homs_t, facs_t = factors_at[t]
        rs = [f.realization() for f in facs_s]
        rt = [f.realization() for f in facs_t]
        degs = module_at[s].realization().complex.degrees()
        comps = {}
        for n in degs:
            if not module_at[t].realization().dim(n):
                continue
            mat = la.zeros(
                module_at[t].realization().dim(n), module_at[s].realization().dim(n)
            )
            offs_s = _block_offsets(rs, n)
            offs_t = _block_offsets(rt, n)
            for bt, d in enumerate(homs_t):
                bs = homs_s.index(site.compose(d, m))
                dim = rt[bt].complex.dim(n)
                for i in range(dim):
                    mat[offs_t[bt] + i][offs_s[bs] + i] = ONE
            comps[n] = mat
        structure[m] = comps
    rep = NetRep(net, module_at, structure)
    rep._const_factors = factors_at
    rep._const_object = c_tilde
    return rep


def eval_const_counit(net, module, c_tilde, const_source=None):
    """The projection eval(const(module)) -> module at the identity factor.

    Returns (ModuleMorphism, constant representation).
    """
    rep = const_source if const_source is not None else const_rep(net, module, c_tilde)
    homs, facs = rep._const_factors[c_tilde]
    b = homs.index(net.site.identity[c_tilde])
    src = rep.module_at[c_tilde]
    r_src = src.realization()
    r_mod = module.realization()
    reals = [f.realization() for f in facs]
    comps = {}
    for n in r_src.complex.degrees():
        if not r_mod.dim(n):
            continue
        offs = _block_offsets(reals, n)
        mat = la.zeros(r_mod.dim(n), r_src.dim(n))
        for i in range(r_mod.dim(n)):
            mat[i][offs[b] + i] = ONE
        comps[n] = mat
    return ModuleMorphism(src, module, comps, check=False), rep


def eval_const_unit(rep, c_tilde, const_target=None):
    """The unit R -> const(eval(R, c_tilde)): factor at delta is the
    structure map of delta.

    Returns (RepMorphism, constant representation).
    """
    net = rep.net
    site = net.site
    const = (
        const_target
        if const_target is not None
        else const_rep(net, rep.module_at[c_tilde], c_tilde)
    )
    comps = {}
    for c in site.objects:
        homs, facs = const._const_factors[c]
        reals = [f.realization() for f in facs]
        r_s = rep.module_at[c].realization()
        r_t = const.module_at[c].realization()
        mats = {}
        for n in r_s.complex.degrees():
            if not r_t.dim(n):
                continue
            offs = _block_offsets(reals, n)
            mat = la.zeros(r_t.dim(n), r_s.dim(n))
            for b, d in enumerate(homs):
                block = rep.structure_matrix(d, n)
                for i in range(reals[b].complex.dim(n)):
                    for j in range(r_s.dim(n)):
                        if block[i][j]:
                            mat[offs[b] + i][j] = block[i][j]
            mats[n] = mat
        comps[c] = mats
    return RepMorphism(rep, const, comps), const


# ---------------------------------------------------------------------------
# free / forget adjunction


def forget(rep):
    """The underlying collection of realized complexes."""
    return {c: rep.module_at[c].realization().complex for c in rep.net.site.objects}


def free_rep(net, collection, lengths_at=None):
    """The free representation on a collection of complexes.

    At object c the module is free over the net's algebra at c on one
    generator per pair (morphism gamma: c_tilde -> c, basis vector of the
    complex at c_tilde); structure maps re-index the summands by
    postcomposition and transport words along the net.  ``lengths_at``
    optionally records the word-length budget already consumed by each basis
    vector of the collection, as {object: {degree: [int]}}.
    """
    site = net.site
    module_at = {}
    gen_key = {}  # c -> {(gamma, n, j): generator name}
    for c in site.objects:
        gens = []
        diffs = {}
        keys = {}
        gen_lengths = {}
        for gamma in site.hom_into(c):
            c0 = site.source(gamma)
            v = collection.get(c0)
            if v is None:
                continue
            src_lengths = (lengths_at or {}).get(c0, {})
            for n in v.degrees():
                for j in range(v.dim(n)):
                    name = "f[%s;%d;%d]" % (gamma, n, j)
                    keys[(gamma, n, j)] = name
                    gens.append((name, n))
                    l = src_lengths.get(n)
                    if l is not None:
                        gen_lengths[name] = l[j]
            for n in v.degrees():
                dmat = v.d(n)
                for j in range(v.dim(n)):
                    img = {}
                    for i in range(v.dim(n + 1)):
                        if dmat[i][j]:
                            img[keys[(gamma, n + 1, i)]] = dmat[i][j]
                    if img:
                        diffs[keys[(gamma, n, j)]] = img
        module_at[c] = LeftModule(net.algebra_at[c], gens, diffs, [],
                                  generator_lengths=gen_lengths)
        gen_key[c] = keys
    structure = {}
    for m, (s, t) in site.morphisms.items():
        r_s = module_at[s].realization()
        r_t = module_at[t].realization()
        phi = net.map_at[m]
        comps = {}
        for n in r_s.complex.degrees():
            if not r_t.dim(n):
                continue
            cols = []
            back = {name: key for key, name in gen_key[s].items()}
            for w, v in r_s.basis[n]:
                gamma, vn, j = back[v]
                target_gen = gen_key[t][(site.compose(m, gamma), vn, j)]
                pushed = phi.apply(NCElement(phi.source, {w: ONE}))
                vec = {}
                for w2, c2 in pushed.terms.items():
                    key = (w2, target_gen)
                    vec[key] = vec.get(key, ZERO) + c2
                cols.append(_free_vector_to_column(r_t, n, vec))
            comps[n] = la.from_columns(cols, r_t.dim(n))
        structure[m] = comps
    rep = NetRep(net, module_at, structure)
    rep._free_gen_key = gen_key
    rep._free_collection = dict(collection)
    return rep


def free_forget_unit(net, collection, free=None):
    """The inclusions V_c -> forget(free(V))_c at the identity summand.

    Returns ({object: CochainMap}, free representation).
    """
    rep = free if free is not None else free_rep(net, collection)
    site = net.site
    out = {}
    for c in site.objects:
        v = collection.get(c)
        if v is None:
            continue
        r = rep.module_at[c].realization()
        e = site.identity[c]
        comps = {}
        for n in v.degrees():
            if not r.dim(n):
                continue
            cols = []
            for j in range(v.dim(n)):
                name = rep._free_gen_key[c][(e, n, j)]
                cols.append(_free_vector_to_column(r, n, {((), name): ONE}))
            comps[n] = la.from_columns(cols, r.dim(n))
        out[c] = CochainMap(v, r.complex, comps)
    return out, rep


def free_forget_counit(rep, free=None):
    """The counit free(forget(R)) -> R.

    A generator at (gamma, basis vector j) maps to the structure map of
    gamma applied to that basis vector; words act through the module.
    Returns (RepMorphism, free representation on forget(R)).
    """
    collection = forget(rep)
    if free is not None:
        fr = free
    else:
        lengths_at = {
            c: dict(rep.module_at[c].realization().lengths)
            for c in rep.net.site.objects
        }
        fr = free_rep(rep.net, collection, lengths_at)
    site = rep.net.site
    comps = {}
    for c in site.objects:
        r_f = fr.module_at[c].realization()
        r_m = rep.module_at[c].realization()
        back = {name: key for key, name in fr._free_gen_key[c].items()}
        mats = {}
        for n in r_f.complex.degrees():
            if not r_m.dim(n):
                continue
            cols = []
            for w, v in r_f.basis[n]:
                gamma, vn, j = back[v]
                col = [ZERO] * r_m.dim(vn)
                col[j] = ONE
                col = la.matvec(rep.structure_matrix(gamma, vn), col)
                m_deg = vn
                for g in reversed(w):
                    col = la.matvec(r_m.action_matrix(g, m_deg), col)
                    m_deg += rep.net.algebra_at[c].degree(g)
                cols.append(col)
            mats[n] = la.from_columns(cols, r_m.dim(n))
        comps[c] = mats
    return RepMorphism(fr, rep, comps), fr


def free_rep_morphism(net, maps, source, target):
    """The free representation morphism induced by componentwise cochain maps
    between two collections (source and target built by free_rep)."""
    site = net.site
    comps = {}
    for c in site.objects:
        r_s = source.module_at[c].realization()
        r_t = target.module_at[c].realization()
        back = {name: key for key, name in source._free_gen_key[c].items()}
        mats = {}
        for n in r_s.complex.degrees():
            if not r_t.dim(n):
                continue
            cols = []
            for w, v in r_s.basis[n]:
                gamma, vn, j = back[v]
                u = maps[site.source(gamma)]
                vec = {}
                for i in range(u.target.dim(vn)):
                    x = u.f(vn)[i][j]
                    if x:
                        name = target._free_gen_key[c][(gamma, vn, i)]
                        key = (w, name)
                        vec[key] = vec.get(key, ZERO) + x
                cols.append(_free_vector_to_column(r_t, n, vec))
            mats[n] = la.from_columns(cols, r_t.dim(n))
        comps[c] = mats
    return RepMorphism(source, target, comps, check=False)


# ---------------------------------------------------------------------------
# path objects


def _powered_structure_matrix(smat_by_deg, r1, r2, index1, index2, hom_dims, v):
    """Post-composition hom(V, L1) -> hom(V, L2) with a degreewise map."""
    comps = {}
    for n in sorted(hom_dims[0]):
        if n not in hom_dims[1]:
            continue
        mat = la.zeros(hom_dims[1][n], hom_dims[0][n])
        for (k, i, j, nn), col in index1.items():
            if nn != n:
                continue
            block = smat_by_deg(n + k)
            for i2 in range(r2.complex.dim(n + k)):
                if block[i2][i]:
                    row = index2.get((k, i2, j, n))
                    if row is not None:
                        mat[row][col] = block[i2][i]
        comps[n] = mat
    return comps


def path_object(rep):
    """The functorial path object of a representation.

    Returns (P, w: R -> P, f: P -> R x R, R x R) where P powers every module
    by the interval, w is a componentwise quasi-isomorphism, f is a
    componentwise fibration, and f . w is the diagonal exactly.
    """
    from .modules import power_module
    from .complexes import internal_hom_with_index

    net = rep.net
    site = net.site
    interval, _, _ = interval_object()

    p_module_at = {}
    p_index = {}
    for c in site.objects:
        mod = power_module(rep.module_at[c], interval)
        _, index = internal_hom_with_index(
            interval, rep.module_at[c].realization().complex
        )
        p_module_at[c] = mod
        p_index[c] = index

    p_structure = {}
    for m, (s, t) in site.morphisms.items():
        r1 = rep.module_at[s].realization()
        r2 = rep.module_at[t].realization()
        dims = (
            {n: p_module_at[s].realization().dim(n)
             for n in p_module_at[s].realization().complex.degrees()},
            {n: p_module_at[t].realization().dim(n)
             for n in p_module_at[t].realization().complex.degrees()},
        )
        p_structure[m] = _powered_structure_matrix(
            lambda k: rep.structure_matrix(m, k),
            r1, r2, p_index[s], p_index[t], dims, interval,
        )
    p_rep = NetRep(net, p_module_at, p_structure)

    # R x R with block-diagonal structure maps
    from .modules import direct_sum_modules

    rr_module_at = {
        c: direct_sum_modules(rep.module_at[c], rep.module_at[c])
        for c in site.objects
    }
    rr_structure = {}
    for m, (s, t) in site.morphisms.items():
        r_s = rep.module_at[s].realization()
        comps = {}
        for n in r_s.complex.degrees():
            block = rep.structure_matrix(m, n)
            comps[n] = la.block_diag([block, block])
        rr_structure[m] = comps
    rr_rep = NetRep(net, rr_module_at, rr_structure)

    # w: precompose with the codiagonal I -> K; column i of L^n goes to the
    # sum of the two degree-0 slots of hom(I, L)
    w_comps = {}
    for c in site.objects:
        r = rep.module_at[c].realization()
        rp = p_module_at[c].realization()
        mats = {}
        for n in r.complex.degrees():
            if not rp.dim(n):
                continue
            mat = la.zeros(rp.dim(n), r.dim(n))
            for i in range(r.dim(n)):
                for j in (0, 1):
                    row = p_index[c].get((0, i, j, n))
                    if row is not None:
                        mat[row][i] = ONE
            mats[n] = mat
        w_comps[c] = mats
    w = RepMorphism(rep, p_rep, w_comps)

    # f: restrict to the two endpoints; slot (0, i, j, n) projects to copy j
    f_comps = {}
    for c in site.objects:
        r = rep.module_at[c].realization()
        rp = p_module_at[c].realization()
        mats = {}
        for n in r.complex.degrees():
            if not rp.dim(n):
                continue
            mat = la.zeros(2 * r.dim(n), rp.dim(n))
            for i in range(r.dim(n)):
                for j in (0, 1):
                    col = p_index[c].get((0, i, j, n))
                    if col is not None:
                        mat[j * r.dim(n) + i][col] = ONE
            mats[n] = mat
        f_comps[c] = mats
    f = RepMorphism(p_rep, rr_rep, f_comps)
    return p_rep, w, f, rr_rep


def diagonal_rep_morphism(rep, rr_rep):
    """The diagonal R -> R x R."""
    comps = {}
    for c in rep.net.site.objects:
        r = rep.module_at[c].realization()
        mats = {}
        for n in r.complex.degrees():
            mat = la.zeros(2 * r.dim(n), r.dim(n))
            for i in range(r.dim(n)):
                mat[i][i] = ONE
                mat[r.dim(n) + i][i] = ONE
            mats[n] = mat
        comps[c] = mats
    return RepMorphism(rep, rr_rep, comps, check=False)
