"""Helpers for exercising the four adjunctions of net representations.

Shared between the per-module tests and the acceptance suite.  Each triangle
check returns a boolean; instance generators produce seeded random
representation morphisms over a given net.
"""

from __future__ import annotations

import random

from dgnet import linalg as la
from dgnet._ratback import rat
from dgnet.complexes import CochainComplex, CochainMap, GradedSpace, compose
from dgnet.modules import (
    adjunction_counit,
    adjunction_unit,
    compose_module_morphisms,
    extend_morphism,
    identity_module_morphism,
    module_morphism_eq,
    regular_module,
)
from dgnet.nets import (
    RepMorphism,
    change_of_net_counit,
    change_of_net_res,
    change_of_net_unit,
    compose_rep_morphisms,
    const_rep,
    diagonal_rep_morphism,
    eval_const_counit,
    eval_const_unit,
    free_forget_counit,
    free_forget_unit,
    free_rep,
    free_rep_morphism,
    identity_rep_morphism,
    path_object,
    rep_morphism_eq,
)
from dgnet.scalar import QQi


def rand_scalar(rng):
    return QQi(rat(rng.randint(-4, 4), rng.randint(1, 3)),
               rat(rng.randint(-4, 4), rng.randint(1, 3)))


def rand_matrix(rng, m, n):
    return [[rand_scalar(rng) for _ in range(n)] for _ in range(m)]


def random_collection(objects, rng, max_dim=2, tag="v"):
    """Zero-differential complexes in degrees 0 and (sometimes) 1."""
    out = {}
    for c in objects:
        labels = {0: ["%s0:%s:%d" % (tag, c, j)
                      for j in range(rng.randint(1, max_dim))]}
        if rng.random() < 0.5:
            labels[1] = ["%s1:%s:%d" % (tag, c, j)
                         for j in range(rng.randint(1, max_dim))]
        out[c] = CochainComplex(GradedSpace(labels), {})
    return out


def random_collection_map(objects, rng, surjective=False, iso=False):
    """A componentwise cochain map between two random collections.

    With ``iso`` the map is the identity on a shared collection; with
    ``surjective`` the target embeds as a summand and the map projects
    onto it.
    """
    src = random_collection(objects, rng, tag="s")
    if iso:
        maps = {
            c: CochainMap(v, v, {n: la.identity(v.dim(n))
                                 for n in v.degrees()})
            for c, v in src.items()
        }
        return src, src, maps
    if surjective:
        tgt = {}
        maps = {}
        for c, v in src.items():
            labels = {n: v.basis_labels(n)[: max(1, v.dim(n) - 1)]
                      for n in v.degrees()}
            w = CochainComplex(GradedSpace(labels), {})
            comps = {}
            for n in w.degrees():
                mat = la.zeros(w.dim(n), v.dim(n))
                for i in range(w.dim(n)):
                    mat[i][i] = QQi(1)
                comps[n] = mat
            tgt[c] = w
            maps[c] = CochainMap(v, w, comps)
        return src, tgt, maps
    tgt = random_collection(objects, rng, tag="t")
    maps = {}
    for c in objects:
        v, w = src[c], tgt[c]
        comps = {
            n: rand_matrix(rng, w.dim(n), v.dim(n))
            for n in v.degrees()
            if w.dim(n)
        }
        maps[c] = CochainMap(v, w, comps)
    return src, tgt, maps


def free_instance(net, rng, kind="random"):
    """A morphism of free representations induced by a collection map."""
    objects = net.site.objects
    src_c, tgt_c, maps = random_collection_map(
        objects, rng, surjective=(kind == "surjective"), iso=(kind == "iso")
    )
    source = free_rep(net, src_c)
    target = source if kind == "iso" else free_rep(net, tgt_c)
    return free_rep_morphism(net, maps, source, target)


# -- triangle identities ------------------------------------------------------


def change_of_net_triangle_extension(rep, phi):
    """counit . Ext(unit) = id on the extension of a source-net rep."""
    unit, ext_x, res_ext = change_of_net_unit(rep, phi)
    counit, _, ext_res_ext = change_of_net_counit(
        ext_x, phi, restricted=res_ext
    )
    comps = {}
    for c in phi.source.site.objects:
        m = extend_morphism(
            unit.module_morphism(c),
            phi.component(c),
            source=ext_x.module_at[c],
            target=ext_res_ext.module_at[c],
        )
        comps[c] = dict(m.components)
    ext_unit = RepMorphism(ext_x, ext_res_ext, comps, check=False)
    comp = compose_rep_morphisms(counit, ext_unit)
    return rep_morphism_eq(comp, identity_rep_morphism(ext_x))


def change_of_net_triangle_restriction(rep, phi):
    """Res(counit) . unit = id on the restriction of a target-net rep."""
    counit, res_y, ext_res = change_of_net_counit(rep, phi)
    unit, _, res_ext_res = change_of_net_unit(res_y, phi, extended=ext_res)
    # restriction acts trivially on matrices
    res_counit = RepMorphism(res_ext_res, res_y, counit.components,
                             check=False)
    comp = compose_rep_morphisms(res_counit, unit)
    return rep_morphism_eq(comp, identity_rep_morphism(res_y))


def eval_const_triangle_eval(rep, c_tilde):
    """counit . eval(unit) = id on the module of a rep at c_tilde."""
    unit, const = eval_const_unit(rep, c_tilde)
    counit, _ = eval_const_counit(
        rep.net, rep.module_at[c_tilde], c_tilde, const_source=const
    )
    comp = compose_module_morphisms(counit, unit.module_morphism(c_tilde))
    return module_morphism_eq(
        comp, identity_module_morphism(rep.module_at[c_tilde])
    )


def eval_const_triangle_const(net, module, c_tilde):
    """const(counit) . unit = id on the constant rep of a module."""
    counit, crep = eval_const_counit(net, module, c_tilde)
    unit, const2 = eval_const_unit(crep, c_tilde)
    # const on a module morphism: one copy of its matrix per factor
    comps = {}
    for c in net.site.objects:
        homs, _ = crep._const_factors[c]
        r = crep.module_at[c].realization()
        mats = {}
        for n in r.complex.degrees():
            block = counit.f(n)
            mats[n] = la.block_diag([block] * len(homs)) if homs else []
        comps[c] = mats
    const_counit = RepMorphism(const2, crep, comps, check=False)
    comp = compose_rep_morphisms(const_counit, unit)
    return rep_morphism_eq(comp, identity_rep_morphism(crep))


def free_forget_triangle_free(net, collection):
    """counit . free(unit) = id on the free rep of a collection."""
    unit_maps, fr = free_forget_unit(net, collection)
    counit, fr2 = free_forget_counit(fr)
    free_unit = free_rep_morphism(net, unit_maps, fr, fr2)
    comp = compose_rep_morphisms(counit, free_unit)
    return rep_morphism_eq(comp, identity_rep_morphism(fr))


def free_forget_triangle_forget(rep):
    """forget(counit) . unit = id on the underlying collection of a rep."""
    counit, fr = free_forget_counit(rep)
    collection = {
        c: rep.module_at[c].realization().complex
        for c in rep.net.site.objects
    }
    lengths_at = {
        c: dict(rep.module_at[c].realization().lengths)
        for c in rep.net.site.objects
    }
    unit_maps, _ = free_forget_unit(rep.net, collection, free=fr)
    for c in rep.net.site.objects:
        eps_c = counit.module_morphism(c).cochain_map()
        comp = compose(eps_c, unit_maps[c])
        v = collection[c]
        for n in v.degrees():
            if not la.eq(comp.f(n), la.identity(v.dim(n))):
                return False
    return True


def path_object_factorization_ok(rep):
    """w is a componentwise quasi-iso, f a fibration, f . w the diagonal."""
    from dgnet.nets import is_fib_rep, is_we_rep

    p, w, f, rr = path_object(rep)
    if not is_we_rep(w) or not is_fib_rep(f):
        return False
    comp = compose_rep_morphisms(f, w)
    return rep_morphism_eq(comp, diagonal_rep_morphism(rep, rr))


def restriction_preserves_flags(f, phi):
    """Weak-equivalence and fibration flags survive change-of-net
    restriction (which keeps complexes and matrices)."""
    from dgnet.nets import is_fib_rep, is_we_rep

    res_src = change_of_net_res(f.source, phi)
    res_tgt = change_of_net_res(f.target, phi)
    res_f = RepMorphism(res_src, res_tgt, f.components, check=False)
    if is_we_rep(f) and not is_we_rep(res_f):
        return False
    if is_fib_rep(f) and not is_fib_rep(res_f):
        return False
    return True
