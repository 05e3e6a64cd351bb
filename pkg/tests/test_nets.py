"""Nets of algebras over finite sites and their representations."""

import random

import pytest

from _categorical import (
    change_of_net_triangle_extension,
    change_of_net_triangle_restriction,
    eval_const_triangle_const,
    eval_const_triangle_eval,
    free_forget_triangle_forget,
    free_forget_triangle_free,
    free_instance,
    path_object_factorization_ok,
    random_collection,
    restriction_preserves_flags,
)
from dgnet import linalg as la
from dgnet.complexes import CochainComplex, GradedSpace
from dgnet.maxwell.kg import net_regular_rep
from dgnet.modules import regular_module
from dgnet.nets import (
    NetRep,
    change_of_net_res,
    free_rep,
    is_fib_rep,
    is_we_net,
    is_we_rep,
    identity_rep_morphism,
    poset_site,
    quillen_unit_check_net,
    validate_net,
    validate_rep,
)


def test_poset_site_structure():
    site = poset_site(["a", "b", "c"], [("a", "b"), ("a", "c"), ("b", "c")])
    assert len(site.morphisms) == 6
    assert site.hom("a", "c") == ["a<=c"]
    assert site.hom("c", "a") == []
    assert site.compose("b<=c", "a<=b") == "a<=c"
    assert site.identity["a"] == "a<=a"


def test_poset_site_requires_transitivity():
    with pytest.raises(ValueError):
        poset_site(["a", "b", "c"], [("a", "b"), ("b", "c")])


def test_kg_nets_validate(kg):
    validate_net(kg.net)
    validate_net(kg.net_bv)
    kg.phi.validate()


def test_regular_rep_validates(kg):
    rep = net_regular_rep(kg.net, 2)
    validate_rep(rep)


def test_validate_rep_rejects_broken_structure(kg):
    rep = net_regular_rep(kg.net, 2)
    m = "U0<=M"
    broken = {
        mm: ({n: la.zeros(*la.shape(mat)) for n, mat in comp.items()}
             if mm == m else comp)
        for mm, comp in rep.structure_map_at.items()
    }
    with pytest.raises(ValueError):
        NetRep(kg.net, rep.module_at, broken)


def test_is_we_net(kg):
    assert is_we_net(kg.phi, 2)


def test_identity_rep_morphism_flags(kg):
    rep = net_regular_rep(kg.net, 2)
    idm = identity_rep_morphism(rep)
    assert is_we_rep(idm)
    assert is_fib_rep(idm)


def test_change_of_net_triangles(kg):
    x = net_regular_rep(kg.net_bv, 2)
    assert change_of_net_triangle_extension(x, kg.phi)
    y = net_regular_rep(kg.net, 2)
    assert change_of_net_triangle_restriction(y, kg.phi)


@pytest.mark.parametrize("c_tilde", ["M", "U0"])
def test_eval_const_triangles(kg, c_tilde):
    rep = net_regular_rep(kg.net, 2)
    assert eval_const_triangle_eval(rep, c_tilde)
    module = regular_module(kg.net.algebra(c_tilde), 2)
    assert eval_const_triangle_const(kg.net, module, c_tilde)


def test_free_forget_triangles(kg):
    # free(forget(free V)) grows quickly in the collection size, so keep
    # the generating collections to one basis vector
    v = CochainComplex(GradedSpace({0: ["x"]}), {})
    assert free_forget_triangle_free(kg.net, {"M": v})
    assert free_forget_triangle_free(kg.net, {"U0": v})
    rep = free_rep(kg.net, {"M": v})
    assert free_forget_triangle_forget(rep)


def test_path_object_factorization(kg):
    rep = net_regular_rep(kg.net, 1)
    assert path_object_factorization_ok(rep)
    rng = random.Random(11)
    fr = free_rep(kg.net, random_collection(kg.net.site.objects, rng))
    assert path_object_factorization_ok(fr)


@pytest.mark.parametrize("kind", ["iso", "surjective", "random"])
def test_restriction_preserves_flags(kg, kind):
    rng = random.Random(hash(kind) % 1000)
    f = free_instance(kg.net, rng, kind)
    assert restriction_preserves_flags(f, kg.phi)


def test_restriction_keeps_complexes(kg):
    rep = net_regular_rep(kg.net, 2)
    res = change_of_net_res(rep, kg.phi)
    for c in kg.net.site.objects:
        assert (res.module_at[c].realization().complex.dims
                == rep.module_at[c].realization().complex.dims)
        assert res.module_at[c].algebra is kg.net_bv.algebra(c)


def test_quillen_unit_on_free_rep(kg):
    v = CochainComplex(GradedSpace({0: ["x"]}), {})
    first = kg.net_bv.site.objects[0]
    fr = free_rep(kg.net_bv, {first: v})
    assert quillen_unit_check_net(kg.phi, fr)
