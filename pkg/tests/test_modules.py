"""Left modules over presented DGAs and the change-of-monoid adjunction."""

import pytest

from dgnet import linalg as la
from dgnet.freealg import DGAMorphism, GeneratorSpec, PresentedDGA, pbw_monomials
from dgnet.maxwell import ccr_algebra
from dgnet.modules import (
    ModuleMorphism,
    adjunction_counit,
    adjunction_unit,
    compose_module_morphisms,
    direct_sum_modules,
    extend,
    extend_morphism,
    free_module,
    identity_module_morphism,
    is_fib_module,
    is_we_module,
    module_morphism_eq,
    regular_module,
    restrict,
    restrict_morphism,
    validate_module_morphism,
)
from dgnet.scalar import ONE, ZERO


def bosonic_algebra(cutoff=3):
    return PresentedDGA(
        [GeneratorSpec("a1", 0, {}), GeneratorSpec("a2", 0, {})],
        tau={("a2", "a1"): 1},
        word_cutoff=cutoff,
    )


def inclusion_pair(cutoff=3):
    """The two bosonic generators included into the four-generator algebra."""
    b = bosonic_algebra(cutoff)
    a = ccr_algebra(cutoff)
    phi = DGAMorphism(b, a, {"a1": a.gen("a1"), "a2": a.gen("a2")})
    return b, a, phi


def collapse_pair(cutoff=3):
    """A contractible pair adjoined to one generator, collapsed onto it."""
    src = PresentedDGA(
        [
            GeneratorSpec("w", -1, {"q": 1}),
            GeneratorSpec("v", 0, {}),
            GeneratorSpec("q", 0, {}),
        ],
        word_cutoff=cutoff,
    )
    tgt = PresentedDGA([GeneratorSpec("u", 0, {})], word_cutoff=cutoff)
    phi = DGAMorphism(
        src, tgt, {"w": tgt.zero(), "q": tgt.zero(), "v": tgt.gen("u")}
    )
    return src, tgt, phi


def test_regular_module_realizes_pbw_basis():
    a = ccr_algebra(3)
    r = regular_module(a, 3).realization()
    by_degree = {}
    for w in pbw_monomials(a, 3):
        n = a.word_degree(w)
        by_degree[n] = by_degree.get(n, 0) + 1
    assert {n: r.dim(n) for n in r.complex.degrees()} == by_degree


def test_regular_module_action_is_left_multiplication():
    a = ccr_algebra(2)
    r = regular_module(a, 2).realization()
    # acting by a1 on the basis vector of the word (a2,) gives the normal
    # form of a1 * a2 = a2 a1 + i tau(a1, a2)
    j = r.basis[0].index((("a2",), "m"))
    col = [ZERO] * r.dim(0)
    col[j] = ONE
    out = la.matvec(r.action_matrix("a1", 0), col)
    expect = a.normal_form({("a1", "a2"): 1})
    got = {
        r.basis[0][i][0]: c for i, c in enumerate(out) if c
    }
    assert got == expect.terms


def test_free_module_dims_scale_with_generators():
    b = bosonic_algebra(2)
    m1 = free_module(b, [("x", 0)])
    m2 = free_module(b, [("x", 0), ("y", 0)])
    r1, r2 = m1.realization(), m2.realization()
    assert all(r2.dim(n) == 2 * r1.dim(n) for n in r1.complex.degrees())


def test_direct_sum_dims():
    b = bosonic_algebra(2)
    m = free_module(b, [("x", 0)])
    s = direct_sum_modules(m, m)
    rm, rs = m.realization(), s.realization()
    assert all(rs.dim(n) == 2 * rm.dim(n) for n in rm.complex.degrees())


def test_restrict_keeps_complex():
    b, a, phi = inclusion_pair()
    m = regular_module(a, 2)
    res = restrict(m, phi)
    rm, rr = m.realization(), res.realization()
    assert rm.complex.dims == rr.complex.dims
    assert res.algebra is b


def test_extend_regular_module_of_collapse():
    src, tgt, phi = collapse_pair(2)
    m = regular_module(src, 2)
    ext = extend(m, phi)
    assert ext.algebra is tgt
    ext.realization()


@pytest.mark.parametrize("pair", [inclusion_pair, collapse_pair])
def test_triangle_identity_extension_side(pair):
    """counit . extend(unit) is the identity of the extended module."""
    src_alg, _, phi = pair(2)
    for mk in (
        lambda: regular_module(src_alg, 2),
        lambda: free_module(src_alg, [("x", 0), ("y", 1)]),
    ):
        l = mk()
        unit, ext_l, res_ext = adjunction_unit(l, phi)
        validate_module_morphism(unit)
        counit, _, ext_res_ext = adjunction_counit(
            ext_l, phi, restricted=res_ext
        )
        ext_unit = extend_morphism(unit, phi, source=ext_l, target=ext_res_ext)
        comp = compose_module_morphisms(counit, ext_unit)
        assert module_morphism_eq(comp, identity_module_morphism(ext_l))


@pytest.mark.parametrize("pair", [inclusion_pair, collapse_pair])
def test_triangle_identity_restriction_side(pair):
    """restrict(counit) . unit is the identity of the restricted module."""
    _, tgt_alg, phi = pair(2)
    for mk in (
        lambda: regular_module(tgt_alg, 2),
        lambda: free_module(tgt_alg, [("x", 0)]),
    ):
        m = mk()
        counit, res_m, ext_res = adjunction_counit(m, phi)
        validate_module_morphism(counit)
        unit, _, res_ext_res = adjunction_unit(res_m, phi, extended=ext_res)
        res_counit = restrict_morphism(
            counit, phi, source=res_ext_res, target=res_m
        )
        comp = compose_module_morphisms(res_counit, unit)
        assert module_morphism_eq(comp, identity_module_morphism(res_m))


def test_identity_is_we_and_fib():
    b = bosonic_algebra(2)
    m = regular_module(b, 2)
    idm = identity_module_morphism(m)
    assert is_we_module(idm)
    assert is_fib_module(idm)


def test_projection_is_fib_not_we():
    b = bosonic_algebra(2)
    m = free_module(b, [("x", 0)])
    s = direct_sum_modules(m, m)
    rs, rm = s.realization(), m.realization()
    comps = {}
    for n in rs.complex.degrees():
        if not rm.dim(n):
            continue
        mat = la.zeros(rm.dim(n), rs.dim(n))
        for i in range(rm.dim(n)):
            mat[i][i] = ONE
        comps[n] = mat
    proj = ModuleMorphism(s, m, comps, check=False)
    assert is_fib_module(proj)
    assert not is_we_module(proj)


def test_morphism_validation_rejects_non_equivariant():
    b = bosonic_algebra(2)
    m = regular_module(b, 2)
    r = m.realization()
    comps = {n: la.zeros(r.dim(n), r.dim(n)) for n in r.complex.degrees()}
    # send the unit to itself but kill everything else: not a module map
    comps[0][0][0] = ONE
    bad = ModuleMorphism(m, m, comps, check=False)
    with pytest.raises(ValueError):
        validate_module_morphism(bad)
