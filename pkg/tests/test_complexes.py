"""Exact cochain complexes: cohomology, operations, wire format."""

import pytest
from hypothesis import given, strategies as st

from dgnet import linalg as la
from dgnet._ratback import rat
from dgnet.complexes import (
    CochainComplex,
    CochainMap,
    GradedSpace,
    cohomology,
    complex_from_json,
    complex_to_json,
    compose,
    direct_sum,
    euler_characteristic,
    identity_map,
    internal_hom,
    interval_object,
    is_quasi_iso,
    shift,
    tensor,
    unit_complex,
    validate_complex,
    validate_map,
    zero_complex,
    zero_map,
)
from dgnet.scalar import ONE, QQi

entries = st.builds(
    QQi,
    st.builds(rat, st.integers(-5, 5), st.integers(1, 3)),
    st.builds(rat, st.integers(-5, 5), st.integers(1, 3)),
)


@st.composite
def two_term_complexes(draw, max_dim=3):
    """A complex concentrated in degrees 0, 1 (d.d = 0 holds trivially)."""
    n0 = draw(st.integers(1, max_dim))
    n1 = draw(st.integers(1, max_dim))
    mat = draw(
        st.lists(
            st.lists(entries, min_size=n0, max_size=n0),
            min_size=n1,
            max_size=n1,
        )
    )
    space = GradedSpace(
        {0: ["v%d" % j for j in range(n0)], 1: ["w%d" % j for j in range(n1)]}
    )
    return CochainComplex(space, {0: mat})


def test_unit_and_zero():
    u = unit_complex()
    assert cohomology(u).dims == {0: 1}
    assert cohomology(zero_complex()).dims == {}


def test_interval_is_resolution():
    i_cx, b, r = interval_object()
    validate_map(b)
    validate_map(r)
    assert is_quasi_iso(r)
    assert cohomology(i_cx).dims == {0: 1}


def test_d_squared_rejected():
    space = GradedSpace({0: ["a"], 1: ["b"], 2: ["c"]})
    with pytest.raises(ValueError):
        CochainComplex(space, {0: [[ONE]], 1: [[ONE]]})


def test_non_chain_map_rejected():
    i_cx, _, _ = interval_object()
    bad0 = [[ONE, QQi(0)], [QQi(0), QQi(0)]]
    with pytest.raises(ValueError):
        CochainMap(i_cx, i_cx, {-1: [[ONE]], 0: bad0})


@given(two_term_complexes())
def test_two_term_cohomology_by_rank(c):
    r = la.rank(c.d(0))
    rep = cohomology(c)
    expected = {}
    if c.dim(0) - r:
        expected[0] = c.dim(0) - r
    if c.dim(1) - r:
        expected[1] = c.dim(1) - r
    assert rep.dims == expected
    # representatives are cocycles and linearly independent
    for n, cols in rep.representatives.items():
        if cols and c.dim(n + 1):
            for col in cols:
                assert all(not x for x in la.matvec(c.d(n), col))
        assert la.rank(la.from_columns(cols, c.dim(n))) == len(cols)


@given(two_term_complexes())
def test_euler_characteristic_invariance(c):
    assert euler_characteristic(c.dims) == euler_characteristic(cohomology(c).dims)


@given(two_term_complexes(), two_term_complexes())
def test_tensor_kunneth_dims(c, d):
    t = tensor(c, d)
    validate_complex(t)
    hc, hd, ht = cohomology(c).dims, cohomology(d).dims, cohomology(t).dims
    expected = {}
    for n1, d1 in hc.items():
        for n2, d2 in hd.items():
            expected[n1 + n2] = expected.get(n1 + n2, 0) + d1 * d2
    assert ht == {n: k for n, k in expected.items() if k}


@given(two_term_complexes(), two_term_complexes())
def test_internal_hom_dims(c, d):
    h = internal_hom(c, d)
    validate_complex(h)
    for n in h.degrees():
        assert h.dim(n) == sum(c.dim(k) * d.dim(k + n) for k in c.degrees())


@given(two_term_complexes(), st.integers(-2, 2))
def test_shift_cohomology(c, k):
    s = shift(c, k)
    validate_complex(s)
    assert cohomology(s).dims == {
        n - k: d for n, d in cohomology(c).dims.items()
    }


@given(two_term_complexes(), two_term_complexes())
def test_direct_sum_cohomology(c, d):
    s = direct_sum([c, d])
    hc, hd = cohomology(c).dims, cohomology(d).dims
    expected = {
        n: hc.get(n, 0) + hd.get(n, 0) for n in set(hc) | set(hd)
    }
    assert cohomology(s).dims == {n: k for n, k in expected.items() if k}


@given(two_term_complexes())
def test_identity_is_quasi_iso(c):
    assert is_quasi_iso(identity_map(c))


@given(two_term_complexes())
def test_zero_map_quasi_iso_iff_acyclic(c):
    f = zero_map(c, zero_complex())
    assert is_quasi_iso(f) == (not cohomology(c).dims)


@given(two_term_complexes())
def test_compose_with_identity(c):
    f = identity_map(c)
    g = compose(f, f)
    for n in c.degrees():
        assert la.eq(g.f(n), f.f(n))


@given(two_term_complexes())
def test_json_round_trip(c):
    c2 = complex_from_json(complex_to_json(c))
    assert c2.dims == c.dims
    for n in c.degrees():
        assert c2.basis_labels(n) == [str(l) for l in c.basis_labels(n)]
        assert la.eq(c2.d(n), c.d(n))
