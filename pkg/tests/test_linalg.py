"""Exact linear algebra over the Gaussian rationals."""

from hypothesis import given, strategies as st

from dgnet import linalg as la
from dgnet._ratback import rat
from dgnet.scalar import ONE, QQi, ZERO

entries = st.builds(
    QQi,
    st.builds(rat, st.integers(-9, 9), st.integers(1, 4)),
    st.builds(rat, st.integers(-9, 9), st.integers(1, 4)),
)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda m: st.integers(1, max_cols).flatmap(
            lambda n: st.lists(
                st.lists(entries, min_size=n, max_size=n),
                min_size=m,
                max_size=m,
            )
        )
    )


@given(matrices())
def test_rref_idempotent(a):
    r, pivots = la.rref(a)
    r2, pivots2 = la.rref(r)
    assert la.eq(r, r2)
    assert pivots == pivots2


@given(matrices())
def test_rank_bounds(a):
    m, n = la.shape(a)
    r = la.rank(a)
    assert 0 <= r <= min(m, n)
    assert r == la.rank(la.transpose(a))


@given(matrices())
def test_rank_nullity(a):
    m, n = la.shape(a)
    ns = la.nullspace(a)
    assert la.rank(a) + len(ns) == n
    for col in ns:
        out = la.matvec(a, col)
        assert all(not x for x in out)


@given(matrices(3, 3), st.lists(entries, min_size=3, max_size=3))
def test_solve_consistent_system(a, x):
    n = la.shape(a)[1]
    x = x[:n]
    b = [[v] for v in la.matvec(a, x)]
    sol = la.solve(a, b)
    assert sol is not None
    assert all(u == v[0] for u, v in zip(la.matvec(a, [r[0] for r in sol]), b))


def test_solve_inconsistent():
    a = [[ONE], [ONE]]
    b = [[ONE], [ZERO]]
    assert la.solve(a, b) is None


@given(matrices(3, 3), matrices(3, 3), matrices(3, 3))
def test_matmul_associative(a, b, c):
    if la.shape(a)[1] != la.shape(b)[0] or la.shape(b)[1] != la.shape(c)[0]:
        return
    assert la.eq(la.matmul(la.matmul(a, b), c), la.matmul(a, la.matmul(b, c)))


@given(matrices())
def test_identity_neutral(a):
    m, n = la.shape(a)
    assert la.eq(la.matmul(la.identity(m), a), a)
    assert la.eq(la.matmul(a, la.identity(n)), a)


@given(matrices(3, 3), matrices(3, 3))
def test_block_diag_rank_additive(a, b):
    d = la.block_diag([a, b])
    assert la.rank(d) == la.rank(a) + la.rank(b)
    ma, na = la.shape(a)
    mb, nb = la.shape(b)
    assert la.shape(d) == (ma + mb, na + nb)


@given(matrices(3, 3), matrices(2, 2))
def test_kron_rank_multiplicative(a, b):
    assert la.rank(la.kron(a, b)) == la.rank(a) * la.rank(b)


@given(matrices())
def test_columns_round_trip(a):
    assert la.eq(la.from_columns(la.columns(a), la.shape(a)[0]), a)


@given(matrices())
def test_dump_parse_round_trip(a):
    assert la.eq(la.parse_matrix(la.dump_matrix(a)), a)


@given(matrices(3, 3))
def test_hstack_shapes(a):
    m, n = la.shape(a)
    h = la.hstack(a, a)
    assert la.shape(h) == (m, 2 * n)
    assert la.rank(h) == la.rank(a)
