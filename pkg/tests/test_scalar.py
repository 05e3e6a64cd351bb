"""Exact Gaussian-rational arithmetic."""

import pytest
from hypothesis import given, strategies as st

from dgnet._ratback import Rat, rat
from dgnet.scalar import I, MINUS_ONE, ONE, QQi, ZERO, qq

rationals = st.builds(
    rat,
    st.integers(min_value=-50, max_value=50),
    st.integers(min_value=1, max_value=20),
)
scalars = st.builds(QQi, rationals, rationals)


def test_constants():
    assert ZERO == 0
    assert ONE == 1
    assert MINUS_ONE == -1
    assert I * I == MINUS_ONE
    assert not ZERO
    assert ONE


def test_parse_forms():
    assert QQi.parse(3) == QQi(3)
    assert QQi.parse(Rat(1, 2)) == qq(1, 2)
    assert QQi.parse([1, 2, -3, 4]) == QQi(rat(1, 2), rat(-3, 4))
    x = QQi(rat(2, 3), rat(-1, 7))
    assert QQi.parse(x) is x
    with pytest.raises(ValueError):
        QQi.parse([1, 2, 3])


@given(scalars)
def test_tuple_round_trip(x):
    assert QQi.parse(x.to_tuple()) == x


@given(scalars, scalars, scalars)
def test_ring_axioms(x, y, z):
    assert (x + y) + z == x + (y + z)
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert x + y == y + x
    assert x * y == y * x
    assert x + ZERO == x
    assert x * ONE == x
    assert x + (-x) == ZERO


@given(scalars)
def test_field_inverse(x):
    if x:
        assert x * x.inv() == ONE
    else:
        with pytest.raises(ZeroDivisionError):
            x.inv()


@given(scalars, scalars)
def test_division(x, y):
    if y:
        assert (x / y) * y == x


@given(scalars, scalars)
def test_conjugation(x, y):
    assert x.conj().conj() == x
    assert (x * y).conj() == x.conj() * y.conj()
    assert (x + y).conj() == x.conj() + y.conj()
    # x * conj(x) is a nonnegative rational
    n = x * x.conj()
    assert n.is_rational()
    assert n.re >= 0


@given(scalars)
def test_complex_embedding(x):
    z = complex(x)
    assert abs(z.real - float(x.re)) < 1e-12
    assert abs(z.imag - float(x.im)) < 1e-12


def test_immutable_and_hashable():
    x = qq(1, 2)
    with pytest.raises(AttributeError):
        x.re = Rat(1)
    assert len({qq(1, 2), QQi(rat(1, 2)), qq(1, 3)}) == 2


@given(st.integers(-100, 100), scalars)
def test_int_coercion(n, x):
    assert n + x == QQi(n) + x
    assert n * x == QQi(n) * x
    assert n - x == QQi(n) - x
