"""Gaussian rational scalars a + b*i with exact arithmetic."""

from __future__ import annotations

from ._ratback import Rat, rat


class QQi:
    """An element of the field Q(i), stored as exact rational parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is Rat else Rat(re))
        object.__setattr__(self, "im", im if type(im) is Rat else Rat(im))

    def __setattr__(self, name, value):
        raise AttributeError("QQi is immutable")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def from_rational(num, den=1, num_i=0, den_i=1):
        return QQi(rat(num, den), rat(num_i, den_i))

    @staticmethod
    def parse(obj):
        """Accept ints, rationals, QQi, or a 4-tuple [num,den,num_i,den_i]."""
        if isinstance(obj, QQi):
            return obj
        if isinstance(obj, (list, tuple)):
            if len(obj) != 4:
                raise ValueError("scalar tuples have 4 entries")
            return QQi.from_rational(*obj)
        return QQi(Rat(obj))

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QQi(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QQi(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return QQi(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is None:
            raise TypeError("cannot divide Q(i) by %r" % (other,))
        n = other.re * other.re + other.im * other.im
        if not n:
            raise ZeroDivisionError("division by zero in Q(i)")
        return QQi(
            (self.re * other.re + self.im * other.im) / n,
            (self.im * other.re - self.re * other.im) / n,
        )

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is None:
            return NotImplemented
        return other / self

    def __neg__(self):
        return QQi(-self.re, -self.im)

    def __pos__(self):
        return self

    def conj(self):
        return QQi(self.re, -self.im)

    def inv(self):
        return ONE / self

    # -- predicates and conversions ------------------------------------

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_rational(self):
        return not self.im

    def __eq__(self, other):
        if isinstance(other, (int, QQi)) or type(other) is Rat:
            other = _coerce(other)
            return self.re == other.re and self.im == other.im
        return NotImplemented

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def to_tuple(self):
        """JSON wire form [num, den, num_i, den_i]."""
        return [
            int(self.re.numerator),
            int(self.re.denominator),
            int(self.im.numerator),
            int(self.im.denominator),
        ]

    def __repr__(self):
        if not self.im:
            return str(self.re)
        if not self.re:
            return "%s*i" % self.im
        return "(%s%s%s*i)" % (self.re, "+" if self.im > 0 else "-", abs(self.im))


def _coerce(x):
    """QQi from an int / rational / QQi, or None when not coercible."""
    if isinstance(x, QQi):
        return x
    if isinstance(x, int) or type(x) is Rat:
        return QQi(Rat(x))
    return None


ZERO = QQi(0)
ONE = QQi(1)
I = QQi(0, 1)
MINUS_ONE = QQi(-1)


def qq(num, den=1):
    """Shorthand for the rational num/den as a QQi."""
    return QQi(rat(num, den))
