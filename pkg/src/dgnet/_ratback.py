"""Exact rational backend selection.

The inner loops of row reduction and rewriting spend their time in rational
arithmetic.  gmpy2's compiled ``mpq`` is used when available; the pure-Python
``fractions.Fraction`` is the fallback.  Both expose ``.numerator`` /
``.denominator`` and interoperate with ints, which is all the rest of the
package relies on.  Set ``DGNET_EXACT_BACKEND=fraction`` to force the
fallback (used by the benchmark).
"""

import os
from fractions import Fraction

BACKEND = "fraction"
Rat = Fraction

if os.environ.get("DGNET_EXACT_BACKEND", "").lower() not in ("fraction", "py"):
    try:
        from gmpy2 import mpq as _mpq

        Rat = _mpq
        BACKEND = "gmpy2"
    except ImportError:
        pass

RAT_ZERO = Rat(0)
RAT_ONE = Rat(1)


def rat(num, den=1):
    """Exact rational from ints, a string like '3/4', or another rational."""
    if den != 1:
        return Rat(num) / Rat(den)
    return Rat(num)
