"""Exact-arithmetic number theory toolkit.

Pell solution sequences, Diophantine membership search, elliptic curve
arithmetic over Q, complete 2-descent Selmer rank bounds, and the
two-parameter curve family with built-in points. All arithmetic is exact;
integers are python ints, rationals are fractions.Fraction.
"""

try:
    from ._ntkit import *  # noqa: F401,F403  (installed layout: ntkit/_ntkit.so)
    from ._ntkit import __version__  # noqa: F401
except ImportError:  # build-tree layout: _ntkit.so on PYTHONPATH
    from _ntkit import *  # noqa: F401,F403
    from _ntkit import __version__  # noqa: F401
