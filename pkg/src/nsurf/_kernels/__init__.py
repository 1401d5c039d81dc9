"""Kernel selection.

The compiled extension (_fast) is preferred when present; the pure
Python twin (_pure) is always available.  The compiled kernels bail out
with OverflowError when intermediate values might not fit in 64 bits, in
which case the call is transparently retried in pure Python, which uses
unbounded integers.
"""

from . import _pure

try:
    from . import _fast
    IMPLEMENTATION = "compiled"
except ImportError:          # extension not built
    _fast = None
    IMPLEMENTATION = "pure"


def dd_pairs(*args):
    if _fast is not None:
        try:
            return _fast.dd_pairs(*args)
        except OverflowError:
            pass
    return _pure.dd_pairs(*args)


def enumerate_solutions(*args):
    if _fast is not None:
        try:
            return _fast.enumerate_solutions(*args)
        except OverflowError:
            pass
    return _pure.enumerate_solutions(*args)
