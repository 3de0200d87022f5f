"""Scalar/array arithmetic backends.

Closed-form evaluators are written once against a tiny namespace
(``cos``, ``sin``, ``pow``, ``num``) so that the same expression runs on
numpy arrays for meshing and on gmpy2 ``mpfr`` scalars for the
extended-precision finite-difference oracle.
"""

from __future__ import annotations

import contextlib
import functools
from fractions import Fraction
from types import SimpleNamespace

import gmpy2
import numpy as np


def exponent(q):
    """Return ``q`` as an ``int`` when it is integral, else as a Fraction."""
    q = Fraction(q).limit_denominator(10**6) if isinstance(q, float) else Fraction(q)
    return int(q) if q.denominator == 1 else q


def is_integral(q) -> bool:
    return isinstance(exponent(q), int)


def _np_num(q):
    return float(q)


def _np_pow(base, k):
    # integral exponents keep negative bases real
    if isinstance(k, int):
        return np.power(np.asarray(base, dtype=float), float(k))
    return np.power(base, float(k))


NUMPY = SimpleNamespace(
    name="float64",
    cos=np.cos,
    sin=np.sin,
    pow=_np_pow,
    num=_np_num,
    sqrt=np.sqrt,
)


@functools.lru_cache(maxsize=1024)
def _mp_const(num, den, bits):
    return gmpy2.mpfr(gmpy2.mpq(num, den))


def _mp_num(q):
    # keyed on integer pairs: hashing a Fraction is slow
    if isinstance(q, Fraction):
        return _mp_const(q.numerator, q.denominator, gmpy2.get_context().precision)
    if isinstance(q, int):
        return _mp_const(q, 1, gmpy2.get_context().precision)
    return gmpy2.mpfr(q)


def _mp_pow(base, k):
    if isinstance(k, int):
        return base**k
    return base ** _mp_num(k)


MPFR = SimpleNamespace(
    name="mpfr",
    cos=gmpy2.cos,
    sin=gmpy2.sin,
    pow=_mp_pow,
    num=_mp_num,
    sqrt=gmpy2.sqrt,
)


@contextlib.contextmanager
def working_precision(bits: int):
    """Context manager setting the gmpy2 precision for the current thread."""
    with gmpy2.context(gmpy2.get_context(), precision=bits):
        yield
