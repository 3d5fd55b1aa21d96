"""Bridging mpmath (public numeric type) and gmpy2 (inner loops).

Conversions are exact: mantissa/exponent pairs are copied, never rounded
through decimal strings.
"""

from __future__ import annotations

import gmpy2
import mpmath
from gmpy2 import mpc, mpfr
from mpmath.libmp import from_man_exp


def mpf_to_gmpy(x) -> mpfr:
    if not isinstance(x, mpmath.mpf):
        x = mpmath.mpf(x)
    sign, man, exp, bc = x._mpf_
    if not man:
        if x != 0:
            raise ValueError(f"non-finite value {x}")
        return mpfr(0, max(bc, 2))
    r = gmpy2.mul_2exp(mpfr(gmpy2.mpz(man), max(int(bc), 2)), int(exp))
    return -r if sign else r


def mpc_to_gmpy(z) -> mpc:
    if isinstance(z, mpmath.mpf):
        return mpc(mpf_to_gmpy(z), 0)
    if not isinstance(z, mpmath.mpc):
        z = mpmath.mpc(z)
    return mpc(mpf_to_gmpy(z.real), mpf_to_gmpy(z.imag))


def gmpy_to_mpf(x: mpfr):
    if x == 0:
        return mpmath.mpf(0)
    man, exp = x.as_mantissa_exp()
    out = mpmath.mpf.__new__(mpmath.mpf)
    out._mpf_ = from_man_exp(int(man), int(exp))
    return out


def gmpy_to_mpc(z: mpc):
    out = mpmath.mpc.__new__(mpmath.mpc)
    out._mpc_ = (gmpy_to_mpf(z.real)._mpf_, gmpy_to_mpf(z.imag)._mpf_)
    return out


def parse_decimal(text) -> "mpmath.mpf":
    """Decimal string to mpf at the current mpmath precision."""
    if isinstance(text, float):
        return mpmath.mpf(text)
    return mpmath.mpf(str(text))


def to_decimal(x, digits: int) -> str:
    return mpmath.nstr(mpmath.mpf(x), digits)


def bits_to_digits(p: int) -> int:
    return max(5, int(p * 0.30103) + 1)
