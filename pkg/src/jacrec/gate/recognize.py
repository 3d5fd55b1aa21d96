"""Recognizing rationals and their square classes from high-precision reals."""

from __future__ import annotations

from fractions import Fraction

import gmpy2
import mpmath
import sympy

from ..errors import InvalidInput


def _small_squarefree(limit: int) -> tuple[int, ...]:
    out = []
    for d in range(1, limit):
        if all(e == 1 for e in sympy.factorint(d).values()):
            out += [d, -d]
    return tuple(out)


#: squarefree D tried when x itself has no admissible convergent; see recognize_square_class
SMALL_SQUAREFREE = _small_squarefree(60)


def _convergents(x, max_den: int):
    """Continued-fraction convergents a/b of the mpf ``x`` with b <= max_den."""
    h0, h1 = 0, 1
    k0, k1 = 1, 0
    y = x
    for _ in range(4 * max_den.bit_length() + 8):
        a = int(mpmath.floor(y))
        h0, h1 = h1, a * h1 + h0
        k0, k1 = k1, a * k1 + k0
        if k1 > max_den:
            return
        yield h1, k1
        frac = y - a
        if frac == 0:
            return
        y = 1 / frac


def rational_reconstruct(x, p: int, margin_bits: int = 0) -> Fraction | None:
    """Smallest-denominator convergent a/b of x that explains it to p bits.

    ``x`` is trusted to p bits, so every residual carries an extra |x| 2^{-p}.
    Accepted when b < 2^{p/4}, the residual is below 2^{-p/2} max(1, |x|),
    and b^2 times the residual is below 2^{-p/8}.  The last condition asks
    the fit to be far better than continued fractions give for a generic
    real (where b^2 times the error is about 1 / next partial quotient); it
    also rejects values too large for their integer part to be known.
    ``margin_bits`` tightens that condition when many candidates are tried.
    """
    with mpmath.workprec(max(p, 53) + 64):
        x = mpmath.mpf(x)
        if not mpmath.isfinite(x):
            return None
        max_den = 1 << max(1, p // 4)
        bound_rel = mpmath.ldexp(1, -(p // 2)) * max(1, abs(x))
        bound_sq = mpmath.ldexp(1, -(p // 8) - margin_bits)
        noise = abs(x) * mpmath.ldexp(1, -p)
        for a, b in _convergents(x, max_den):
            err = abs(x - mpmath.mpf(a) / b) + noise
            if err < bound_rel and b * b * err < bound_sq:
                return Fraction(a, b)
    return None


def squarefree_part(n: int) -> int:
    """Squarefree s > 0 with n / s a square (n > 0)."""
    if n <= 0:
        raise InvalidInput("squarefree_part needs a positive integer")
    s = 1
    for prime, e in sympy.factorint(n, limit=1 << 16).items():
        if gmpy2.is_prime(prime) or prime < 1 << 32:
            if e % 2:
                s *= prime
            n //= prime**e
    # what is left has no prime factor below 2^16; finish cheaply if it is a square
    if n > 1 and not gmpy2.is_square(n):
        for prime, e in sympy.factorint(n).items():
            if e % 2:
                s *= prime
    return s


def square_class(q) -> int:
    """Squarefree integer D with q = D r^2 for some rational r."""
    q = Fraction(q)
    if q == 0:
        raise InvalidInput("0 has no square class")
    sign = -1 if q < 0 else 1
    return sign * squarefree_part(abs(q.numerator) * q.denominator)


def recognize_square_class(x, p: int, candidates=SMALL_SQUAREFREE) -> tuple[Fraction, int] | None:
    """Recognize x as a rational q and return (q, square_class(q)).

    First x itself is reconstructed.  Failing that, sqrt(x / D) is tried for
    small squarefree D of the sign of x; this recognizes D r^2 whose r has
    a small height even when q's own denominator is beyond 2^{p/4}.
    """
    q = rational_reconstruct(x, p)
    if q is not None and q != 0:
        return q, square_class(q)
    with mpmath.workprec(max(p, 53) + 64):
        x = mpmath.mpf(x)
        if x == 0:
            return None
        margin = max(1, len(candidates)).bit_length()
        for D in candidates:
            if (D > 0) != (x > 0):
                continue
            r = rational_reconstruct(mpmath.sqrt(x / D), p, margin)
            if r is not None and r != 0:
                return D * r * r, D
    return None
