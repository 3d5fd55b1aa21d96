"""Independent reference computations used by the tests.

Nothing here calls into jacrec's algorithms: resultants come from sympy
determinants, theta values from direct summation or mpmath.jtheta.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

import mpmath
import sympy

X, Y, Z = sympy.symbols("x y z")


def form_expr(F):
    return sum(sympy.Rational(c.numerator, c.denominator) * X**i * Y**j * Z**k for (i, j, k), c in F.coeffs.items())


def linear_resultant(rows) -> Fraction:
    """Res of three linear forms = det of their coefficient matrix."""
    d = sympy.Matrix(rows).det()
    return Fraction(int(sympy.fraction(d)[0]), int(sympy.fraction(d)[1]))


def sylvester(a, b) -> sympy.Expr:
    """Resultant of binary forms with coefficient lists a (deg m), b (deg n), highest x-power first."""
    m, n = len(a) - 1, len(b) - 1
    S = sympy.zeros(m + n)
    for i in range(n):
        for j, c in enumerate(a):
            S[i, i + j] = c
    for i in range(m):
        for j, c in enumerate(b):
            S[n + i, i + j] = c
    return S.det()


def resultant_with_power_of_z(f1, f2, k: int) -> Fraction:
    """Res(f1, f2, z^k) = Res_binary(f1(x, y, 0), f2(x, y, 0))^k."""

    def coeffs(F):
        d = F.degree
        return [sympy.Rational(F.coefficient((d - i, i, 0)).numerator, F.coefficient((d - i, i, 0)).denominator) for i in range(d + 1)]

    r = sylvester(coeffs(f1), coeffs(f2)) ** k
    r = sympy.Rational(r)
    return Fraction(int(r.p), int(r.q))


def theta_g1_direct(a: int, b: int, tau, prec: int, terms: int | None = None):
    """sum_n exp(i pi (n + a/2)^2 tau + 2 i pi (n + a/2) b/2) by brute force."""
    with mpmath.workprec(prec + 30):
        tau = mpmath.mpc(tau)
        if terms is None:
            # |term| = exp(-pi n^2 Im tau); stop well past 2^-(prec+30)
            terms = int(mpmath.sqrt((prec + 40) * mpmath.log(2) / (mpmath.pi * mpmath.im(tau)))) + 3
        s = mpmath.mpc(0)
        for n in range(-terms, terms + 1):
            m = n + mpmath.mpf(a) / 2
            s += mpmath.exp(1j * mpmath.pi * m * m * tau + 1j * mpmath.pi * m * b)
        return s


def theta_g1_jtheta(a: int, b: int, tau, prec: int):
    """Same value through the Jacobi theta functions of mpmath."""
    with mpmath.workprec(prec + 30):
        q = mpmath.exp(1j * mpmath.pi * mpmath.mpc(tau))
        if (a, b) == (0, 0):
            return mpmath.jtheta(3, 0, q)
        if (a, b) == (0, 1):
            return mpmath.jtheta(4, 0, q)
        if (a, b) == (1, 0):
            return mpmath.jtheta(2, 0, q)
        return mpmath.mpc(0)


def theta_diagonal(eps1, eps2, diag, prec: int):
    """Theta constant at a diagonal tau: the product of genus-one values."""
    with mpmath.workprec(prec + 30):
        out = mpmath.mpc(1)
        for a, b, t in zip(eps1, eps2, diag):
            out *= theta_g1_direct(a, b, t, prec)
        return out


def even_pairs(g: int):
    for e1 in itertools.product((0, 1), repeat=g):
        for e2 in itertools.product((0, 1), repeat=g):
            if sum(x * y for x, y in zip(e1, e2)) % 2 == 0:
                yield e1, e2
