"""Affine plane curves P(x, y) = 0 with a chosen basis of differentials f dx / P_y."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np
import sympy

from ..errors import InvalidInput
from ..invariants import GL3Matrix, TernaryForm, discriminant, substitute

Bivariate = Mapping[tuple[int, int], Fraction]

_X, _Y = sympy.symbols("x y")
_ADMISSIBLE_TRIES = 20


def _clean(poly: Bivariate) -> dict[tuple[int, int], Fraction]:
    return {(int(i), int(j)): Fraction(c) for (i, j), c in poly.items() if c}


@dataclass(frozen=True)
class AffineCurve:
    """P(x, y) = 0 viewed as an n-sheeted cover of the x-line.

    ``numerators`` are the f_j of the differentials f_j(x, y) dx / P_y.
    ``form`` is the projective model whose chart z = 1 gives P, if any.
    """

    poly: Bivariate
    numerators: tuple
    genus: int
    form: TernaryForm | None = None
    kind: str = "plane"
    _ycoeffs: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        poly = _clean(self.poly)
        if not poly:
            raise InvalidInput("zero polynomial")
        object.__setattr__(self, "poly", poly)
        object.__setattr__(self, "numerators", tuple(_clean(f) for f in self.numerators))
        n = max(j for _, j in poly)
        lead = [(i, c) for (i, j), c in poly.items() if j == n]
        if n < 2 or any(i > 0 for i, _ in lead):
            raise InvalidInput("leading coefficient in y must be a nonzero constant")
        # coefficient of y^k as a list of x-coefficients (ascending powers)
        ycoeffs = []
        for k in range(n + 1):
            deg = max([i for (i, j) in poly if j == k], default=0)
            row = [Fraction(0)] * (deg + 1)
            for (i, j), c in poly.items():
                if j == k:
                    row[i] = c
            ycoeffs.append(tuple(row))
        object.__setattr__(self, "_ycoeffs", tuple(ycoeffs))
        if self.discriminant_x().is_zero:
            raise InvalidInput("discriminant in y vanishes identically (curve is not reduced)")

    @property
    def sheets(self) -> int:
        return len(self._ycoeffs) - 1

    @property
    def ycoeffs(self) -> tuple:
        """Ascending x-coefficient lists of the coefficients of y^0, ..., y^n."""
        return self._ycoeffs

    def sympy_poly(self):
        return sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * _X**i * _Y**j for (i, j), c in self.poly.items()), _X, _Y)

    def discriminant_x(self):
        P = self.sympy_poly()
        return sympy.Poly(sympy.discriminant(P.as_expr(), _Y), _X)

    def y_coefficients_at(self, x: complex) -> np.ndarray:
        """Coefficients of P(x, .) in numpy.roots order (highest power first)."""
        return np.array([np.polyval([float(c) for c in reversed(row)], x) for row in reversed(self._ycoeffs)], dtype=complex)

    def y_roots(self, x: complex) -> np.ndarray:
        return np.roots(self.y_coefficients_at(x))


def _bivariate_from_form(F: TernaryForm) -> dict[tuple[int, int], Fraction]:
    return {(i, j): c for (i, j, _k), c in F.coeffs.items()}


def classical_differentials(F: TernaryForm) -> list[dict[tuple[int, int], Fraction]]:
    """Numerators of the classical basis in the chart z = 1.

    The degree d-3 monomials in x, y, z (descending lex), dehomogenized.
    """
    d = F.degree
    if d < 3:
        raise InvalidInput("need degree at least 3 for holomorphic differentials")
    if discriminant(F).value == 0:
        raise InvalidInput("form is singular (discriminant 0)")
    out = []
    for i in range(d - 3, -1, -1):
        for j in range(d - 3 - i, -1, -1):
            out.append({(i, j): Fraction(1)})
    return out


def _is_admissible(F: TernaryForm) -> bool:
    d = F.degree
    if F.coefficient((0, d, 0)) == 0:
        return False
    # the fibre over x = infinity is unramified: F(1, y, 0) squarefree of degree d
    Q = sympy.Poly(sum(sympy.Rational(c.numerator, c.denominator) * _Y**j for (i, j, k), c in F.coeffs.items() if k == 0), _Y)
    return Q.degree() == d and sympy.discriminant(Q) != 0


def _random_unimodular(rng: random.Random) -> GL3Matrix:
    m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    for _ in range(3):
        i, j = rng.sample(range(3), 2)
        c = rng.choice((-2, -1, 1, 2))
        m = [[m[r][s] + (c * m[j][s] if r == i else 0) for s in range(3)] for r in range(3)]
    return GL3Matrix(m)


def plane_quartic_curve(F: TernaryForm, seed: int = 0, change: GL3Matrix | None = None) -> AffineCurve:
    """Chart z = 1 of a smooth plane curve with its classical differentials.

    If the projection from (0:1:0) is not admissible (y^d coefficient zero, or
    ramification over x = infinity) a random unimodular change of
    coordinates is applied; the curve stored in ``form`` is the one used.
    """
    if F.degree < 3:
        raise InvalidInput("plane curve must have degree >= 3")
    nums = classical_differentials(F)
    G = F if change is None else substitute(F, change)
    rng = random.Random(seed)
    tries = 0
    while not _is_admissible(G):
        if tries >= _ADMISSIBLE_TRIES:
            raise InvalidInput("no admissible projection found")
        G = substitute(F, _random_unimodular(rng))
        tries += 1
    d = F.degree
    return AffineCurve(_bivariate_from_form(G), tuple(nums), (d - 1) * (d - 2) // 2, G, "plane")


def hyperelliptic_curve(f: Sequence) -> AffineCurve:
    """y^2 = f(x) for f of degree 7 or 8 (coefficients ascending), numerators 1, x, x^2."""
    coeffs = [Fraction(c) if not isinstance(c, str) else Fraction(c) for c in f]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) - 1 not in (7, 8):
        raise InvalidInput("hyperelliptic genus 3 needs deg f in {7, 8}")
    fx = sympy.Poly(list(reversed([sympy.Rational(c.numerator, c.denominator) for c in coeffs])), _X)
    if sympy.degree(sympy.gcd(fx, fx.diff(_X))) > 0:
        raise InvalidInput("f is not squarefree")
    poly = {(0, 2): Fraction(1)}
    for i, c in enumerate(coeffs):
        if c:
            poly[(i, 0)] = -c
    nums = ({(0, 0): Fraction(1)}, {(1, 0): Fraction(1)}, {(2, 0): Fraction(1)})
    return AffineCurve(poly, nums, 3, None, "hyperelliptic")
