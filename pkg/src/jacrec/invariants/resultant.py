"""Multivariate resultant of three ternary forms via Macaulay matrices.

For forms of degrees d1, d2, d3 put D = d1 + d2 + d3 - 2.  Rows of the
Macaulay matrix are indexed by degree-D monomials m: the row of m is
``(m / x_i^{d_i}) * f_i`` for the first variable x_i whose d_i-th power
divides m.  Then

    Res(f1, f2, f3) = det(M) / det(M')

where M' is the minor on the monomials divisible by at least two of the
x_i^{d_i}.  When that minor vanishes for a special input we move the input
by a random unimodular change of variables (Res is invariant under SL3) and,
failing that, interpolate the resultant of the perturbed system
``f_i - t x_i^{d_i}`` at t = 0.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache

from ..errors import InvalidInput
from ..exact import bareiss_det
from .forms import GL3Matrix, TernaryForm, monomials, substitute

_SL3_TRIES = 6


@lru_cache(maxsize=64)
def _layout(degrees: tuple[int, int, int]):
    """Row assignment and extraneous-minor index set for given degrees."""
    D = sum(degrees) - 2
    mons = monomials(D)
    index = {m: r for r, m in enumerate(mons)}
    rows = []
    for m in mons:
        divisible = [v for v in range(3) if m[v] >= degrees[v]]
        v = divisible[0]
        shift = list(m)
        shift[v] -= degrees[v]
        rows.append((v, tuple(shift), len(divisible) > 1))
    minor = [r for r, (_, _, extra) in enumerate(rows) if extra]
    return mons, index, rows, minor


def _macaulay_dets(forms: list[TernaryForm]) -> tuple[int, int]:
    """Integer determinants (det M, det M') for integer-coefficient forms."""
    degrees = tuple(f.degree for f in forms)
    mons, index, rows, minor = _layout(degrees)
    n = len(mons)
    coeff_items = [[(e, int(c)) for e, c in f.coeffs.items()] for f in forms]
    M = []
    for v, shift, _ in rows:
        row = [0] * n
        for (i, j, k), c in coeff_items[v]:
            row[index[(i + shift[0], j + shift[1], k + shift[2])]] = c
        M.append(row)
    num = bareiss_det(M)
    den = bareiss_det([[M[r][c] for c in minor] for r in minor])
    return num, den


def _check(forms):
    if len(forms) != 3:
        raise InvalidInput("the resultant needs exactly three forms")
    for f in forms:
        if not isinstance(f, TernaryForm):
            raise InvalidInput("resultant arguments must be TernaryForm instances")
        if f.is_zero():
            raise InvalidInput("zero form passed to the resultant")
        if f.degree < 1:
            raise InvalidInput("resultant needs forms of degree >= 1")


def _integral_res(forms: list[TernaryForm], rng: random.Random) -> Fraction:
    num, den = _macaulay_dets(forms)
    if den:
        return Fraction(num, den)
    # special position: an SL3(Z) change of variables leaves Res unchanged
    for _ in range(_SL3_TRIES):
        u = _random_sl3(rng)
        moved = [substitute(f, u) for f in forms]
        num, den = _macaulay_dets(moved)
        if den:
            return Fraction(num, den)
    return _perturbed_res(forms)


def _random_sl3(rng: random.Random) -> GL3Matrix:
    # product of elementary matrices: unipotent lower * upper
    a, b, c, d, e, f = (rng.randint(-3, 3) for _ in range(6))
    L = GL3Matrix(((1, 0, 0), (a, 1, 0), (b, c, 1)))
    U = GL3Matrix(((1, d, e), (0, 1, f), (0, 0, 1)))
    return L @ U


def _perturbed_res(forms: list[TernaryForm]) -> Fraction:
    """Res(f) as the value at t=0 of t -> Res(f_i - t x_i^{d_i}).

    That function is a polynomial of degree d1d2 + d1d3 + d2d3 in t and the
    extraneous minor is nonzero for all but finitely many t.
    """
    d1, d2, d3 = (f.degree for f in forms)
    deg = d1 * d2 + d1 * d3 + d2 * d3
    pure = [
        TernaryForm.monomial((d1, 0, 0)),
        TernaryForm.monomial((0, d2, 0)),
        TernaryForm.monomial((0, 0, d3)),
    ]
    samples: list[tuple[int, Fraction]] = []
    t = 1
    while len(samples) < deg + 1:
        moved = [f - p.scale(t) for f, p in zip(forms, pure)]
        num, den = _macaulay_dets(moved)
        if den:
            samples.append((t, Fraction(num, den)))
        t += 1
        if t > 50 * (deg + 1):
            raise ArithmeticError("generic perturbation failed to find nonsingular minors")
    # Lagrange interpolation evaluated at 0
    total = Fraction(0)
    ts = [s for s, _ in samples]
    for i, (ti, vi) in enumerate(samples):
        w = Fraction(1)
        for j, tj in enumerate(ts):
            if j != i:
                w *= Fraction(-tj, ti - tj)
        total += w * vi
    return total


@lru_cache(maxsize=64)
def _normalizer(degrees: tuple[int, int, int]) -> Fraction:
    pure = [
        TernaryForm.monomial((degrees[0], 0, 0)),
        TernaryForm.monomial((0, degrees[1], 0)),
        TernaryForm.monomial((0, 0, degrees[2])),
    ]
    num, den = _macaulay_dets(pure)
    return Fraction(num, den)


def macaulay_resultant(f1: TernaryForm, f2: TernaryForm, f3: TernaryForm) -> Fraction:
    """Normalized resultant with ``Res(x^d1, y^d2, z^d3) = 1``.

    Vanishes exactly when the three forms have a common nontrivial zero over
    the algebraic closure.  Exact rational result.
    """
    forms = [f1, f2, f3]
    _check(forms)
    d = [f.degree for f in forms]
    # multihomogeneity: Res(l1 f1, l2 f2, l3 f3) = l1^{d2 d3} l2^{d1 d3} l3^{d1 d2} Res
    scaled = []
    correction = Fraction(1)
    for idx, f in enumerate(forms):
        g, m = f.integral()
        scaled.append(g)
        others = [d[j] for j in range(3) if j != idx]
        correction *= Fraction(m) ** (others[0] * others[1])
    rng = random.Random(0x5EED ^ hash(tuple(d)))
    value = _integral_res(scaled, rng) / _normalizer(tuple(d))
    return value / correction
