"""Discriminant of ternary forms, invariant weights, and the Ciani family."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from ..errors import InvalidInput
from .forms import TernaryForm
from .resultant import macaulay_resultant

MIN_DISC_DEGREE = 2
MAX_DISC_DEGREE = 6


@dataclass(frozen=True)
class InvariantValue:
    """Value of an SL3-invariant together with its degree and weight.

    For a form of degree d in three variables, an invariant of degree h
    has weight w with ``d * h = 3 * w``.
    """

    value: Fraction
    degree: int
    weight: int
    form_degree: int

    def __post_init__(self):
        if self.form_degree * self.degree != 3 * self.weight:
            raise InvalidInput(
                f"degree/weight mismatch: {self.form_degree}*{self.degree} != 3*{self.weight}"
            )


def invariant_weight(d: int, degree: int) -> int:
    """Weight of a degree-``degree`` invariant of ternary forms of degree ``d``."""
    if (d * degree) % 3:
        raise InvalidInput(f"no invariant of degree {degree} exists for forms of degree {d}")
    return d * degree // 3


def differential_weight(d: int) -> int:
    """Weight w0 = C(d, 3) by which GL3 acts on the wedge of the classical differentials."""
    return comb(d, 3)


def normalization_exponent(d: int) -> int:
    """Exponent e with Disc F = d^(-e) Res(q1, q2, q3) for ternary forms."""
    return (d - 1) * (d - 2) + 1


def general_normalization_exponent(n: int, d: int) -> Fraction:
    """The exponent ((d-1)^n - (-1)^n) / d of the normalizing constant in n variables."""
    return Fraction((d - 1) ** n - (-1) ** n, d)


def discriminant(F: TernaryForm) -> InvariantValue:
    """Normalized discriminant ``d^{-(d-1)(d-2)-1} Res(F_x, F_y, F_z)``.

    Zero exactly when the plane curve F = 0 is singular.  Degree 3(d-1)^2,
    weight d(d-1)^2.
    """
    d = F.degree
    if not MIN_DISC_DEGREE <= d <= MAX_DISC_DEGREE:
        raise InvalidInput(f"discriminant supported for degrees {MIN_DISC_DEGREE}..{MAX_DISC_DEGREE}, got {d}")
    if F.is_zero():
        raise InvalidInput("zero form")
    e = normalization_exponent(d)
    # both normalizations agree in three variables; guard the identity
    assert general_normalization_exponent(3, d) == e
    q = F.gradient()
    if any(g.is_zero() for g in q):
        # a form independent of one variable is a cone: singular at that vertex
        value = Fraction(0)
    else:
        value = macaulay_resultant(*q) / Fraction(d) ** e
    h = 3 * (d - 1) ** 2
    return InvariantValue(value, h, d * (d - 1) ** 2, d)


# --------------------------------------------------------------------------
# Ciani quartics
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class CianiMatrix:
    """Symmetric matrix [[a1, b3, b2], [b3, a2, b1], [b2, b1, a3]] over Q."""

    a1: Fraction
    a2: Fraction
    a3: Fraction
    b1: Fraction
    b2: Fraction
    b3: Fraction

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "b1", "b2", "b3"):
            v = getattr(self, name)
            if isinstance(v, float):
                raise InvalidInput("Ciani entries must be exact")
            object.__setattr__(self, name, Fraction(v))

    @classmethod
    def from_matrix(cls, m) -> "CianiMatrix":
        m = [[Fraction(x) for x in row] for row in m]
        for i in range(3):
            for j in range(3):
                if m[i][j] != m[j][i]:
                    raise InvalidInput("Ciani matrix must be symmetric")
        return cls(m[0][0], m[1][1], m[2][2], m[1][2], m[0][2], m[0][1])

    @classmethod
    def identity(cls) -> "CianiMatrix":
        return cls(1, 1, 1, 0, 0, 0)

    def matrix(self) -> list[list[Fraction]]:
        return [
            [self.a1, self.b3, self.b2],
            [self.b3, self.a2, self.b1],
            [self.b2, self.b1, self.a3],
        ]

    @property
    def cofactors(self) -> tuple[Fraction, Fraction, Fraction]:
        a, b = (self.a1, self.a2, self.a3), (self.b1, self.b2, self.b3)
        return tuple(a[(i + 1) % 3] * a[(i + 2) % 3] - b[i] ** 2 for i in range(3))

    @property
    def det(self) -> Fraction:
        a1, a2, a3, b1, b2, b3 = self.a1, self.a2, self.a3, self.b1, self.b2, self.b3
        return a1 * a2 * a3 + 2 * b1 * b2 * b3 - a1 * b1**2 - a2 * b2**2 - a3 * b3**2


def ciani_form(m: CianiMatrix) -> TernaryForm:
    """The quartic G_m(x^2, y^2, z^2) for the quadratic form G_m of ``m``."""
    return TernaryForm(
        4,
        {
            (4, 0, 0): m.a1,
            (0, 4, 0): m.a2,
            (0, 0, 4): m.a3,
            (0, 2, 2): 2 * m.b1,
            (2, 0, 2): 2 * m.b2,
            (2, 2, 0): 2 * m.b3,
        },
    )


def ciani_discriminant(m: CianiMatrix) -> Fraction:
    """Closed form 2^40 a1 a2 a3 (c1 c2 c3)^2 det(m)^4."""
    c1, c2, c3 = m.cofactors
    return Fraction(2) ** 40 * m.a1 * m.a2 * m.a3 * (c1 * c2 * c3) ** 2 * m.det**4
