"""Ternary forms with exact rational coefficients and the GL3 action on them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from math import lcm
from typing import Iterable, Mapping, Sequence

from ..errors import InvalidInput

Exponent = tuple[int, int, int]


def monomials(d: int) -> list[Exponent]:
    """All exponent triples of total degree ``d`` in descending lex order."""
    return [(i, j, d - i - j) for i in range(d, -1, -1) for j in range(d - i, -1, -1)]


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, str):
        return Fraction(c)
    if isinstance(c, float):
        raise InvalidInput("floating point coefficients are not exact; pass a string or Fraction")
    return Fraction(c)


@dataclass(frozen=True)
class TernaryForm:
    """Homogeneous polynomial of degree ``degree`` in x, y, z over Q.

    ``coeffs`` maps exponent triples to nonzero Fractions; zero coefficients
    are dropped so equality is structural.
    """

    degree: int
    coeffs: Mapping[Exponent, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        if self.degree < 0:
            raise InvalidInput(f"negative degree {self.degree}")
        clean = {}
        for e, c in self.coeffs.items():
            e = tuple(int(a) for a in e)
            if len(e) != 3 or min(e) < 0 or sum(e) != self.degree:
                raise InvalidInput(f"exponent {e} does not have total degree {self.degree}")
            c = _as_fraction(c)
            if c:
                clean[e] = clean.get(e, Fraction(0)) + c
        object.__setattr__(self, "coeffs", {e: c for e, c in clean.items() if c})

    # -- construction -----------------------------------------------------

    @classmethod
    def from_dense(cls, degree: int, values: Sequence) -> "TernaryForm":
        """Build from a coefficient vector in the canonical monomial order."""
        mons = monomials(degree)
        if len(values) != len(mons):
            raise InvalidInput(f"expected {len(mons)} coefficients, got {len(values)}")
        return cls(degree, dict(zip(mons, values)))

    @classmethod
    def from_expr(cls, text: str) -> "TernaryForm":
        """Parse a polynomial expression such as ``"x^4 + y^4 + z^4"``."""
        import sympy

        x, y, z = sympy.symbols("x y z")
        try:
            expr = sympy.sympify(text.replace("^", "**"), locals={"x": x, "y": y, "z": z})
            poly = sympy.Poly(expr, x, y, z, domain="QQ")
        except (sympy.SympifyError, sympy.PolynomialError, TypeError) as exc:
            raise InvalidInput(f"cannot parse form {text!r}: {exc}") from exc
        terms = poly.terms()
        if not terms:
            raise InvalidInput("zero polynomial has no well-defined degree")
        degrees = {sum(m) for m, _ in terms}
        if len(degrees) != 1:
            raise InvalidInput(f"{text!r} is not homogeneous")
        d = degrees.pop()
        return cls(d, {m: Fraction(int(c.p), int(c.q)) for m, c in terms})

    @classmethod
    def monomial(cls, e: Exponent, c=1) -> "TernaryForm":
        return cls(sum(e), {tuple(e): c})

    # -- basic queries ----------------------------------------------------

    def coefficient(self, e: Exponent) -> Fraction:
        return self.coeffs.get(tuple(e), Fraction(0))

    def dense(self) -> list[Fraction]:
        return [self.coefficient(e) for e in monomials(self.degree)]

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x, y, z):
        total = 0
        for (i, j, k), c in self.coeffs.items():
            total += c * x**i * y**j * z**k
        return total

    def __eq__(self, other):
        if not isinstance(other, TernaryForm):
            return NotImplemented
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.coeffs.items()))))

    def __repr__(self):
        if not self.coeffs:
            return f"TernaryForm({self.degree}, 0)"
        return f"TernaryForm({self.degree}, {self.to_expr()})"

    def to_expr(self) -> str:
        parts = []
        for e in monomials(self.degree):
            c = self.coeffs.get(e)
            if c is None:
                continue
            mon = "*".join(
                v if p == 1 else f"{v}^{p}" for v, p in zip("xyz", e) if p
            )
            coef = str(c)
            if mon:
                parts.append(mon if c == 1 else f"-{mon}" if c == -1 else f"{coef}*{mon}")
            else:
                parts.append(coef)
        return " + ".join(parts).replace("+ -", "- ") or "0"

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other: "TernaryForm") -> "TernaryForm":
        if other.is_zero():
            return self
        if self.is_zero():
            return other
        if other.degree != self.degree:
            raise InvalidInput("cannot add forms of different degree")
        out = dict(self.coeffs)
        for e, c in other.coeffs.items():
            out[e] = out.get(e, Fraction(0)) + c
        return TernaryForm(self.degree, out)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, TernaryForm):
            out: dict[Exponent, Fraction] = {}
            for e1, c1 in self.coeffs.items():
                for e2, c2 in other.coeffs.items():
                    e = (e1[0] + e2[0], e1[1] + e2[1], e1[2] + e2[2])
                    out[e] = out.get(e, Fraction(0)) + c1 * c2
            return TernaryForm(self.degree + other.degree, out)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, lam) -> "TernaryForm":
        lam = _as_fraction(lam)
        return TernaryForm(self.degree, {e: lam * c for e, c in self.coeffs.items()})

    def __pow__(self, n: int) -> "TernaryForm":
        out = TernaryForm(0, {(0, 0, 0): 1})
        for _ in range(n):
            out = out * self
        return out

    def partial(self, var: int) -> "TernaryForm":
        """Partial derivative with respect to x (0), y (1) or z (2)."""
        if self.degree == 0:
            raise InvalidInput("derivative of a constant form")
        out = {}
        for e, c in self.coeffs.items():
            if e[var]:
                f = list(e)
                f[var] -= 1
                out[tuple(f)] = c * e[var]
        return TernaryForm(self.degree - 1, out)

    def gradient(self) -> tuple["TernaryForm", "TernaryForm", "TernaryForm"]:
        return self.partial(0), self.partial(1), self.partial(2)

    def denominator_lcm(self) -> int:
        return reduce(lcm, (c.denominator for c in self.coeffs.values()), 1)

    def integral(self) -> tuple["TernaryForm", int]:
        """Return ``(m*F, m)`` with ``m`` the smallest positive integer clearing denominators."""
        m = self.denominator_lcm()
        return self.scale(m), m

    # -- serialization ----------------------------------------------------

    def to_json(self) -> dict:
        return {
            "degree": self.degree,
            "coeffs": [
                [*e, f"{c.numerator}/{c.denominator}"]
                for e in monomials(self.degree)
                if (c := self.coeffs.get(e)) is not None
            ],
        }

    @classmethod
    def from_json(cls, data: dict | str) -> "TernaryForm":
        if isinstance(data, str):
            data = json.loads(data)
        try:
            d = int(data["degree"])
            coeffs = {}
            for entry in data["coeffs"]:
                i, j, k, c = entry
                if isinstance(c, float):
                    raise InvalidInput("coefficients must be exact strings 'p/q'")
                coeffs[(int(i), int(j), int(k))] = Fraction(str(c))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed form JSON: {exc}") from exc
        return cls(d, coeffs)


def linear_form(a, b, c) -> TernaryForm:
    return TernaryForm(1, {(1, 0, 0): a, (0, 1, 0): b, (0, 0, 1): c})


# --------------------------------------------------------------------------
# GL3 action
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class GL3Matrix:
    """Invertible 3x3 matrix over Q, stored row-major."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(_as_fraction(a) for a in row) for row in self.entries)
        if len(rows) != 3 or any(len(r) != 3 for r in rows):
            raise InvalidInput("GL3Matrix needs a 3x3 array")
        object.__setattr__(self, "entries", rows)
        if self.det == 0:
            raise InvalidInput("matrix is singular")

    @property
    def det(self) -> Fraction:
        (a, b, c), (d, e, f), (g, h, i) = self.entries
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)

    def inverse(self) -> "GL3Matrix":
        (a, b, c), (d, e, f), (g, h, i) = self.entries
        det = self.det
        adj = (
            (e * i - f * h, c * h - b * i, b * f - c * e),
            (f * g - d * i, a * i - c * g, c * d - a * f),
            (d * h - e * g, b * g - a * h, a * e - b * d),
        )
        return GL3Matrix(tuple(tuple(x / det for x in row) for row in adj))

    def __matmul__(self, other: "GL3Matrix") -> "GL3Matrix":
        A, B = self.entries, other.entries
        return GL3Matrix(
            tuple(tuple(sum(A[r][k] * B[k][c] for k in range(3)) for c in range(3)) for r in range(3))
        )

    @classmethod
    def identity(cls, lam=1) -> "GL3Matrix":
        return cls(tuple(tuple(lam if r == c else 0 for c in range(3)) for r in range(3)))

    @classmethod
    def permutation(cls, perm: Sequence[int]) -> "GL3Matrix":
        """Permutation matrix whose row ``r`` has its single 1 in column ``perm[r]``."""
        return cls(tuple(tuple(1 if c == perm[r] else 0 for c in range(3)) for r in range(3)))


def substitute(F: TernaryForm, u: GL3Matrix | Iterable[Iterable]) -> TernaryForm:
    """Return the pullback ``x -> F(u x)``."""
    rows = u.entries if isinstance(u, GL3Matrix) else tuple(tuple(map(_as_fraction, r)) for r in u)
    lin = [linear_form(*row) for row in rows]
    # powers of each linear form, shared across monomials
    powers = [[TernaryForm(0, {(0, 0, 0): 1})] for _ in range(3)]
    for v in range(3):
        for _ in range(F.degree):
            powers[v].append(powers[v][-1] * lin[v])
    out = TernaryForm(F.degree)
    for (i, j, k), c in F.coeffs.items():
        out = out + (powers[0][i] * powers[1][j] * powers[2][k]).scale(c)
    return out


def gl3_act(u: GL3Matrix, F: TernaryForm) -> TernaryForm:
    """Left regular action ``(u . F)(x) = F(u^{-1} x)``."""
    if not isinstance(u, GL3Matrix):
        u = GL3Matrix(u)
    return substitute(F, u.inverse())
