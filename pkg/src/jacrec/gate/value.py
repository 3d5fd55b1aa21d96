"""The weight-18 modular value of a period matrix and the Klein ratio."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from ..errors import ConditioningError, InvalidInput
from ..invariants import TernaryForm, discriminant
from ..periods import PeriodMatrix, compute_periods, plane_quartic_curve
from ..theta import DEFAULT_PREC, FormValue, chi_product

KLEIN_POWER_OF_TWO = 28
DET_COND_LIMIT = 1e12


@dataclass(frozen=True)
class ModularValue:
    """v = (2 pi)^54 P(tau) / det(Omega2)^18 for the raw theta product P."""

    value: mpmath.mpc
    rel_error: mpmath.mpf
    imag_residual: mpmath.mpf
    prec: int
    chi: FormValue
    det_omega2: mpmath.mpc
    #: bits of v to trust for recognition (from the measured accuracy of tau)
    accurate_bits: int = 53

    def to_json(self, digits: int = 30) -> dict:
        return {
            "re": mpmath.nstr(mpmath.re(self.value), digits),
            "im": mpmath.nstr(mpmath.im(self.value), digits),
            "rel_error": mpmath.nstr(self.rel_error, 5),
            "imag_residual": mpmath.nstr(self.imag_residual, 5),
            "prec": self.prec,
        }


def _fraction_mpf(q: Fraction):
    return mpmath.mpf(q.numerator) / q.denominator


def modular_value(Omega: PeriodMatrix, p: int = DEFAULT_PREC) -> ModularValue:
    if Omega.g != 3:
        raise InvalidInput("modular value is defined here for g = 3")
    tau = Omega.tau(p)
    chi = chi_product(3, tau, p)
    with mpmath.workprec(p + 40):
        O2 = Omega.omega2
        det = mpmath.det(O2)
        if det == 0:
            raise ConditioningError("Omega2 is singular")
        cond = mpmath.mnorm(O2, 1) * mpmath.mnorm(mpmath.inverse(O2), 1)
        if cond > DET_COND_LIMIT:
            raise ConditioningError(f"Omega2 is ill-conditioned (cond {mpmath.nstr(cond, 3)})")
        v = (2 * mpmath.pi) ** 54 * chi.value / det**18
        # theta error plus the effect of the period accuracy on tau and det
        theta_rel = chi.error_bound / abs(chi.value)
        rel = theta_rel + 54 * cond * Omega.input_tolerance()
        # the symmetry residual of tau measures the period accuracy actually reached
        measured = theta_rel + 54 * cond * max(Omega.symmetry_residual(), 2.0**-Omega.bits)
        bits = min(p, Omega.bits, int(-mpmath.log(measured, 2)))
        imag = abs(mpmath.im(v)) / abs(v)
    return ModularValue(v, rel, imag, p, chi, det, bits)


@dataclass(frozen=True)
class KleinResult:
    ratio: mpmath.mpc
    value: ModularValue
    disc: Fraction

    @property
    def modulus_error(self) -> float:
        return float(abs(abs(self.ratio) - 1))


def klein_ratio(v: ModularValue, disc: Fraction) -> mpmath.mpc:
    if disc == 0:
        raise InvalidInput("singular quartic (discriminant 0)")
    with mpmath.workprec(v.prec + 40):
        return v.value / (mpmath.mpf(2) ** KLEIN_POWER_OF_TWO * _fraction_mpf(disc) ** 2)


def klein_check(F: TernaryForm, Omega: PeriodMatrix | None = None, p: int = DEFAULT_PREC, period_prec: int | None = None) -> KleinResult:
    """KR = (2 pi)^54 P(tau) / (2^28 det(Omega2)^18 Disc(F)^2).

    Without ``Omega`` the periods of F's classical differentials are
    computed (double precision unless ``period_prec`` is given); the
    discriminant is then taken of the model actually integrated.
    """
    if F.degree != 4:
        raise InvalidInput("Klein's check needs a quartic")
    if Omega is None:
        C = plane_quartic_curve(F)
        Omega = compute_periods(C, period_prec)[0]
        F = C.form
    disc = discriminant(F).value
    if disc == 0:
        raise InvalidInput("singular quartic (discriminant 0)")
    v = modular_value(Omega, p)
    return KleinResult(klein_ratio(v, disc), v, disc)
