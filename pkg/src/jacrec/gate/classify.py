"""Deciding whether a principally polarized abelian threefold over Q is a Jacobian.

The decision runs in a fixed order: the weight-140 form first
(decomposable products), then the theta product (hyperelliptic
Jacobians), then the square class of v / (c0 2^28).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import sympy

from ..errors import ConditioningError, InvalidInput
from ..periods import PeriodMatrix
from ..theta import DEFAULT_PREC, SiegelPoint, ZeroVerdict, chi_product, sigma140
from .calibration import calibration_sign
from .recognize import recognize_square_class
from .value import KLEIN_POWER_OF_TWO, ModularValue, modular_value

#: |Im v| / |v| must stay below this multiple of the value's relative error
REALNESS_FACTOR = 64
KLEIN_POWER_OF_TWO_FACTOR = Fraction(2) ** KLEIN_POWER_OF_TWO


class Verdict(enum.Enum):
    DECOMPOSABLE = "Decomposable"
    HYPERELLIPTIC_JACOBIAN = "HyperellipticJacobian"
    JACOBIAN = "Jacobian"
    TWIST_OF_JACOBIAN = "TwistOfJacobian"
    INDETERMINATE = "Indeterminate"


@dataclass(frozen=True)
class ClassificationResult:
    verdict: Verdict
    value: ModularValue | None = None
    recognized: Fraction | None = None
    square_class: int | None = None
    twist_descriptor: int | None = None
    chi: object = None
    sigma: object = None
    diagnostics: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {
            "verdict": self.verdict.value,
            "square_class": None if self.square_class is None else str(self.square_class),
            "twist_descriptor": None if self.twist_descriptor is None else str(self.twist_descriptor),
            "recognized": None if self.recognized is None else str(self.recognized),
            "value": None if self.value is None else self.value.to_json(),
            "diagnostics": {k: str(v) for k, v in self.diagnostics.items()},
        }
        return out


def _parse_scalar(lam, prec: int):
    if isinstance(lam, (int, Fraction)):
        return mpmath.mpf(lam.numerator) / lam.denominator if isinstance(lam, Fraction) else mpmath.mpf(lam)
    if isinstance(lam, (mpmath.mpf, mpmath.mpc)):
        return lam
    if isinstance(lam, float):
        raise InvalidInput("pass an exact scalar (int, Fraction, or a surd string such as 'sqrt(2)')")
    try:
        expr = sympy.sympify(lam, rational=True)
    except (sympy.SympifyError, TypeError) as exc:
        raise InvalidInput(f"cannot parse scalar {lam!r}") from exc
    if expr.free_symbols:
        raise InvalidInput(f"scalar {lam!r} has free symbols")
    digits = int(prec * 0.30103) + 20
    val = sympy.N(expr, digits)
    return mpmath.mpc(str(sympy.re(val)), str(sympy.im(val))) if not val.is_real else mpmath.mpf(str(val))


def scale_periods(Omega: PeriodMatrix, lam) -> PeriodMatrix:
    """lam * Omega: the period matrix of the differential basis scaled by lam."""
    with mpmath.workprec(Omega.bits + 32):
        lam = _parse_scalar(lam, Omega.bits + 32)
        if lam == 0:
            raise InvalidInput("scale factor must be nonzero")
        return Omega if lam == 1 else Omega.scaled(lam)


def _zero_verdicts(tau: SiegelPoint, p: int, input_tol):
    sig = sigma140(tau, p)
    chi = chi_product(3, tau, p)
    return sig, sig.zero_test(input_tol), chi, chi.zero_test(input_tol)


def classify(data, p: int = DEFAULT_PREC, c0: int | None = None, input_tol=None) -> ClassificationResult:
    """Classify a PeriodMatrix (full answer) or a SiegelPoint (geometric part only).

    ``input_tol`` is the relative accuracy of tau; for period matrices it
    defaults to the accuracy the periods themselves report.
    """
    if isinstance(data, PeriodMatrix):
        Omega = data
        if Omega.g != 3:
            raise InvalidInput("classification is implemented for g = 3")
        tau = Omega.tau(p)
        if input_tol is None:
            input_tol = Omega.input_tolerance()
    elif isinstance(data, SiegelPoint):
        Omega, tau = None, data.with_prec(p) if data.prec < p else data
        if tau.g != 3:
            raise InvalidInput("classification is implemented for g = 3")
        input_tol = input_tol or 0
    else:
        raise InvalidInput("classify expects a PeriodMatrix or a SiegelPoint")

    sig, sig_test, chi, chi_test = _zero_verdicts(tau, p, input_tol)
    diag = {
        "sigma140_ratio": mpmath.nstr(sig_test.ratio, 5),
        "sigma140_verdict": sig_test.verdict.value,
        "chi_ratio": mpmath.nstr(chi_test.ratio, 5),
        "chi_verdict": chi_test.verdict.value,
        "input_tol": input_tol,
    }
    common = dict(chi=chi, sigma=sig, diagnostics=diag)

    if sig_test.verdict is ZeroVerdict.ZERO:
        return ClassificationResult(Verdict.DECOMPOSABLE, **common)
    if sig_test.verdict is ZeroVerdict.INDETERMINATE:
        diag["reason"] = "weight-140 value within the indeterminate band"
        return ClassificationResult(Verdict.INDETERMINATE, **common)
    if chi_test.verdict is ZeroVerdict.ZERO:
        return ClassificationResult(Verdict.HYPERELLIPTIC_JACOBIAN, **common)
    if chi_test.verdict is ZeroVerdict.INDETERMINATE:
        diag["reason"] = "theta product within the indeterminate band"
        return ClassificationResult(Verdict.INDETERMINATE, **common)
    if Omega is None:
        diag["reason"] = "square class needs the periods, not only tau"
        return ClassificationResult(Verdict.INDETERMINATE, **common)

    try:
        v = modular_value(Omega, p)
    except ConditioningError as exc:
        diag["reason"] = str(exc)
        return ClassificationResult(Verdict.INDETERMINATE, **common)
    c0 = calibration_sign() if c0 is None else c0
    bits = v.accurate_bits
    with mpmath.workprec(p + 40):
        w = v.value / (c0 * mpmath.mpf(2) ** KLEIN_POWER_OF_TWO)
        realness_tol = max(REALNESS_FACTOR * v.rel_error, mpmath.ldexp(1, -bits // 2))
        diag["imag_residual"] = mpmath.nstr(v.imag_residual, 5)
        diag["recognition_bits"] = bits
        if v.imag_residual > realness_tol:
            diag["reason"] = "modular value is not real"
            return ClassificationResult(Verdict.INDETERMINATE, v, **common)
        found = recognize_square_class(mpmath.re(w), bits)
    if found is None:
        diag["reason"] = f"no rational reconstruction at {bits} bits"
        return ClassificationResult(Verdict.INDETERMINATE, v, **common)
    q, D = found
    recognized = c0 * KLEIN_POWER_OF_TWO_FACTOR * q
    verdict = Verdict.JACOBIAN if D == 1 else Verdict.TWIST_OF_JACOBIAN
    return ClassificationResult(verdict, v, recognized, D, None if D == 1 else D, **common)

