"""Modular forms built from even theta constants, with a numeric zero test.

Both forms vanish exactly when enough theta constants vanish: the product
when one does, e_35 of the eighth powers when two do.  The zero test
therefore compares a value with what the form would be if its smallest
one (resp. two) theta constants sat exactly at the noise threshold

    t = max(10^{-0.15 p}, 64 err / M, input_tol) * M,    M = max |theta|.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import mpmath

from ..errors import InvalidInput
from .characteristics import even_characteristics
from .series import theta_constants
from .siegel import DEFAULT_PREC, SiegelPoint

#: a value within this factor of its threshold (either side) is indeterminate
INDETERMINATE_BAND = 10


class ZeroVerdict(enum.Enum):
    ZERO = "zero"
    NONZERO = "nonzero"
    INDETERMINATE = "indeterminate"


@dataclass(frozen=True)
class ZeroTest:
    verdict: ZeroVerdict
    ratio: mpmath.mpf
    threshold: mpmath.mpf


def relative_threshold(theta_error, max_abs, p: int, input_tol=0):
    """max(10^{-0.15 p}, 64 err / M, input_tol); ``input_tol`` is the relative accuracy of tau."""
    return max(mpmath.mpf(10) ** (-0.15 * p), 64 * theta_error / max_abs if max_abs else mpmath.inf, mpmath.mpf(input_tol))


def elementary_symmetric(values, k: int):
    """e_k(values) by the recurrence e_j <- e_j + x e_{j-1} (j descending)."""
    e = [mpmath.mpc(1)] + [mpmath.mpc(0)] * k
    for x in values:
        for j in range(min(k, len(values)), 0, -1):
            e[j] += x * e[j - 1]
    return e[k]


@dataclass(frozen=True)
class FormValue:
    """Value of a modular form in the even theta constants.

    ``magnitudes`` are the |theta[e]| in ascending order and
    ``theta_error`` their common error bound; ``kind`` is "chi" (product)
    or "sigma140" (e_35 of eighth powers).
    """

    value: mpmath.mpc
    error_bound: mpmath.mpf
    degree: int
    weight: int
    prec: int
    kind: str
    magnitudes: tuple
    theta_error: mpmath.mpf

    @property
    def vanishing_order(self) -> int:
        """How many theta constants must vanish for the form to vanish."""
        return 1 if self.kind == "chi" else 2

    def threshold(self, input_tol=0):
        with mpmath.workprec(self.prec + 40):
            mags = list(self.magnitudes)
            big = mags[-1]
            t = relative_threshold(self.theta_error, big, self.prec, input_tol) * big
            k = self.vanishing_order
            floored = [t] * k + mags[k:]
            if self.kind == "chi":
                tol = mpmath.fprod(floored)
            else:
                tol = abs(elementary_symmetric([m**8 for m in floored], 35))
            return max(tol, 64 * self.error_bound)

    def zero_test(self, input_tol=0) -> ZeroTest:
        thr = self.threshold(input_tol)
        ratio = abs(self.value) / thr if thr else mpmath.inf
        if ratio * INDETERMINATE_BAND <= 1:
            verdict = ZeroVerdict.ZERO
        elif ratio >= INDETERMINATE_BAND:
            verdict = ZeroVerdict.NONZERO
        else:
            verdict = ZeroVerdict.INDETERMINATE
        return ZeroTest(verdict, ratio, thr)

    def is_zero(self, input_tol=0) -> bool:
        return abs(self.value) < self.threshold(input_tol)


def _even_values(g: int, tau: SiegelPoint, p: int):
    if tau.g != g:
        raise InvalidInput(f"expected genus {g}, tau has genus {tau.g}")
    chars = even_characteristics(g)
    vals = theta_constants(tau, p, chars)
    return [vals[c] for c in chars]


def chi_product(g: int, tau: SiegelPoint, p: int = DEFAULT_PREC) -> FormValue:
    """Raw product of the even theta constants (no 2 pi i prefactor)."""
    if g not in (2, 3, 4):
        raise InvalidInput("chi_product needs g in {2, 3, 4}")
    thetas = _even_values(g, tau, p)
    with mpmath.workprec(p + 40):
        prod = mpmath.mpc(1)
        upper = mpmath.mpf(1)
        lower = mpmath.mpf(1)
        for t in thetas:
            prod *= t.value
            upper *= abs(t.value) + t.error_bound
            lower *= abs(t.value)
        n = len(thetas)
        # |prod(x + dx) - prod(x)| <= prod(|x| + |dx|) - prod(|x|), plus rounding
        err = (upper - lower) + n * mpmath.ldexp(upper, -(p + 30))
        mags = tuple(sorted(abs(t.value) for t in thetas))
        terr = max(t.error_bound for t in thetas)
        return FormValue(+prod, err, n, n // 2, p, "chi", mags, terr)


def sigma140(tau: SiegelPoint, p: int = DEFAULT_PREC) -> FormValue:
    """e_35 of the eighth powers of the 36 even theta constants (g = 3)."""
    thetas = _even_values(3, tau, p)
    with mpmath.workprec(p + 40):
        val = elementary_symmetric([t.value**8 for t in thetas], 35)
        mags = [abs(t.value) for t in thetas]
        pert = [(m + t.error_bound) ** 8 for m, t in zip(mags, thetas)]
        hi = elementary_symmetric(pert, 35).real
        lo = elementary_symmetric([m**8 for m in mags], 35).real
        err = (hi - lo) + 36 * 36 * mpmath.ldexp(hi, -(p + 30))
        terr = max(t.error_bound for t in thetas)
        return FormValue(val, err, 280, 140, p, "sigma140", tuple(sorted(mags)), terr)
