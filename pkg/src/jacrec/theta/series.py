"""Theta functions with half-integer characteristics by lattice summation.

    theta[e1, e2](z, tau) = sum_{n in Z^g} exp(i pi [v^T tau v + 2 v^T (z + e2/2)]),
    v = n + e1/2.

Points are enumerated in the ellipsoid (v - c)^T Y (v - c) <= R^2, with
Y = Im tau and c = -Y^{-1} Im z the center of the Gaussian envelope.  R is
chosen so that the discarded tail is below 2^{-p}; the bound used is

    sum_{Q(v) > R^2} e^{-pi Q(v)} <= e^{-pi s R^2} prod_i (1 + ((1-s) lambda)^{-1/2})

for any 0 < s < 1, lambda the smallest eigenvalue of Y.  Along the innermost
coordinate terms follow t <- t r, r <- r exp(2 pi i tau_00), so one exp per
line.  All 2^g choices of e2 share a lattice sum, split by n mod 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import gmpy2
import mpmath
import numpy as np

from ..errors import InvalidInput, ResourceLimit
from ..mparith import gmpy_to_mpc, mpc_to_gmpy
from .characteristics import ThetaCharacteristic, enumerate_characteristics
from .siegel import DEFAULT_PREC, SiegelPoint

MAX_RADIUS = 200.0
MAX_POINTS = 3_000_000
_TAIL_GUARD_BITS = 8


@dataclass(frozen=True)
class ThetaValue:
    value: mpmath.mpc
    error_bound: mpmath.mpf

    def __abs__(self):
        return abs(self.value)


def _tail_radius_sq(p: int, lam: float, g: int, w: float) -> tuple[float, float]:
    """Smallest R^2 over a grid of s making the tail bound < 2^{-(p+guard)}."""
    target = (p + _TAIL_GUARD_BITS) * math.log(2)
    best = None
    for s in np.linspace(0.5, 0.98, 25):
        log_sum = g * math.log1p(1 / math.sqrt((1 - s) * lam))
        R2 = (target + math.pi * w + log_sum) / (math.pi * s)
        if best is None or R2 < best[0]:
            best = (R2, s)
    return best


def _tail_bound(R2: float, s: float, lam: float, g: int, w: float) -> mpmath.mpf:
    log_sum = g * math.log1p(1 / math.sqrt((1 - s) * lam))
    return mpmath.exp(mpmath.mpf(math.pi * w - math.pi * s * R2 + log_sum))


def _enumerate_lines(R: np.ndarray, center: np.ndarray, shift: Sequence[float], R2: float):
    """Fincke-Pohst enumeration; yields (outer n_1..n_{g-1}, lo, hi) for n_0.

    ``R`` is upper triangular with Y = R^T R.
    """
    g = R.shape[0]
    lines = []
    n = [0] * g
    eps = 1e-9

    def rec(i: int, partial: float):
        # row i: R_ii (v_i - c_i) + sum_{j>i} R_ij (v_j - c_j)
        off = sum(R[i, j] * (n[j] + shift[j] - center[j]) for j in range(i + 1, g))
        m = center[i] - off / R[i, i]
        rem = R2 - partial
        if rem < 0:
            return
        r = math.sqrt(rem) / R[i, i]
        lo = math.ceil(m - r - shift[i] - eps * (1 + abs(m) + r))
        hi = math.floor(m + r - shift[i] + eps * (1 + abs(m) + r))
        if i == 0:
            if lo <= hi:
                lines.append((tuple(n[1:]), lo, hi))
            return
        for k in range(lo, hi + 1):
            n[i] = k
            t = R[i, i] * (k + shift[i] - m)
            rec(i - 1, partial + t * t)
        n[i] = 0

    rec(g - 1, 0.0)
    return lines


class _Envelope:
    """Float data shared by every characteristic at a given (tau, z)."""

    def __init__(self, tau: SiegelPoint, z, p: int):
        g = tau.g
        self.g = g
        Y = np.array([[float(mpmath.im(tau.tau[i, j])) for j in range(g)] for i in range(g)])
        Y = (Y + Y.T) / 2
        lam = float(np.linalg.eigvalsh(Y)[0])
        if not lam > 0:
            raise InvalidInput("Im tau is not positive definite")
        self.lam = lam * (1 - 1e-9)
        self.R = np.linalg.cholesky(Y).T
        imz = np.array([float(mpmath.im(zi)) for zi in z])
        self.center = -np.linalg.solve(Y, imz)
        self.w = float(imz @ np.linalg.solve(Y, imz))
        self.R2, self.s = _tail_radius_sq(p, self.lam, g, self.w)
        if math.sqrt(self.R2) > MAX_RADIUS:
            raise ResourceLimit(f"truncation radius {math.sqrt(self.R2):.1f} exceeds cap {MAX_RADIUS}")
        self.tail = _tail_bound(self.R2, self.s, self.lam, g, self.w)
        # bound on sum |terms| over the whole shifted lattice
        self.abs_sum = math.exp(math.pi * self.w) * (1 + 1 / math.sqrt(self.lam)) ** g


def _lattice_sums(tau: SiegelPoint, z, eps1: tuple[int, ...], env: _Envelope, p: int):
    """Return (bucket sums indexed by n mod 2, error bound) for one eps1."""
    g = tau.g
    shift = [e / 2 for e in eps1]
    lines = _enumerate_lines(env.R, env.center, shift, env.R2)
    npts = sum(hi - lo + 1 for _, lo, hi in lines)
    if npts > MAX_POINTS:
        raise ResourceLimit(f"{npts} lattice points exceed cap {MAX_POINTS}")
    lmax = max((hi - lo + 1 for _, lo, hi in lines), default=0)
    wp = p + 40 + max(npts, 1).bit_length()
    nb = 1 << g
    emax = 0.0
    with gmpy2.context(gmpy2.get_context(), precision=wp) as ctx:
        T = [[mpc_to_gmpy(tau.tau[i, j]) for j in range(g)] for i in range(g)]
        Z = [mpc_to_gmpy(zi) for zi in z]
        ipi = gmpy2.mpc(0, gmpy2.const_pi())
        q0 = gmpy2.exp(2 * ipi * T[0][0])
        half = gmpy2.mpfr(1) / 2
        sums = [gmpy2.mpc(0) for _ in range(nb)]
        for outer, lo, hi in lines:
            v = [gmpy2.mpfr(lo) + (half if eps1[0] else 0)]
            v += [gmpy2.mpfr(outer[j - 1]) + (half if eps1[j] else 0) for j in range(1, g)]
            Tv = [sum((T[i][j] * v[j] for j in range(g)), gmpy2.mpc(0)) for i in range(g)]
            vTv = sum((v[i] * Tv[i] for i in range(g)), gmpy2.mpc(0))
            vz = sum((v[i] * Z[i] for i in range(g)), gmpy2.mpc(0))
            expo = ipi * (vTv + 2 * vz)
            emax = max(emax, float(abs(expo)))
            t = gmpy2.exp(expo)
            r = gmpy2.exp(ipi * (2 * Tv[0] + T[0][0] + 2 * Z[0]))
            base = 0
            for j in range(1, g):
                if outer[j - 1] & 1:
                    base |= 1 << j
            b0, b1 = base | (lo & 1), base | ((lo + 1) & 1)
            acc0 = gmpy2.mpc(0)
            acc1 = gmpy2.mpc(0)
            for k in range(hi - lo + 1):
                if k & 1:
                    acc1 += t
                else:
                    acc0 += t
                t *= r
                r *= q0
            sums[b0] += acc0
            sums[b1] += acc1
        del ctx
    rounding = env.abs_sum * (3 * lmax + 30 + npts + 4 * math.pi * emax * g * g) * 2.0 ** (-wp)
    return sums, mpmath.mpf(rounding), npts


def _combine(sums, eps1, eps2):
    """theta[eps1, eps2] from parity buckets of n: i^{e1.e2} sum_c (-1)^{c.e2} S_c."""
    g = len(eps1)
    total = mpmath.mpc(0)
    for c, s in enumerate(sums):
        sign = sum(((c >> j) & 1) * eps2[j] for j in range(g)) & 1
        sv = gmpy_to_mpc(s)
        total = total - sv if sign else total + sv
    k = sum(a * b for a, b in zip(eps1, eps2)) % 4
    return total * (1, 1j, -1, -1j)[k]


def _check_z(z, g):
    if z is None:
        return [mpmath.mpc(0)] * g
    z = [mpmath.mpc(zi) for zi in z]
    if len(z) != g:
        raise InvalidInput(f"z must have {g} entries")
    return z


def theta(eps: ThetaCharacteristic, z, tau: SiegelPoint, p: int = DEFAULT_PREC) -> ThetaValue:
    """theta[eps](z, tau) with a rigorous truncation-plus-rounding bound."""
    if eps.g != tau.g:
        raise InvalidInput("characteristic and tau have different genus")
    z = _check_z(z, tau.g)
    env = _Envelope(tau, z, p)
    with mpmath.workprec(p + 40):
        sums, rnd, _ = _lattice_sums(tau, z, eps.eps1, env, p)
        val = _combine(sums, eps.eps1, eps.eps2)
        return ThetaValue(val, env.tail + rnd)


_CACHE: dict = {}
_CACHE_SIZE = 32


def _tau_key(tau: SiegelPoint, p: int):
    return (p, tuple((tau.tau[i, j].real._mpf_, tau.tau[i, j].imag._mpf_) for i in range(tau.g) for j in range(tau.g)))


def theta_constants(
    tau: SiegelPoint,
    p: int = DEFAULT_PREC,
    characteristics: Iterable[ThetaCharacteristic] | None = None,
) -> dict[ThetaCharacteristic, ThetaValue]:
    """Thetanullwerte theta[eps](0, tau) for the given (default: all) characteristics."""
    g = tau.g
    chars = tuple(characteristics) if characteristics is not None else enumerate_characteristics(g)
    key = _tau_key(tau, p)
    cached = _CACHE.get(key)
    if cached is not None and all(c in cached for c in chars):
        return {c: cached[c] for c in chars}
    z = [mpmath.mpc(0)] * g
    env = _Envelope(tau, z, p)
    out: dict[ThetaCharacteristic, ThetaValue] = {}
    by_eps1: dict[tuple, list[ThetaCharacteristic]] = {}
    for c in chars:
        by_eps1.setdefault(c.eps1, []).append(c)
    with mpmath.workprec(p + 40):
        for eps1, group in sorted(by_eps1.items()):
            sums, rnd, _ = _lattice_sums(tau, z, eps1, env, p)
            err = env.tail + rnd
            for c in group:
                out[c] = ThetaValue(_combine(sums, c.eps1, c.eps2), err)
    if len(_CACHE) >= _CACHE_SIZE:
        _CACHE.pop(next(iter(_CACHE)))
    _CACHE[key] = {**(cached or {}), **out}
    return out


def clear_cache():
    _CACHE.clear()
