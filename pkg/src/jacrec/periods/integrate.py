"""Period matrices by Gauss-Legendre quadrature along the tracked loops.

For loop i and sheet j let S(i, j) be the integral along the segment from
x0 to the circle (starting on sheet j) and C(i, j) the integral around the
circle.  The lifted loop then integrates to

    I(i, j) = S(i, j) + C(i, j) - S(i, sigma_i(j)).

In high-precision mode the double-precision roots at every node are
refined by Newton's method at p + 32 bits before the integrand is formed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import gmpy2
import mpmath
import numpy as np

from ..errors import IntegrationError, InvalidInput
from ..mparith import bits_to_digits, gmpy_to_mpc, mpf_to_gmpy
from ..theta.siegel import SiegelPoint, min_eigenvalue
from .curve import AffineCurve
from .homology import HomologyBasis, homology_symplectic_basis
from .paths import LoopLayout, branch_points, circle_panels, gauss_legendre, layout_loops, segment_panels
from .tracking import MonodromyData, monodromy_from_layout

DOUBLE_SYMMETRY_TOL = 1e-9
CIRCLE_ARCS = 16


def nodes_for(bits: int) -> int:
    """Gauss-Legendre order for panels whose nearest singularity is >= 2 panel lengths away."""
    return math.ceil((bits + 30) / 5.5)


@dataclass(frozen=True)
class PeriodMatrix:
    """Omega = [Omega1 Omega2] (rows: differentials; columns: B-cycles, then A-cycles).

    ``prec`` is None for double-precision periods.  ``tau`` is
    Omega2^{-1} Omega1.
    """

    omega1: mpmath.matrix
    omega2: mpmath.matrix
    prec: int | None = None
    diagnostics: dict = field(default_factory=dict, compare=False)

    @property
    def g(self) -> int:
        return self.omega1.rows

    @property
    def bits(self) -> int:
        return self.prec or 53

    def tau_matrix(self) -> mpmath.matrix:
        with mpmath.workprec(self.bits + 32):
            return mpmath.inverse(self.omega2) * self.omega1

    def symmetry_residual(self) -> float:
        T = self.tau_matrix()
        return float(max(abs(T[i, j] - T[j, i]) for i in range(self.g) for j in range(self.g)))

    def input_tolerance(self) -> float:
        """Relative accuracy of tau, used to widen numeric zero tests."""
        if self.prec is None:
            return max(self.symmetry_residual(), 1e-13)
        return max(self.symmetry_residual(), 2.0 ** (-self.prec // 2 - 16))

    def tau(self, prec: int | None = None) -> SiegelPoint:
        prec = prec or max(self.bits, 212)
        tol = DOUBLE_SYMMETRY_TOL if self.prec is None else 2.0 ** (-self.prec / 2)
        with mpmath.workprec(prec + 16):
            return SiegelPoint.create(self.tau_matrix(), prec, sym_tol=tol * 16)

    def scaled(self, lam) -> "PeriodMatrix":
        with mpmath.workprec(self.bits + 32):
            return PeriodMatrix(self.omega1 * lam, self.omega2 * lam, self.prec, dict(self.diagnostics))

    def transformed(self, M) -> "PeriodMatrix":
        """Rows mixed by the g x g matrix M (a change of differential basis)."""
        with mpmath.workprec(self.bits + 32):
            M = mpmath.matrix(M)
            return PeriodMatrix(M * self.omega1, M * self.omega2, self.prec, dict(self.diagnostics))

    def to_json(self, digits: int | None = None) -> dict:
        digits = digits or bits_to_digits(self.bits)

        def enc(M):
            return [[[mpmath.nstr(mpmath.re(M[i, j]), digits), mpmath.nstr(mpmath.im(M[i, j]), digits)] for j in range(M.cols)] for i in range(M.rows)]

        T = self.tau_matrix()
        return {
            "g": self.g,
            "prec": self.prec,
            "Omega1": enc(self.omega1),
            "Omega2": enc(self.omega2),
            "tau": enc(T),
            "diagnostics": {k: (str(v) if not isinstance(v, (int, bool, str, list)) else v) for k, v in self.diagnostics.items()},
        }

    @classmethod
    def from_json(cls, data) -> "PeriodMatrix":
        import json

        if isinstance(data, str):
            data = json.loads(data)
        try:
            prec = data.get("prec")
            prec = None if prec is None else int(prec)
            with mpmath.workprec((prec or 53) + 32):
                dec = lambda rows: mpmath.matrix([[mpmath.mpc(mpmath.mpf(re), mpmath.mpf(im)) for re, im in row] for row in rows])
                return cls(dec(data["Omega1"]), dec(data["Omega2"]), prec, dict(data.get("diagnostics", {})))
        except (KeyError, TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed period matrix JSON: {exc}") from exc


# --------------------------------------------------------------------------
# quadrature plan and integrand evaluation
# --------------------------------------------------------------------------


@dataclass
class _Path:
    """Quadrature nodes of one segment or circle: params, weights (double and mp)."""

    ts: list
    ws: list
    ts_mp: list | None
    ws_mp: list | None


def _plan(panels, order: int, prec: int | None) -> _Path:
    xs, wx = gauss_legendre(order)
    ts, ws = [], []
    ts_mp, ws_mp = ([], []) if prec else (None, None)
    if prec:
        xm, wm = gauss_legendre(order, prec + 32)
    for s, t in panels:
        h = t - s
        ts.extend((s + h * xs).tolist())
        ws.extend((h * wx).tolist())
        if prec:
            with mpmath.workprec(prec + 32):
                ts_mp.extend(mpmath.mpf(s) + mpmath.mpf(h) * x for x in xm)
                ws_mp.extend(mpmath.mpf(h) * w for w in wm)
    return _Path(ts, ws, ts_mp, ws_mp)


class _DoubleIntegrand:
    def __init__(self, C: AffineCurve):
        self.c = [np.array([float(v) for v in reversed(row)]) for row in C.ycoeffs]
        self.nums = C.numerators

    def values(self, x: complex, ys: np.ndarray) -> np.ndarray:
        """Array [differential, sheet] of f(x, y) / P_y(x, y)."""
        n = len(self.c) - 1
        cx = [np.polyval(c, x) for c in self.c]
        py = sum(k * cx[k] * ys ** (k - 1) for k in range(1, n + 1))
        out = np.empty((len(self.nums), len(ys)), dtype=complex)
        for r, f in enumerate(self.nums):
            out[r] = sum(float(c) * x**i * ys**j for (i, j), c in f.items()) / py
        return out


class _MPIntegrand:
    """Newton refinement and integrand in gmpy2 at ``wp`` bits."""

    def __init__(self, C: AffineCurve, wp: int):
        self.wp = wp
        with gmpy2.context(gmpy2.get_context(), precision=wp):
            self.c = [[gmpy2.mpfr(v.numerator) / v.denominator for v in row] for row in C.ycoeffs]
            self.nums = [[(i, j, gmpy2.mpfr(c.numerator) / c.denominator) for (i, j), c in f.items()] for f in C.numerators]

    @staticmethod
    def _horner(coeffs, x):
        acc = gmpy2.mpc(0)
        for c in reversed(coeffs):
            acc = acc * x + c
        return acc

    def values(self, x, ys_double: np.ndarray):
        """Refined roots and integrand rows; x is a gmpy2 mpc."""
        wp = self.wp
        with gmpy2.context(gmpy2.get_context(), precision=wp):
            cx = [self._horner(row, x) for row in self.c]
            n = len(cx) - 1
            dcx = [k * cx[k] for k in range(1, n + 1)]
            eps = gmpy2.mpfr(2) ** (-wp + 12)
            ys = []
            for y0 in ys_double:
                y = gmpy2.mpc(complex(y0))
                for it in range(12):
                    p = cx[n]
                    dp = dcx[n - 1]
                    for k in range(n - 1, -1, -1):
                        p = p * y + cx[k]
                        if k:
                            dp = dp * y + dcx[k - 1]
                    step = p / dp
                    y -= step
                    if abs(step) <= eps * (1 + abs(y)):
                        break
                else:
                    raise IntegrationError("Newton refinement of a fibre root did not converge")
                if abs(y - gmpy2.mpc(complex(y0))) > 1e-6 * (1 + abs(complex(y0))):
                    raise IntegrationError("Newton refinement jumped to another sheet")
                ys.append(y)
            rows = []
            pys = []
            for y in ys:
                dp = dcx[n - 1]
                for k in range(n - 1, 0, -1):
                    dp = dp * y + dcx[k - 1]
                pys.append(dp)
            for f in self.nums:
                row = []
                for y, py in zip(ys, pys):
                    s = gmpy2.mpc(0)
                    for i, j, c in f:
                        s += c * x**i * y**j
                    row.append(s / py)
                rows.append(row)
            return rows


# --------------------------------------------------------------------------
# driver
# --------------------------------------------------------------------------


def _loop_integrals_double(C, layout, paths, tracks, perms):
    ig = _DoubleIntegrand(C)
    g = len(C.numerators)
    n = C.sheets
    m = len(layout.loops)
    I = np.zeros((g, m * n), dtype=complex)
    x0 = layout.base
    for i, loop in enumerate(layout.loops):
        a = loop.start(x0)
        (seg_path, circ_path), (seg_roots, circ_roots) = paths[i], tracks[i]
        S = np.zeros((g, n), dtype=complex)
        for k, (t, w) in enumerate(zip(seg_path.ts, seg_path.ws)):
            S += w * (a - x0) * ig.values(x0 + t * (a - x0), seg_roots[k + 1])
        Cc = np.zeros((g, n), dtype=complex)
        u = (x0 - loop.center) / abs(x0 - loop.center)
        for k, (t, w) in enumerate(zip(circ_path.ts, circ_path.ws)):
            x = loop.center + loop.radius * u * np.exp(2j * np.pi * t)
            Cc += w * 2j * np.pi * (x - loop.center) * ig.values(x, circ_roots[k + 1])
        for j in range(n):
            I[:, i * n + j] = S[:, j] + Cc[:, j] - S[:, perms[i][j]]
    return [[mpmath.mpc(v) for v in row] for row in I]


def _loop_integrals_mp(C, layout, paths, tracks, perms, prec):
    wp = prec + 32
    ig = _MPIntegrand(C, wp)
    g = len(C.numerators)
    n = C.sheets
    m = len(layout.loops)
    I = [[None] * (m * n) for _ in range(g)]
    with gmpy2.context(gmpy2.get_context(), precision=wp):
        x0 = gmpy2.mpc(layout.base)
        two_pi_i = gmpy2.mpc(0, 2 * gmpy2.const_pi())
        for i, loop in enumerate(layout.loops):
            b = gmpy2.mpc(loop.center)
            r = gmpy2.mpfr(loop.radius)
            u = (x0 - b) / abs(x0 - b)
            a = b + r * u
            seg_path, circ_path = paths[i]
            seg_roots, circ_roots = tracks[i]
            S = [[gmpy2.mpc(0)] * n for _ in range(g)]
            for k, (t, w) in enumerate(zip(seg_path.ts_mp, seg_path.ws_mp)):
                t, w = mpf_to_gmpy(t), mpf_to_gmpy(w)
                x = x0 + t * (a - x0)
                vals = ig.values(x, seg_roots[k + 1])
                fac = w * (a - x0)
                for rr in range(g):
                    for j in range(n):
                        S[rr][j] += fac * vals[rr][j]
            Cc = [[gmpy2.mpc(0)] * n for _ in range(g)]
            for k, (t, w) in enumerate(zip(circ_path.ts_mp, circ_path.ws_mp)):
                t, w = mpf_to_gmpy(t), mpf_to_gmpy(w)
                e = gmpy2.exp(two_pi_i * t)
                x = b + r * u * e
                vals = ig.values(x, circ_roots[k + 1])
                fac = w * two_pi_i * (x - b)
                for rr in range(g):
                    for j in range(n):
                        Cc[rr][j] += fac * vals[rr][j]
            for j in range(n):
                for rr in range(g):
                    I[rr][i * n + j] = gmpy_to_mpc(S[rr][j] + Cc[rr][j] - S[rr][perms[i][j]])
    return I


def _assemble(I, H: HomologyBasis, prec: int | None):
    g = H.genus
    with mpmath.workprec((prec or 53) + 32):
        cols = []
        for cyc in H.cycles:
            cols.append([mpmath.fsum(c * I[r][e] for e, c in enumerate(cyc) if c) for r in range(len(I))])
        A = mpmath.matrix([[cols[c][r] for c in range(g)] for r in range(len(I))])
        B = mpmath.matrix([[cols[g + c][r] for c in range(g)] for r in range(len(I))])
    return B, A


def compute_periods(C: AffineCurve, prec: int | None = None, variant: int = 0, order: int | None = None) -> tuple[PeriodMatrix, MonodromyData, HomologyBasis]:
    """Periods of the differentials of ``C`` over a symplectic homology basis.

    ``prec=None`` integrates in double precision; an integer selects the
    high-precision mode.  ``variant`` picks a different base point.
    """
    pts = branch_points(C)
    layout = layout_loops(pts, variant)
    bits = prec or 53
    order = order or nodes_for(bits)
    paths = []
    for loop in layout.loops:
        a = loop.start(layout.base)
        seg = _plan(segment_panels(layout.base, a, pts), order, prec)
        circ = _plan(circle_panels(CIRCLE_ARCS), order, prec)
        paths.append((seg, circ))
    seg_ts = [[0.0] + p[0].ts + [1.0] for p in paths]
    circ_ts = [[0.0] + p[1].ts + [1.0] for p in paths]
    M, tracker, y0, tracks = monodromy_from_layout(C, layout, seg_ts, circ_ts)
    M.check(C.genus)
    H = homology_symplectic_basis(M)
    if prec:
        I = _loop_integrals_mp(C, layout, paths, tracks, M.permutations, prec)
    else:
        I = _loop_integrals_double(C, layout, paths, tracks, M.permutations)
    omega1, omega2 = _assemble(I, H, prec)
    Om = PeriodMatrix(omega1, omega2, prec)
    flipped = False
    with mpmath.workprec(bits + 32):
        T = Om.tau_matrix()
        Y = T.apply(mpmath.im)
        Ys = (Y + Y.T) / 2
        lam = min_eigenvalue(Ys)
        if lam <= 0 and min_eigenvalue(-Ys) > 0:
            Om = PeriodMatrix(-omega1, omega2, prec)
            flipped = True
            lam = min_eigenvalue(-Ys)
    resid = Om.symmetry_residual()
    tol = DOUBLE_SYMMETRY_TOL if prec is None else 2.0 ** (-prec / 2)
    diag = {
        "rh_check": {"total_deficiency": M.total_deficiency(), "genus": M.genus(), "sheets": M.sheets},
        "symmetry_residual": resid,
        "min_eig_im_tau": lam,
        "branch_points": len(pts),
        "quadrature_order": order,
        "tracking_steps": tracker.steps,
        "orientation_flipped": flipped,
    }
    Om = PeriodMatrix(Om.omega1, Om.omega2, prec, diag)
    if not resid < tol or not lam > 0:
        raise IntegrationError(f"period matrix fails the Riemann relations: {diag}")
    return Om, M, H


def periods(C: AffineCurve, prec: int | None = None, variant: int = 0) -> PeriodMatrix:
    return compute_periods(C, prec, variant)[0]
