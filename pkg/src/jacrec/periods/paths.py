"""Branch points, base point and the star of keyhole loops around them.

Loop i leaves the base point x0 along a straight segment, runs once
counterclockwise around the circle |x - b_i| = r_i, and returns along the
same segment.  Branch points are ordered by the argument of b_i - x0; x0
lies to the right of every branch point, so the direction 0 from x0 is
free of loops.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import mpmath
import numpy as np
import sympy

from ..errors import ConditioningError
from .curve import AffineCurve

_X = sympy.Symbol("x")


def branch_points(C: AffineCurve, digits: int = 30) -> list[complex]:
    """Distinct roots of Disc_y P, ordered by argument around their barycenter."""
    D = C.discriminant_x()
    sqf = sympy.Poly(sympy.quo(D, sympy.gcd(D, D.diff(_X))), _X)
    if sqf.degree() < 1:
        return []
    roots = [complex(r) for r in sqf.nroots(n=digits, maxsteps=200)]
    c = sum(roots) / len(roots)
    return sorted(roots, key=lambda b: (cmath.phase(b - c), abs(b - c)))


def _seg_dist(p: complex, a: complex, b: complex) -> float:
    d = b - a
    t = ((p - a) * d.conjugate()).real / (abs(d) ** 2)
    t = min(1.0, max(0.0, t))
    return abs(p - (a + t * d))


@dataclass(frozen=True)
class Loop:
    center: complex
    radius: float
    angle: float  # argument of center - x0, in (pi/2, 3 pi/2)

    def start(self, x0: complex) -> complex:
        u = (x0 - self.center) / abs(x0 - self.center)
        return self.center + self.radius * u


@dataclass(frozen=True)
class LoopLayout:
    base: complex
    loops: tuple[Loop, ...]
    clearance: float  # min distance from a segment to any other branch point

    @property
    def points(self) -> list[complex]:
        return [l.center for l in self.loops]


def _clearance(x0: complex, pts: list[complex]) -> float:
    best = math.inf
    for i, b in enumerate(pts):
        for j, c in enumerate(pts):
            if i != j:
                best = min(best, _seg_dist(c, x0, b))
    return best


def layout_loops(points: list[complex], variant: int = 0, radius_factor: float = 0.4) -> LoopLayout:
    """Pick x0 and loop radii.  ``variant`` selects a different base point."""
    if not points:
        raise ConditioningError("no branch points")
    pts = list(points)
    re_max = max(b.real for b in pts)
    spread = max([abs(b - c) for b in pts for c in pts] + [1.0])
    im_mid = sum(b.imag for b in pts) / len(pts)
    cands = []
    for k in range(24):
        off = spread * (1.1 + 0.25 * (k % 4))
        tilt = spread * (0.07 * ((k * 7) % 12) - 0.38)
        cands.append(complex(re_max + off, im_mid + tilt + 0.0123 * spread))
    scored = sorted(cands, key=lambda x: -_clearance(x, pts))
    x0 = scored[variant % len(scored)]
    clear = _clearance(x0, pts)
    if not clear > 1e-8 * spread:
        raise ConditioningError("branch points are collinear with every candidate base point")
    loops = []
    for i, b in enumerate(pts):
        near = min([abs(b - c) for j, c in enumerate(pts) if j != i], default=spread)
        segs = min([_seg_dist(b, x0, c) for j, c in enumerate(pts) if j != i], default=spread)
        r = radius_factor * min(near, segs, abs(x0 - b))
        ang = cmath.phase(b - x0) % (2 * math.pi)
        loops.append(Loop(b, r, ang))
    loops.sort(key=lambda l: l.angle)
    return LoopLayout(x0, tuple(loops), clear)


# --------------------------------------------------------------------------
# quadrature panels
# --------------------------------------------------------------------------


def segment_panels(a: complex, b: complex, points: list[complex], ratio: float = 0.5) -> list[tuple[float, float]]:
    """Split [a, b] (parameter t in [0, 1]) so each panel is shorter than
    ``ratio`` times its distance to the nearest branch point."""
    L = abs(b - a)
    out = []
    stack = [(0.0, 1.0)]
    while stack:
        s, t = stack.pop()
        xa, xb = a + s * (b - a), a + t * (b - a)
        rho = min(_seg_dist(p, xa, xb) for p in points)
        if (t - s) * L > ratio * rho and (t - s) * L > 1e-12 * L:
            m = (s + t) / 2
            stack.append((m, t))
            stack.append((s, m))
        else:
            out.append((s, t))
    return out


def circle_panels(count: int) -> list[tuple[float, float]]:
    return [(k / count, (k + 1) / count) for k in range(count)]


_GL_CACHE: dict = {}


def gauss_legendre(n: int, prec: int | None = None):
    """Nodes and weights on [0, 1]; numpy floats, or mpf at ``prec`` bits."""
    key = (n, prec)
    if key in _GL_CACHE:
        return _GL_CACHE[key]
    x0, w0 = np.polynomial.legendre.leggauss(n)
    if prec is None:
        res = ((x0 + 1) / 2, w0 / 2)
    else:
        nodes, weights = [], []
        with mpmath.workprec(prec + 20):
            for x in x0:
                x = mpmath.mpf(x)
                for _ in range(100):
                    p0, p1 = mpmath.mpf(1), x
                    for k in range(2, n + 1):
                        p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                    dp = n * (x * p1 - p0) / (x * x - 1)
                    dx = p1 / dp
                    x -= dx
                    if abs(dx) < mpmath.ldexp(1, -prec - 10):
                        break
                p0, p1 = mpmath.mpf(1), x
                for k in range(2, n + 1):
                    p0, p1 = p1, ((2 * k - 1) * x * p1 - (k - 1) * p0) / k
                dp = n * (x * p1 - p0) / (x * x - 1)
                nodes.append((x + 1) / 2)
                weights.append(1 / ((1 - x * x) * dp * dp))
        res = (nodes, weights)
    _GL_CACHE[key] = res
    return res
