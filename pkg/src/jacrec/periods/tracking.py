"""Continuation of the fibre roots along paths, and the resulting monodromy."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from ..errors import ConditioningError, InvalidInput
from .curve import AffineCurve
from .paths import Loop, LoopLayout, branch_points, layout_loops

Permutation = tuple[int, ...]

_MIN_STEP = 1e-11
_MATCH_FRACTION = 0.3


def compose(p: Permutation, q: Permutation) -> Permutation:
    """(p o q)(j) = p[q[j]]."""
    return tuple(p[q[j]] for j in range(len(q)))


def cycle_count(p: Permutation) -> int:
    seen, count = set(), 0
    for s in range(len(p)):
        if s not in seen:
            count += 1
            while s not in seen:
                seen.add(s)
                s = p[s]
    return count


def cycle_type(p: Permutation) -> list[int]:
    seen, lengths = set(), []
    for s in range(len(p)):
        if s not in seen:
            n = 0
            while s not in seen:
                seen.add(s)
                s = p[s]
                n += 1
            lengths.append(n)
    return sorted(lengths, reverse=True)


def inverse(p: Permutation) -> Permutation:
    out = [0] * len(p)
    for j, k in enumerate(p):
        out[k] = j
    return tuple(out)


class Tracker:
    """Predictor-corrector continuation of all n roots of P(x, .) in double precision.

    A step is accepted when the Euler prediction matches the new roots
    one-to-one, each within ``_MATCH_FRACTION`` of the root separation, and
    the step is at most half the distance to the nearest branch point.
    """

    def __init__(self, curve: AffineCurve, points: Sequence[complex]):
        self.curve = curve
        self.points = np.array(points, dtype=complex)
        self._c = [np.array([float(c) for c in reversed(row)]) for row in curve.ycoeffs]
        self._dc = [np.polyder(c) if len(c) > 1 else np.zeros(1) for c in self._c]
        self.steps = 0

    def coeffs(self, x: complex) -> np.ndarray:
        return np.array([np.polyval(c, x) for c in reversed(self._c)])

    def roots(self, x: complex) -> np.ndarray:
        return np.roots(self.coeffs(x))

    def slope(self, x: complex, y: np.ndarray) -> np.ndarray:
        n = len(self._c) - 1
        cx = [np.polyval(c, x) for c in self._c]
        dcx = [np.polyval(c, x) for c in self._dc]
        py = sum(k * cx[k] * y ** (k - 1) for k in range(1, n + 1))
        px = sum(dcx[k] * y**k for k in range(n + 1))
        return -px / py

    def _dist_to_branch(self, x: complex) -> float:
        if len(self.points) == 0:
            return math.inf
        return float(np.min(np.abs(self.points - x)))

    @staticmethod
    def _sep(y: np.ndarray) -> float:
        d = np.abs(y[:, None] - y[None, :])
        np.fill_diagonal(d, np.inf)
        return float(d.min())

    def match(self, pred: np.ndarray, new: np.ndarray, tol: float) -> np.ndarray | None:
        d = np.abs(pred[:, None] - new[None, :])
        idx = d.argmin(axis=1)
        if len(set(idx.tolist())) != len(idx):
            return None
        if np.max(d[np.arange(len(idx)), idx]) > tol:
            return None
        return new[idx]

    def track(self, xfun: Callable[[float], complex], ts: Sequence[float], y0: np.ndarray) -> np.ndarray:
        """Roots (sheet order of ``y0``) at each parameter in ``ts``; ``xfun(ts[0])`` carries ``y0``."""
        y = np.array(y0, dtype=complex)
        out = [y.copy()]
        t = ts[0]
        h = (ts[-1] - ts[0]) / 8 if len(ts) > 1 else 0
        for target in ts[1:]:
            while t < target:
                step = min(h, target - t)
                x = xfun(t)
                while True:
                    xn = xfun(t + step)
                    dx = xn - x
                    if abs(dx) <= 0.5 * self._dist_to_branch(x):
                        pred = y + self.slope(x, y) * dx
                        new = self.roots(xn)
                        tol = _MATCH_FRACTION * min(self._sep(new), self._sep(y))
                        got = self.match(pred, new, tol)
                        if got is not None:
                            break
                    step /= 2
                    if step < _MIN_STEP * max(1.0, abs(ts[-1] - ts[0])):
                        raise ConditioningError(f"root tracking stalled near x = {x:.6g}")
                self.steps += 1
                y = got
                t = t + step if t + step < target else target
                h = min(2 * step, (ts[-1] - ts[0]) / 4)
            out.append(y.copy())
        return np.array(out)


@dataclass(frozen=True)
class MonodromyData:
    """Monodromy of the projection to x around each finite branch point.

    ``permutations[i][j]`` is the sheet reached from sheet j after the loop
    around ``points[i]``.  ``infinity`` is the permutation of a loop around
    x = infinity (identity when that fibre is unramified).
    """

    base: complex
    points: tuple[complex, ...]
    permutations: tuple[Permutation, ...]
    sheets: int
    infinity: Permutation

    def product(self) -> Permutation:
        """Monodromy of the loops run in order, composed with the one at infinity."""
        total = tuple(range(self.sheets))
        for p in self.permutations:
            total = compose(p, total)
        return compose(self.infinity, total)

    def is_transitive(self) -> bool:
        reach, todo = {0}, [0]
        while todo:
            s = todo.pop()
            for p in self.permutations:
                if p[s] not in reach:
                    reach.add(p[s])
                    todo.append(p[s])
        return len(reach) == self.sheets

    def deficiencies(self) -> list[int]:
        out = [self.sheets - cycle_count(p) for p in self.permutations]
        out.append(self.sheets - cycle_count(self.infinity))
        return out

    def total_deficiency(self) -> int:
        return sum(self.deficiencies())

    def genus(self) -> int:
        """From Riemann-Hurwitz: 2g - 2 = -2n + total deficiency."""
        tot = self.total_deficiency()
        if tot % 2:
            raise InvalidInput("odd total ramification")
        return tot // 2 - self.sheets + 1

    def check(self, expected_genus: int | None = None):
        from ..errors import InconsistencyError

        if self.product() != tuple(range(self.sheets)):
            raise InconsistencyError("monodromy product is not the identity")
        if not self.is_transitive():
            raise InconsistencyError("monodromy group is not transitive")
        if expected_genus is not None and self.genus() != expected_genus:
            raise InconsistencyError(
                f"Riemann-Hurwitz gives genus {self.genus()}, expected {expected_genus}"
            )


def base_fibre(tracker: Tracker, x0: complex) -> np.ndarray:
    y = tracker.roots(x0)
    return y[np.lexsort((y.imag, y.real))]


def segment_fun(x0: complex, a: complex):
    return lambda t: x0 + t * (a - x0)


def circle_fun(loop: Loop, x0: complex):
    u = (x0 - loop.center) / abs(x0 - loop.center)
    return lambda t: loop.center + loop.radius * u * np.exp(2j * np.pi * t)


def loop_permutation(tracker: Tracker, start: np.ndarray, end: np.ndarray) -> Permutation:
    tol = _MATCH_FRACTION * Tracker._sep(start)
    d = np.abs(end[:, None] - start[None, :])
    idx = d.argmin(axis=1)
    if len(set(idx.tolist())) != len(idx) or d[np.arange(len(idx)), idx].max() > tol:
        raise ConditioningError("loop endpoint does not match the starting fibre")
    return tuple(int(k) for k in idx)


def monodromy(C: AffineCurve, variant: int = 0) -> MonodromyData:
    """Monodromy of ``C`` around its branch points (double precision tracking)."""
    pts = branch_points(C)
    layout = layout_loops(pts, variant)
    return monodromy_from_layout(C, layout)[0]


def monodromy_from_layout(C: AffineCurve, layout: LoopLayout, seg_ts=None, circ_ts=None):
    """Track every loop; returns (MonodromyData, tracker, base fibre, per-loop tracks).

    ``seg_ts[i]`` and ``circ_ts[i]`` are sorted parameter lists (starting at
    0 and ending at 1) at which the roots are recorded.
    """
    tracker = Tracker(C, layout.points)
    y0 = base_fibre(tracker, layout.base)
    perms, tracks = [], []
    for i, loop in enumerate(layout.loops):
        a = loop.start(layout.base)
        sts = seg_ts[i] if seg_ts is not None else [0.0, 1.0]
        cts = circ_ts[i] if circ_ts is not None else [0.0, 1.0]
        seg = tracker.track(segment_fun(layout.base, a), sts, y0)
        circ = tracker.track(circle_fun(loop, layout.base), cts, seg[-1])
        perms.append(loop_permutation(tracker, seg[-1], circ[-1]))
        tracks.append((seg, circ))
    big = infinity_loop(tracker, layout, y0)
    data = MonodromyData(layout.base, tuple(layout.points), tuple(perms), C.sheets, inverse(big))
    return data, tracker, y0, tracks


def infinity_loop(tracker: Tracker, layout: LoopLayout, y0: np.ndarray) -> Permutation:
    """Monodromy of a large counterclockwise circle around all branch points.

    Computed independently of the small loops, so that comparing it with
    their product checks both the tracking and the loop ordering.
    """
    pts = layout.points
    c = sum(pts) / len(pts)
    x0 = layout.base
    u = (x0 - c) / abs(x0 - c)
    R = 2 * max(abs(x0 - c), max(abs(b - c) for b in pts))
    out = tracker.track(segment_fun(x0, c + R * u), [0.0, 1.0], y0)
    circ = Loop(c, R, 0.0)
    ring = tracker.track(lambda t: c + R * u * np.exp(2j * np.pi * t), [0.0, 1.0], out[-1])
    p = loop_permutation(tracker, out[-1], ring[-1])
    return p
