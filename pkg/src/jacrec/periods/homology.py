"""Integral homology of the covering surface from its monodromy.

Edge (i, j) is the lift of loop i starting on sheet j; it ends on sheet
sigma_i(j).  Closed integer chains of edges span H_1 of the compact curve.
All intersections of two such chains happen over the base point x0: there
loop i of the first chain leaves along the ray at angle theta_i - delta and
comes back along theta_i + delta, while the second chain uses a thinner
keyhole (delta' < delta), so the two never meet elsewhere.  At each base
sheet both chains are split into corners through reference rays in the
empty direction 0 and the corners are compared pairwise.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import InconsistencyError, InvalidInput
from ..exact import integer_kernel, matmul, transpose
from .tracking import MonodromyData


def edge_index(i: int, j: int, n: int) -> int:
    return i * n + j


def boundary_matrix(M: MonodromyData) -> list[list[int]]:
    """n x (m n) matrix sending edge (i, j) to [sigma_i(j)] - [j]."""
    n, m = M.sheets, len(M.permutations)
    B = [[0] * (m * n) for _ in range(n)]
    for i, p in enumerate(M.permutations):
        for j in range(n):
            e = edge_index(i, j, n)
            B[p[j]][e] += 1
            B[j][e] -= 1
    return B


def cycle_lattice(M: MonodromyData) -> list[list[int]]:
    return integer_kernel(boundary_matrix(M), len(M.permutations) * M.sheets)


def _in_arc(pos: dict, x, a, b, size: int) -> bool:
    """x strictly inside the counterclockwise arc from ray a to ray b."""
    dx = (pos[x] - pos[a]) % size
    db = (pos[b] - pos[a]) % size
    return 0 < dx < db


def _corner_sign(pos, size, A, B) -> int:
    """Local intersection number of corner A = (in, out) with corner B."""
    a_in, a_out = A
    b_in, b_out = B
    bo = _in_arc(pos, b_out, a_out, a_in, size)
    bi = _in_arc(pos, b_in, a_out, a_in, size)
    if bo and not bi:
        return 1
    if bi and not bo:
        return -1
    return 0


def edge_intersections(M: MonodromyData) -> list[list[int]]:
    """Bilinear form on edges whose restriction to closed chains is the intersection pairing."""
    n, m = M.sheets, len(M.permutations)
    # rays: (loop, kind); kinds -2 out/-1 out'/+1 in'/+2 in; references sit before every loop
    rays = [("ref", 0), ("ref", 1)] + [(i, k) for i in range(m) for k in (-2, -1, 1, 2)]
    pos = {r: t for t, r in enumerate(rays)}
    size = len(rays)
    ref1, ref2 = ("ref", 0), ("ref", 1)

    def corners(i, j, first: bool):
        """Corners (vertex, (in_ray, out_ray)) of edge (i, j)."""
        k_out, k_in = (-2, 2) if first else (-1, 1)
        ref = ref1 if first else ref2
        return [(j, (ref, (i, k_out))), (M.permutations[i][j], ((i, k_in), ref))]

    N = m * n
    E = [[0] * N for _ in range(N)]
    first = [corners(i, j, True) for i in range(m) for j in range(n)]
    second = [corners(i, j, False) for i in range(m) for j in range(n)]
    for e in range(N):
        for f in range(N):
            s = 0
            for v1, A in first[e]:
                for v2, B in second[f]:
                    if v1 == v2:
                        s += _corner_sign(pos, size, A, B)
            E[e][f] = s
    return E


def symplectic_reduction(K: list[list[int]]):
    """Unimodular U with U K U^T = [[0, D], [-D, 0]] + 0 over Z.

    Returns (U, D) where D lists the elementary divisors.  Pivots are the
    smallest nonzero entries, earliest index first.
    """
    N = len(K)
    K = [row[:] for row in K]
    U = [[1 if i == j else 0 for j in range(N)] for i in range(N)]

    def swap(a, b):
        if a == b:
            return
        K[a], K[b] = K[b], K[a]
        for row in K:
            row[a], row[b] = row[b], row[a]
        U[a], U[b] = U[b], U[a]

    def add(dst, src, q):
        # basis vector dst += q * src
        if not q:
            return
        for c in range(N):
            K[dst][c] += q * K[src][c]
        for r in range(N):
            K[r][dst] += q * K[r][src]
        U[dst] = [x + q * y for x, y in zip(U[dst], U[src])]

    divisors = []
    top = 0
    while top < N:
        best = None
        for i in range(top, N):
            for j in range(i + 1, N):
                v = K[i][j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
        if best is None:
            break
        _, i, j = best
        swap(top, i)
        swap(top + 1, j)
        e, f = top, top + 1
        if K[e][f] < 0:
            U[f] = [-x for x in U[f]]
            for c in range(N):
                K[f][c] = -K[f][c]
            for r in range(N):
                K[r][f] = -K[r][f]
        d = K[e][f]
        smaller = False
        for k in range(top + 2, N):
            if K[e][k] % d or K[f][k] % d:
                # Euclid step produces a smaller pivot; restart the search
                if K[e][k] % d:
                    add(k, f, -(K[e][k] // d))
                else:
                    add(k, e, K[f][k] // d)
                smaller = True
                break
            add(k, e, K[f][k] // d)
            add(k, f, -(K[e][k] // d))
        if smaller:
            continue
        divisors.append(d)
        top += 2
    # order: e_1..e_g then f_1..f_g
    g = len(divisors)
    order = [2 * t for t in range(g)] + [2 * t + 1 for t in range(g)] + list(range(2 * g, N))
    return [U[t] for t in order], divisors


@dataclass(frozen=True)
class HomologyBasis:
    """A- and B-cycles as integer combinations of edges.

    ``cycles`` has 2g rows (A_1..A_g, B_1..B_g) of length m n;
    ``intersection`` is their intersection matrix (the standard J);
    ``certificate`` is the unimodular matrix taking the kernel basis
    ``lattice`` to the reduced basis.
    """

    cycles: tuple
    intersection: tuple
    genus: int
    lattice: tuple
    certificate: tuple


def homology_symplectic_basis(M: MonodromyData) -> HomologyBasis:
    L = cycle_lattice(M)
    E = edge_intersections(M)
    K = matmul(matmul(L, E), transpose(L))
    N = len(K)
    if any(K[i][j] != -K[j][i] for i in range(N) for j in range(N)):
        raise InconsistencyError("intersection form on cycles is not skew-symmetric")
    U, divisors = symplectic_reduction(K)
    g = len(divisors)
    if any(d != 1 for d in divisors):
        raise InconsistencyError(f"intersection form is not unimodular (divisors {divisors})")
    try:
        expected = M.genus()
    except InvalidInput:
        expected = None
    if expected is not None and g != expected:
        raise InconsistencyError(f"homology rank {2 * g} but Riemann-Hurwitz gives genus {expected}")
    basis = matmul(U[: 2 * g], L)
    J = matmul(matmul(basis, E), transpose(basis))
    target = [[(1 if c == r + g else -1 if r == c + g else 0) for c in range(2 * g)] for r in range(2 * g)]
    if J != target:
        raise InconsistencyError("symplectic reduction did not reach the standard form")
    return HomologyBasis(
        tuple(tuple(r) for r in basis),
        tuple(tuple(r) for r in J),
        g,
        tuple(tuple(r) for r in L),
        tuple(tuple(r) for r in U),
    )
