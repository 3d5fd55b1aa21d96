"""Points of the Siegel upper half space and the action of Sp(2g, Z)."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from typing import Sequence

import mpmath
import numpy as np

from ..errors import ConditioningError, InvalidInput
from ..mparith import bits_to_digits

DEFAULT_PREC = 212


def _mat(rows, g=None):
    M = mpmath.matrix(rows)
    if g is not None and (M.rows != g or M.cols != g):
        raise InvalidInput(f"expected a {g}x{g} matrix")
    return M


def _frob(M) -> mpmath.mpf:
    return mpmath.sqrt(sum(abs(M[i, j]) ** 2 for i in range(M.rows) for j in range(M.cols)))


def min_eigenvalue(Y) -> float:
    """Smallest eigenvalue of a real symmetric mpmath matrix (double precision)."""
    A = np.array([[float(Y[i, j]) for j in range(Y.cols)] for i in range(Y.rows)])
    return float(np.linalg.eigvalsh((A + A.T) / 2)[0])


@dataclass(frozen=True)
class SiegelPoint:
    """Symmetric g x g complex matrix with positive definite imaginary part.

    ``tau`` is an mpmath matrix whose entries carry ``prec`` bits.  Construction
    checks symmetry to ``sym_tol`` (default 2^{-prec+8} ||tau||) and then
    symmetrizes exactly.
    """

    tau: mpmath.matrix
    prec: int = DEFAULT_PREC

    def __post_init__(self):
        tau = self.tau if isinstance(self.tau, mpmath.matrix) else _mat(self.tau)
        object.__setattr__(self, "tau", tau)
        if tau.rows != tau.cols or tau.rows < 1:
            raise InvalidInput("tau must be a square matrix")

    @classmethod
    def create(cls, tau, prec: int = DEFAULT_PREC, sym_tol=None) -> "SiegelPoint":
        with mpmath.workprec(prec + 16):
            T = mpmath.matrix(tau) if not isinstance(tau, mpmath.matrix) else tau.copy()
            g = T.rows
            if T.cols != g:
                raise InvalidInput("tau must be square")
            T = mpmath.matrix([[mpmath.mpc(T[i, j]) for j in range(g)] for i in range(g)])
            norm = _frob(T)
            tol = sym_tol if sym_tol is not None else mpmath.ldexp(1, -prec + 8) * max(norm, 1)
            resid = _frob(T - T.T)
            if resid > tol:
                raise InvalidInput(f"tau is not symmetric: residual {mpmath.nstr(resid, 3)} > {mpmath.nstr(tol, 3)}")
            S = (T + T.T) / 2
            lam = min_eigenvalue(S.apply(mpmath.im))
            if not lam > 0:
                raise InvalidInput(f"Im tau is not positive definite (min eigenvalue {lam:.3e})")
        return cls(S, prec)

    @property
    def g(self) -> int:
        return self.tau.rows

    @property
    def real(self):
        return self.tau.apply(mpmath.re)

    @property
    def imag(self):
        return self.tau.apply(mpmath.im)

    def min_eig_imag(self) -> float:
        return min_eigenvalue(self.imag)

    def entry(self, i, j):
        return self.tau[i, j]

    def with_prec(self, prec: int) -> "SiegelPoint":
        return SiegelPoint(self.tau, prec)

    def to_json(self, digits: int | None = None) -> list:
        digits = digits or bits_to_digits(self.prec)
        return [
            [[mpmath.nstr(mpmath.re(self.tau[i, j]), digits), mpmath.nstr(mpmath.im(self.tau[i, j]), digits)] for j in range(self.g)]
            for i in range(self.g)
        ]

    @classmethod
    def from_json(cls, data, prec: int = DEFAULT_PREC, sym_tol=None) -> "SiegelPoint":
        """Read a g x g array of ``[re, im]`` decimal strings."""
        if isinstance(data, str):
            data = json.loads(data)
        try:
            with mpmath.workprec(prec + 16):
                rows = [[mpmath.mpc(mpmath.mpf(str(re)), mpmath.mpf(str(im))) for re, im in row] for row in data]
        except (TypeError, ValueError) as exc:
            raise InvalidInput(f"malformed tau JSON: {exc}") from exc
        return cls.create(rows, prec, sym_tol)

    def block_diagonal_with(self, other: "SiegelPoint") -> "SiegelPoint":
        g1, g2 = self.g, other.g
        T = mpmath.matrix(g1 + g2, g1 + g2)
        for i in range(g1):
            for j in range(g1):
                T[i, j] = self.tau[i, j]
        for i in range(g2):
            for j in range(g2):
                T[g1 + i, g1 + j] = other.tau[i, j]
        return SiegelPoint.create(T, min(self.prec, other.prec))

    def reduce_real_part(self) -> tuple["SiegelPoint", "SymplecticMatrix"]:
        """Shift Re(tau) entrywise into [-1/2, 1/2] by an integral translation."""
        g = self.g
        B = [[-int(mpmath.nint(mpmath.re(self.tau[i, j]))) for j in range(g)] for i in range(g)]
        M = SymplecticMatrix.translation(B)
        return sp_action(M, self)[0], M


def random_siegel_point(g: int, rng: random.Random, prec: int = DEFAULT_PREC, min_eig: float = 0.6) -> SiegelPoint:
    """Random tau with |Re| <= 1/2 and Im tau = A A^T + min_eig I (decimal-exact entries)."""
    with mpmath.workprec(prec + 16):
        X = [[0] * g for _ in range(g)]
        A = [[mpmath.mpf(rng.randint(-400, 400)) / 1000 for _ in range(g)] for _ in range(g)]
        for i in range(g):
            for j in range(i, g):
                X[i][j] = X[j][i] = mpmath.mpf(rng.randint(-500, 500)) / 1000
        Y = [[sum(A[i][k] * A[j][k] for k in range(g)) + (min_eig if i == j else 0) for j in range(g)] for i in range(g)]
        tau = [[mpmath.mpc(X[i][j], Y[i][j]) for j in range(g)] for i in range(g)]
    return SiegelPoint.create(tau, prec)


# --------------------------------------------------------------------------
# Sp(2g, Z)
# --------------------------------------------------------------------------


def _int_matrix(M) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(x) for x in row) for row in M)


@dataclass(frozen=True)
class SymplecticMatrix:
    """Integral M = [[a, b], [c, d]] with M^T J M = J, J = [[0, I], [-I, 0]]."""

    a: tuple
    b: tuple
    c: tuple
    d: tuple

    def __post_init__(self):
        for name in "abcd":
            object.__setattr__(self, name, _int_matrix(getattr(self, name)))
        if not self.is_symplectic():
            raise InvalidInput("matrix is not symplectic")

    @property
    def g(self) -> int:
        return len(self.a)

    def full(self) -> np.ndarray:
        return np.block([[np.array(self.a, dtype=object), np.array(self.b, dtype=object)],
                         [np.array(self.c, dtype=object), np.array(self.d, dtype=object)]])

    @classmethod
    def from_full(cls, M) -> "SymplecticMatrix":
        M = np.asarray(M, dtype=object)
        g = M.shape[0] // 2
        return cls(M[:g, :g].tolist(), M[:g, g:].tolist(), M[g:, :g].tolist(), M[g:, g:].tolist())

    def is_symplectic(self) -> bool:
        g = len(self.a)
        M = np.block([[np.array(self.a, dtype=object), np.array(self.b, dtype=object)],
                      [np.array(self.c, dtype=object), np.array(self.d, dtype=object)]])
        if M.shape != (2 * g, 2 * g):
            return False
        J = standard_J(g)
        return bool(np.array_equal(M.T.dot(J).dot(M), J))

    def __matmul__(self, other: "SymplecticMatrix") -> "SymplecticMatrix":
        return SymplecticMatrix.from_full(self.full().dot(other.full()))

    def inverse(self) -> "SymplecticMatrix":
        # M^{-1} = J^{-1} M^T J = [[d^T, -b^T], [-c^T, a^T]]
        a, b, c, d = (np.array(x, dtype=object) for x in (self.a, self.b, self.c, self.d))
        return SymplecticMatrix(d.T.tolist(), (-b.T).tolist(), (-c.T).tolist(), a.T.tolist())

    @classmethod
    def identity(cls, g: int) -> "SymplecticMatrix":
        I, Z = np.eye(g, dtype=int), np.zeros((g, g), dtype=int)
        return cls(I, Z, Z, I)

    @classmethod
    def J(cls, g: int) -> "SymplecticMatrix":
        I, Z = np.eye(g, dtype=int), np.zeros((g, g), dtype=int)
        return cls(Z, -I, I, Z)

    @classmethod
    def translation(cls, B) -> "SymplecticMatrix":
        B = np.array(B, dtype=int)
        g = B.shape[0]
        I, Z = np.eye(g, dtype=int), np.zeros((g, g), dtype=int)
        return cls(I, B, Z, I)

    @classmethod
    def rotation(cls, A) -> "SymplecticMatrix":
        """diag(A, A^{-T}) for unimodular integral A."""
        A = np.array(A, dtype=object)
        Ainv = _unimodular_inverse(A)
        g = A.shape[0]
        Z = np.zeros((g, g), dtype=int)
        return cls(A.tolist(), Z, Z, Ainv.T.tolist())


def standard_J(g: int) -> np.ndarray:
    J = np.zeros((2 * g, 2 * g), dtype=object)
    for i in range(g):
        J[i, g + i] = 1
        J[g + i, i] = -1
    return J


def _unimodular_inverse(A: np.ndarray) -> np.ndarray:
    M = mpmath.matrix(A.tolist())
    det = int(mpmath.nint(mpmath.det(M)))
    if abs(det) != 1:
        raise InvalidInput("rotation block must be unimodular")
    inv = mpmath.inverse(M)
    return np.array([[int(mpmath.nint(inv[i, j])) for j in range(M.cols)] for i in range(M.rows)], dtype=object)


def symplectic_generators(g: int) -> list[SymplecticMatrix]:
    """J, elementary translations and elementary rotations (with inverses)."""
    gens = [SymplecticMatrix.J(g), SymplecticMatrix.J(g).inverse()]
    for i in range(g):
        for j in range(i, g):
            B = np.zeros((g, g), dtype=int)
            B[i, j] = B[j, i] = 1
            gens.append(SymplecticMatrix.translation(B))
            gens.append(SymplecticMatrix.translation(-B))
    for i in range(g):
        for j in range(g):
            if i != j:
                A = np.eye(g, dtype=int)
                A[i, j] = 1
                gens.append(SymplecticMatrix.rotation(A))
                A[i, j] = -1
                gens.append(SymplecticMatrix.rotation(A))
    return gens


def random_symplectic_word(g: int, rng: random.Random, max_length: int = 5) -> SymplecticMatrix:
    gens = symplectic_generators(g)
    M = SymplecticMatrix.identity(g)
    for _ in range(rng.randint(1, max_length)):
        M = rng.choice(gens) @ M
    return M


def sp_action(M: SymplecticMatrix, tau: SiegelPoint, cond_limit: float = 1e12):
    """Return ``(M.tau, det(c tau + d))`` with M.tau = (a tau + b)(c tau + d)^{-1}."""
    g = tau.g
    if M.g != g:
        raise InvalidInput("genus mismatch between M and tau")
    wp = tau.prec + 24
    with mpmath.workprec(wp):
        a, b, c, d = (mpmath.matrix([list(map(int, r)) for r in blk]) for blk in (M.a, M.b, M.c, M.d))
        T = tau.tau
        den = c * T + d
        detj = mpmath.det(den)
        cond = mpmath.mnorm(den, 1) * mpmath.mnorm(mpmath.inverse(den), 1) if detj != 0 else mpmath.inf
        if not cond < cond_limit:
            raise ConditioningError(f"c tau + d is ill-conditioned (cond {mpmath.nstr(cond, 3)})")
        new = (a * T + b) * mpmath.inverse(den)
        tol = mpmath.ldexp(1, -tau.prec + 8) * max(_frob(new), 1) * max(cond, 1)
    return SiegelPoint.create(new, tau.prec, sym_tol=tol), detj
