import random

from jacrec.invariants import GL3Matrix, TernaryForm, monomials
from jacrec.errors import InvalidInput


def random_quartic(seed: int, lo: int = -3, hi: int = 3) -> TernaryForm:
    rng = random.Random(seed)
    return TernaryForm(4, {m: rng.randint(lo, hi) for m in monomials(4)})


def random_int_matrix(rng: random.Random, lo: int = -2, hi: int = 2) -> GL3Matrix:
    while True:
        rows = [[rng.randint(lo, hi) for _ in range(3)] for _ in range(3)]
        try:
            return GL3Matrix(rows)
        except InvalidInput:
            continue
