import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from helpers import random_quartic  # noqa: E402
from jacrec.invariants import TernaryForm, discriminant  # noqa: E402
from jacrec.periods import compute_periods, hyperelliptic_curve, plane_quartic_curve  # noqa: E402

HP_BITS = 212


@pytest.fixture(scope="session")
def hp_quartic():
    """(curve, exact Disc of the integrated model, 212-bit period matrix) of a dense quartic."""
    C = plane_quartic_curve(random_quartic(7))
    return C, discriminant(C.form).value, compute_periods(C, HP_BITS)[0]


@pytest.fixture(scope="session")
def fermat_periods():
    C = plane_quartic_curve(TernaryForm.from_expr("x^4 + y^4 + z^4"))
    return compute_periods(C)[0]


@pytest.fixture(scope="session")
def x8_periods():
    return compute_periods(hyperelliptic_curve([-1, 0, 0, 0, 0, 0, 0, 0, 1]))[0]
