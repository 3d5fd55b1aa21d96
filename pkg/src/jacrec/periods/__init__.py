"""Period matrices of plane curves and hyperelliptic curves of genus 3."""

from .curve import AffineCurve, classical_differentials, hyperelliptic_curve, plane_quartic_curve
from .homology import HomologyBasis, homology_symplectic_basis
from .integrate import PeriodMatrix, compute_periods, periods
from .paths import branch_points
from .tracking import MonodromyData, monodromy

__all__ = [
    "AffineCurve",
    "HomologyBasis",
    "MonodromyData",
    "PeriodMatrix",
    "branch_points",
    "classical_differentials",
    "compute_periods",
    "homology_symplectic_basis",
    "hyperelliptic_curve",
    "monodromy",
    "periods",
    "plane_quartic_curve",
]
