"""Modular value, Klein's check, calibration and the Jacobian classifier."""

from .calibration import CalibrationConstant, calibrate, calibration_sign, load_calibration
from .classify import ClassificationResult, Verdict, classify, scale_periods
from .recognize import rational_reconstruct, recognize_square_class, square_class, squarefree_part
from .value import KleinResult, ModularValue, klein_check, klein_ratio, modular_value

__all__ = [
    "CalibrationConstant",
    "ClassificationResult",
    "KleinResult",
    "ModularValue",
    "Verdict",
    "calibrate",
    "calibration_sign",
    "classify",
    "klein_check",
    "klein_ratio",
    "load_calibration",
    "modular_value",
    "rational_reconstruct",
    "recognize_square_class",
    "scale_periods",
    "square_class",
    "squarefree_part",
]
