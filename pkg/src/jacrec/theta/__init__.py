"""Theta constants, the Sp(2g, Z) action and modular forms in theta constants."""

from .characteristics import (
    ThetaCharacteristic,
    chi_weight,
    enumerate_characteristics,
    even_characteristics,
    even_count,
    odd_characteristics,
)
from .modular import FormValue, ZeroTest, ZeroVerdict, chi_product, elementary_symmetric, relative_threshold, sigma140
from .series import ThetaValue, theta, theta_constants
from .siegel import (
    DEFAULT_PREC,
    SiegelPoint,
    SymplecticMatrix,
    random_siegel_point,
    random_symplectic_word,
    sp_action,
    symplectic_generators,
)

__all__ = [
    "DEFAULT_PREC",
    "FormValue",
    "SiegelPoint",
    "SymplecticMatrix",
    "ThetaCharacteristic",
    "ThetaValue",
    "ZeroTest",
    "ZeroVerdict",
    "chi_product",
    "chi_weight",
    "elementary_symmetric",
    "enumerate_characteristics",
    "even_characteristics",
    "even_count",
    "odd_characteristics",
    "relative_threshold",
    "random_siegel_point",
    "random_symplectic_word",
    "sigma140",
    "sp_action",
    "symplectic_generators",
    "theta",
    "theta_constants",
]
