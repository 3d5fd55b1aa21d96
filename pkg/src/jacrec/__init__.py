"""Recognizing Jacobians among principally polarized abelian threefolds.

Subpackages:

* ``invariants`` -- exact resultants and discriminants of ternary forms
* ``theta`` -- theta constants, the weight 18 and 140 forms, Sp(2g, Z) action
* ``periods`` -- period matrices of plane quartics and hyperelliptic curves
* ``gate`` -- the modular value, Klein check, calibration, classification
"""

__version__ = "0.1.0"
