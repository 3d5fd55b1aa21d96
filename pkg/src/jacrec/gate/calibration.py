"""The constant c0 in KR = c0, fixed once from Ciani quartics and then frozen."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import mpmath

from ..errors import InconsistencyError, InvalidInput
from ..invariants import CianiMatrix, ciani_discriminant, ciani_form, discriminant
from ..periods import compute_periods, plane_quartic_curve
from ..theta import DEFAULT_PREC
from .value import klein_ratio, modular_value

SPREAD_TOL = 1e-4
MODULUS_TOL = 1e-6
DEFAULT_CURVES = (
    CianiMatrix.identity(),
    CianiMatrix(2, 3, 5, 0, 0, 0),
    CianiMatrix(3, 4, 5, 1, -1, 1),
)


@dataclass(frozen=True)
class CalibrationConstant:
    c0: mpmath.mpc
    provenance: list = field(default_factory=list, compare=False)

    @property
    def sign(self) -> int:
        """c0 snapped to +-1 (raises if it is not real)."""
        if abs(mpmath.im(self.c0)) > MODULUS_TOL:
            raise InconsistencyError(f"calibration constant {self.c0} is not real")
        return 1 if mpmath.re(self.c0) > 0 else -1

    def to_json(self) -> dict:
        return {
            "c0": str(self.sign),
            "c0_measured": [mpmath.nstr(mpmath.re(self.c0), 20), mpmath.nstr(mpmath.im(self.c0), 20)],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json(cls, data: dict) -> "CalibrationConstant":
        try:
            return cls(mpmath.mpc(int(data["c0"])), list(data.get("provenance", [])))
        except (KeyError, ValueError, TypeError) as exc:
            raise InvalidInput(f"malformed calibration record: {exc}") from exc


def _default_path() -> Path:
    return Path(str(resources.files("jacrec") / "data" / "calibration.json"))


def load_calibration(path: str | Path | None = None) -> CalibrationConstant:
    path = Path(path) if path else _default_path()
    if not path.exists():
        raise InvalidInput(f"no calibration record at {path}; run `jacrec calibrate`")
    return CalibrationConstant.from_json(json.loads(path.read_text()))


def calibration_sign(path: str | Path | None = None) -> int:
    return load_calibration(path).sign


def calibrate(
    curves=DEFAULT_CURVES,
    p: int = DEFAULT_PREC,
    period_prec: int | None = None,
    path: str | Path | None = None,
    persist: bool = False,
) -> CalibrationConstant:
    """Mean of KR over the Ciani quartics ``curves``.

    Every KR must be within 1e-6 of modulus one and within 1e-4 of the
    mean, else the conventions disagree and ``InconsistencyError`` is raised.
    """
    curves = [c if isinstance(c, CianiMatrix) else CianiMatrix.from_matrix(c) for c in curves]
    if not curves:
        raise InvalidInput("calibration needs at least one curve")
    ratios, record = [], []
    for m in curves:
        F = ciani_form(m)
        disc = ciani_discriminant(m)
        if disc == 0:
            raise InvalidInput(f"Ciani matrix {m.matrix()} gives a singular quartic")
        C = plane_quartic_curve(F)
        if C.form != F and discriminant(C.form).value != disc:
            raise InconsistencyError("coordinate change altered the discriminant")
        Om = compute_periods(C, period_prec)[0]
        kr = klein_ratio(modular_value(Om, p), disc)
        ratios.append(kr)
        record.append({
            "ciani": [[str(x) for x in row] for row in m.matrix()],
            "disc": str(disc),
            "kr": [mpmath.nstr(mpmath.re(kr), 20), mpmath.nstr(mpmath.im(kr), 20)],
        })
    with mpmath.workprec(p):
        mean = mpmath.fsum(ratios) / len(ratios)
        spread = max(abs(r - mean) for r in ratios)
        worst_mod = max(abs(abs(r) - 1) for r in ratios)
    if spread > SPREAD_TOL:
        raise InconsistencyError(f"Klein ratios disagree across curves (spread {mpmath.nstr(spread, 3)})")
    if worst_mod > MODULUS_TOL:
        raise InconsistencyError(f"Klein ratio off the unit circle by {mpmath.nstr(worst_mod, 3)}")
    cal = CalibrationConstant(mean, record)
    cal.sign  # noqa: B018  rejects a non-real mean
    if persist:
        out = Path(path) if path else _default_path()
        out.parent.mkdir(parents=True, exist_ok=True)
        out.write_text(json.dumps(cal.to_json(), indent=2) + "\n")
    return cal
