"""Command line front end: ``jacrec <subcommand> ...``.

Exit codes: 0 success, 2 invalid input, 3 numerically indeterminate,
4 internal inconsistency.  With ``--json`` every number is printed as a
decimal string.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

import mpmath

from .errors import InconsistencyError, InvalidInput, JacrecError, NumericIndeterminate
from .invariants import CianiMatrix, TernaryForm, ciani_discriminant, ciani_form, discriminant, macaulay_resultant
from .theta import DEFAULT_PREC, SiegelPoint, ThetaCharacteristic, ZeroVerdict, chi_product, sigma140, theta_constants
from .theta.characteristics import enumerate_characteristics

EXIT_OK = 0
EXIT_INDETERMINATE = NumericIndeterminate.exit_code


def _load_json_arg(text: str):
    """Inline JSON, ``@path`` / an existing path, or ``-`` for stdin."""
    if text == "-":
        return json.load(sys.stdin)
    path = Path(text[1:] if text.startswith("@") else text)
    if text.startswith("@") or (path.suffix == ".json" and path.exists()):
        try:
            return json.loads(path.read_text())
        except OSError as exc:
            raise InvalidInput(f"cannot read {path}: {exc}") from exc
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidInput(f"expected JSON or a .json file, got {text!r}") from exc


def _form(text: str) -> TernaryForm:
    stripped = text.strip()
    if stripped.startswith("{") or stripped.startswith("@") or stripped == "-" or stripped.endswith(".json"):
        return TernaryForm.from_json(_load_json_arg(stripped))
    return TernaryForm.from_expr(stripped)


def _tau(text: str, prec: int) -> SiegelPoint:
    return SiegelPoint.from_json(_load_json_arg(text), prec)


def _ciani(values) -> CianiMatrix:
    if len(values) != 6:
        raise InvalidInput("a Ciani matrix needs six entries a1 a2 a3 b1 b2 b3")
    try:
        return CianiMatrix(*(Fraction(v) for v in values))
    except ValueError as exc:
        raise InvalidInput(str(exc)) from exc


def _ciani_of(F: TernaryForm) -> CianiMatrix | None:
    """The matrix m with F = G_m(x^2, y^2, z^2), if F has that shape."""
    if F.degree != 4 or any(e % 2 for mono in F.coeffs for e in mono):
        return None
    c = F.coefficient
    return CianiMatrix(c((4, 0, 0)), c((0, 4, 0)), c((0, 0, 4)), c((0, 2, 2)) / 2, c((2, 0, 2)) / 2, c((2, 2, 0)) / 2)


def _num(x, digits: int = 40) -> str:
    if isinstance(x, (int, Fraction)):
        return str(x)
    return mpmath.nstr(x, digits)


def _cnum(z, digits: int = 40) -> list[str]:
    return [mpmath.nstr(mpmath.re(z), digits), mpmath.nstr(mpmath.im(z), digits)]


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _digits(args) -> int:
    return max(15, int(args.prec * 0.30103) - 5)


# -- subcommands -------------------------------------------------------------


def cmd_disc(args) -> int:
    F = _form(args.form)
    d = discriminant(F)
    payload = {"form": F.to_expr(), "discriminant": str(d.value), "degree": str(d.degree), "weight": str(d.weight)}
    lines = [f"Disc = {d.value}"]
    m = _ciani_of(F)
    if m is not None:
        closed = ciani_discriminant(m)
        payload["ciani_closed_form"] = str(closed)
        payload["agree"] = closed == d.value
        lines.append(f"Ciani closed form = {closed} ({'agrees' if closed == d.value else 'DISAGREES'})")
        if closed != d.value:
            _emit(args, payload, "\n".join(lines))
            return InconsistencyError.exit_code
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_resultant(args) -> int:
    forms = [_form(t) for t in args.forms]
    r = macaulay_resultant(*forms)
    _emit(args, {"resultant": str(r)}, f"Res = {r}")
    return EXIT_OK


def cmd_ciani(args) -> int:
    m = _ciani(args.entries)
    F = ciani_form(m)
    closed = ciani_discriminant(m)
    payload = {"form": F.to_expr(), "closed_form": str(closed)}
    lines = [f"F = {F.to_expr()}", f"closed form Disc = {closed}"]
    if not args.skip_macaulay:
        mac = discriminant(F).value
        payload["macaulay"] = str(mac)
        payload["agree"] = mac == closed
        lines.append(f"Macaulay Disc = {mac} ({'agrees' if mac == closed else 'DISAGREES'})")
        if mac != closed:
            _emit(args, payload, "\n".join(lines))
            return InconsistencyError.exit_code
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_theta(args) -> int:
    tau = _tau(args.tau, args.prec)
    chars = [ThetaCharacteristic.parse(c) for c in args.char] if args.char else list(enumerate_characteristics(tau.g))
    vals = theta_constants(tau, args.prec, chars)
    digits = _digits(args)
    payload = {str(c): {"value": _cnum(vals[c].value, digits), "error_bound": _num(vals[c].error_bound, 5)} for c in chars}
    text = "\n".join(f"theta{c} = {mpmath.nstr(vals[c].value, digits)}  (+- {mpmath.nstr(vals[c].error_bound, 3)})" for c in chars)
    _emit(args, payload, text)
    return EXIT_OK


def _form_value_report(args, fv) -> int:
    test = fv.zero_test(args.tol or 0)
    digits = _digits(args)
    payload = {
        "value": _cnum(fv.value, digits),
        "error_bound": _num(fv.error_bound, 5),
        "threshold": _num(test.threshold, 5),
        "ratio": _num(test.ratio, 5),
        "zero_test": test.verdict.value,
        "weight": str(fv.weight),
    }
    text = (
        f"value = {mpmath.nstr(fv.value, digits)}\n"
        f"error bound = {mpmath.nstr(fv.error_bound, 3)}, threshold = {mpmath.nstr(test.threshold, 3)}\n"
        f"zero test: {test.verdict.value} (|value| / threshold = {mpmath.nstr(test.ratio, 3)})"
    )
    _emit(args, payload, text)
    return EXIT_INDETERMINATE if test.verdict is ZeroVerdict.INDETERMINATE else EXIT_OK


def cmd_chi_product(args) -> int:
    tau = _tau(args.tau, args.prec)
    return _form_value_report(args, chi_product(tau.g, tau, args.prec))


def cmd_sigma140(args) -> int:
    tau = _tau(args.tau, args.prec)
    return _form_value_report(args, sigma140(tau, args.prec))


def _curve(args):
    from .periods import hyperelliptic_curve, plane_quartic_curve

    if args.hyperelliptic:
        coeffs = [Fraction(c) for c in args.hyperelliptic.split(",")]
        return hyperelliptic_curve(coeffs)
    text = args.quartic or args.form
    if not text:
        raise InvalidInput("give a plane curve form, --quartic <file> or --hyperelliptic coefficients")
    if args.quartic and not text.strip().startswith("{") and Path(text).exists() and Path(text).suffix != ".json":
        text = Path(text).read_text()
    return plane_quartic_curve(_form(text))


def _period_prec(args):
    return args.prec if args.high_precision else None


def cmd_periods(args) -> int:
    from .periods import compute_periods

    C = _curve(args)
    Om, M, H = compute_periods(C, _period_prec(args), variant=args.variant)
    payload = Om.to_json()
    payload["monodromy"] = {"branch_points": str(len(M.permutations)), "total_deficiency": str(M.total_deficiency())}
    payload["prec"] = None if Om.prec is None else str(Om.prec)
    payload["g"] = str(Om.g)
    if args.json:
        print(json.dumps(payload, indent=2))
    else:
        T = Om.tau_matrix()
        print(f"genus {Om.g}, {len(M.permutations)} branch points, symmetry residual {Om.symmetry_residual():.3e}")
        print("tau =")
        print(mpmath.nstr(T, 15))
    return EXIT_OK


def _add_curve_args(p):
    p.add_argument("form", nargs="?", help="plane curve: expression in x, y, z or TernaryForm JSON")
    p.add_argument("--quartic", metavar="FILE|EXPR", help="plane quartic: file holding an expression or TernaryForm JSON, or the expression itself")
    p.add_argument("--hyperelliptic", metavar="C0,C1,...", help="y^2 = f(x), coefficients of f in ascending order")
    p.add_argument("--high-precision", action="store_true", help="integrate periods at --prec bits (default: double)")
    p.add_argument("--variant", type=int, default=0, help="alternative base point for the loops")


def cmd_klein_check(args) -> int:
    from .gate import klein_check

    F = _form(args.form)
    res = klein_check(F, None, args.prec, _period_prec(args))
    tol = args.tol or 1e-6
    ok = res.modulus_error <= tol
    payload = {"kr": _cnum(res.ratio, 30), "disc": str(res.disc), "modulus_error": _num(res.modulus_error, 5), "ok": ok}
    _emit(args, payload, f"KR = {mpmath.nstr(res.ratio, 20)}\n|KR| - 1 = {res.modulus_error:.3e} ({'ok' if ok else 'FAILED'})")
    return EXIT_OK if ok else InconsistencyError.exit_code


def cmd_calibrate(args) -> int:
    from .gate import calibrate
    from .gate.calibration import DEFAULT_CURVES

    curves = [_ciani(c.split(",")) for c in args.ciani] if args.ciani else DEFAULT_CURVES
    cal = calibrate(curves, args.prec, _period_prec(args), args.output, persist=args.write)
    payload = cal.to_json()
    _emit(args, payload, f"c0 = {cal.sign} (measured {mpmath.nstr(cal.c0, 15)}) from {len(curves)} curves" + (" [written]" if args.write else ""))
    return EXIT_OK


def cmd_classify(args) -> int:
    from .gate import Verdict, classify, scale_periods
    from .periods import PeriodMatrix, compute_periods

    if args.periods:
        data = PeriodMatrix.from_json(_load_json_arg(args.periods))
    elif args.tau:
        data = _tau(args.tau, args.prec)
    else:
        data = compute_periods(_curve(args), _period_prec(args))[0]
    if args.scale:
        if not isinstance(data, PeriodMatrix):
            raise InvalidInput("--scale applies to period matrices")
        data = scale_periods(data, args.scale)
    res = classify(data, args.prec, args.c0, args.tol)
    lines = [f"verdict: {res.verdict.value}"]
    if res.square_class is not None:
        lines.append(f"square class: {res.square_class}")
    if res.recognized is not None:
        lines.append(f"recognized value: {res.recognized}")
    if "reason" in res.diagnostics:
        lines.append(f"reason: {res.diagnostics['reason']}")
    _emit(args, res.to_json(), "\n".join(lines))
    return EXIT_INDETERMINATE if res.verdict is Verdict.INDETERMINATE else EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    def global_flags(suppress: bool) -> argparse.ArgumentParser:
        # subcommands repeat the flags with SUPPRESS so they do not clobber values given before the subcommand
        kw = {"default": argparse.SUPPRESS} if suppress else {}
        g = argparse.ArgumentParser(add_help=False)
        g.add_argument("--prec", type=int, help="working precision in bits (default 212)", **(kw or {"default": DEFAULT_PREC}))
        g.add_argument("--tol", type=float, help="input tolerance for zero tests / Klein check", **(kw or {"default": None}))
        g.add_argument("--json", action="store_true", help="machine-readable output", **kw)
        return g

    common = global_flags(True)
    ap = argparse.ArgumentParser(prog="jacrec", description="Exact invariants, theta constants, periods and the Jacobian test for genus 3.", parents=[global_flags(False)])
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("disc", parents=[common], help="exact discriminant of a ternary form")
    p.add_argument("form")
    p.set_defaults(func=cmd_disc)

    p = sub.add_parser("resultant", parents=[common], help="Macaulay resultant of three ternary forms")
    p.add_argument("forms", nargs=3)
    p.set_defaults(func=cmd_resultant)

    p = sub.add_parser("ciani", parents=[common], help="Ciani quartic and its discriminant")
    p.add_argument("entries", nargs=6, metavar="a1 a2 a3 b1 b2 b3")
    p.add_argument("--skip-macaulay", action="store_true")
    p.set_defaults(func=cmd_ciani)

    p = sub.add_parser("theta", parents=[common], help="theta constants at tau")
    p.add_argument("tau", help="tau as JSON ([[re, im], ...] rows) or a .json file")
    p.add_argument("--char", action="append", help="characteristic such as [011|101] (repeatable)")
    p.set_defaults(func=cmd_theta)

    for name, func, desc in (("chi-product", cmd_chi_product, "product of even theta constants"), ("sigma140", cmd_sigma140, "weight-140 form (g = 3)")):
        p = sub.add_parser(name, parents=[common], help=desc)
        p.add_argument("tau")
        p.set_defaults(func=func)

    p = sub.add_parser("periods", parents=[common], help="period matrix of a plane or hyperelliptic curve")
    _add_curve_args(p)
    p.set_defaults(func=cmd_periods)

    p = sub.add_parser("klein-check", parents=[common], help="Klein ratio of a smooth plane quartic")
    p.add_argument("form")
    p.add_argument("--high-precision", action="store_true")
    p.set_defaults(func=cmd_klein_check)

    p = sub.add_parser("calibrate", parents=[common], help="determine c0 from Ciani quartics")
    p.add_argument("--ciani", action="append", metavar="a1,a2,a3,b1,b2,b3")
    p.add_argument("--high-precision", action="store_true")
    p.add_argument("--write", action="store_true", help="persist the constant")
    p.add_argument("--output", help="where to write (default: package data)")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("classify", parents=[common], help="classify a period matrix, tau, or curve")
    _add_curve_args(p)
    p.add_argument("--periods", help="PeriodMatrix JSON")
    p.add_argument("--tau", help="SiegelPoint JSON (geometric verdicts only)")
    p.add_argument("--scale", help="multiply the periods by an exact scalar, e.g. 3/7 or sqrt(2)")
    p.add_argument("--c0", type=int, choices=(-1, 1), help="override the calibrated constant")
    p.set_defaults(func=cmd_classify)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except JacrecError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
