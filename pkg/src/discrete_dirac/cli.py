"""Command-line entry point: ``discrete-dirac {selfcheck,planewave,basis}``."""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

import numpy as np

from . import selfcheck as sc
from .equations import DEFAULT_TOLERANCE, decompose_p0, decompose_p12, dk_residual, hestenes_residual, joyce_residual
from .forms import DomainError, Window
from .plane_wave import (
    AMPLITUDE_ORDER,
    SEEDS,
    Amplitude,
    Momentum,
    build_plane_wave,
    complete_amplitude,
    condition_matrix_38,
    condition_matrix_39,
    expand_condition_38,
    expand_condition_39,
    hestenes_conditions_check,
    kernel_dimension,
    momentum_constraint_residual,
    numerical_rank,
    psi_dynamic_range,
    solution_basis,
)

DYNAMIC_RANGE_LIMIT = 1e6


def parse_complex(text: str) -> complex:
    """Parse ``a+bi`` style input (``i`` or ``j`` as imaginary unit)."""
    s = text.strip().replace(" ", "").replace("i", "j")
    try:
        return complex(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a complex number: {text!r}") from None


def parse_momenta(text: str) -> tuple[float, float, float]:
    try:
        vals = tuple(float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected p1,p2,p3, got {text!r}") from None
    if len(vals) != 3:
        raise argparse.ArgumentTypeError(f"expected three comma-separated momenta, got {text!r}")
    return vals


def parse_sign(text: str) -> int:
    if text in ("+", "+1", "1"):
        return 1
    if text in ("-", "-1"):
        return -1
    raise argparse.ArgumentTypeError(f"sign must be + or -, got {text!r}")


def positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def window_extent(text: str) -> int:
    n = int(text)
    if n < 2:
        raise argparse.ArgumentTypeError("window extent must be >= 2")
    return n


# output


def _fmt(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.17g}"
    if isinstance(v, list):
        return "[" + ", ".join(_fmt(x) for x in v) + "]"
    return str(v)


def _flatten(data, prefix=""):
    if isinstance(data, dict):
        for k, v in data.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(data, list) and data and isinstance(data[0], dict):
        for i, v in enumerate(data):
            yield from _flatten(v, f"{prefix}[{i}]")
    else:
        yield prefix, data


def render(report: dict, fmt: str, csv_rows=None) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    if fmt == "text":
        return "".join(f"{k}: {_fmt(v)}\n" for k, v in _flatten(report))
    header, rows = csv_rows
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows([[_fmt(c) for c in row] for row in rows])
    return buf.getvalue()


def _residual_rows(checks: dict):
    header = ["label", "equation", "relative", "tolerance", "pass"] + [f"grade{r}" for r in range(5)]
    rows = []
    for label, rep in checks.items():
        rows.append([label, rep["equation"], rep["relative"], rep["tolerance"], rep["pass"]]
                    + [rep["per_grade"][str(r)] for r in range(5)])
    return header, rows


# commands


def cmd_selfcheck(args) -> int:
    only = None
    if args.only:
        only = [s.strip() for s in args.only.split(",") if s.strip()]
        unknown = [s for s in only if s not in sc.SUITES]
        if unknown:
            raise DomainError(f"unknown suites {unknown}; available: {', '.join(sc.SUITES)}")
    table = sc.faulty_table() if args.inject_fault else sc.TABLE
    results = sc.run_suites(only, table=table, window=args.window, samples=args.samples, seed=args.seed)
    passed = all(r.passed for r in results)
    report = {"command": "selfcheck", "results": [r.to_json() for r in results], "pass": passed}
    if args.format == "text":
        out = "".join(f"{'PASS' if r.passed else 'FAIL'} {r.name}: {r.detail}\n" for r in results)
        out += f"{'all identities pass' if passed else 'identity failures: ' + ', '.join(r.name for r in results if not r.passed)}\n"
    else:
        out = render(report, args.format, (["name", "pass", "detail"],
                                           [[r.name, r.passed, r.detail] for r in results]))
    sys.stdout.write(out)
    return 0 if passed else 1


def _amplitude_from_args(args) -> tuple[Amplitude, bool]:
    """Returns the amplitude and whether it still needs completing."""
    overrides = {f: getattr(args, f) for f in AMPLITUDE_ORDER if getattr(args, f) is not None}
    if args.amplitude:
        if args.seed or overrides:
            raise DomainError("--amplitude cannot be combined with --seed or --alpha overrides")
        return Amplitude.from_json(json.loads(Path(args.amplitude).read_text())), False
    base = Amplitude.seed(args.seed or "x")
    values = {f: getattr(base, f) for f in AMPLITUDE_ORDER}
    values.update(overrides)
    return Amplitude(**values), True


def _warnings(mom: Momentum, window: Window) -> list[str]:
    rng = psi_dynamic_range(mom, window)
    if rng > DYNAMIC_RANGE_LIMIT:
        msg = (f"psi dynamic range {rng:.3g} exceeds {DYNAMIC_RANGE_LIMIT:.0e}; "
               "relative residuals near the tolerance may not be meaningful")
        print(f"warning: {msg}", file=sys.stderr)
        return [msg]
    return []


def cmd_planewave(args) -> int:
    m = args.m
    p = args.p
    if args.p0 is not None:
        mom = Momentum(m, p, args.p0)
    else:
        mom = Momentum.on_shell(m, p, args.sign)
    window = Window.cube(args.window)
    amp, needs_completion = _amplitude_from_args(args)
    completion = "none"
    if needs_completion:
        amp, completion = complete_amplitude(amp, mom)
    warnings = _warnings(mom, window)
    omega = build_plane_wave(amp, mom, window)
    tol = args.tolerance

    checks = {"joyce": joyce_residual(omega, m, tol)}
    standard = hestenes_conditions_check(amp, "standard")
    reversed_ = hestenes_conditions_check(amp, "reversed")
    mass_sign = -1 if reversed_ and not standard else 1
    if args.hestenes:
        checks["hestenes"] = hestenes_residual(omega, m, mass_sign, tol)
    if args.projections:
        plus, minus = decompose_p0(omega)
        checks["dirac_kahler_P+0"] = dk_residual(plus, m, tol)
        checks["dirac_kahler_P-0"] = dk_residual(minus, -m, tol)
        plus, minus = decompose_p12(omega)
        checks["hestenes_P+12"] = hestenes_residual(plus, m, 1, tol)
        checks["hestenes_P-12"] = hestenes_residual(minus, m, -1, tol)

    if args.dump:
        path = Path(args.dump)
        if path.suffix == ".csv":
            path.write_text(omega.to_csv())
        else:
            path.write_text(json.dumps(omega.to_json()))

    passed = all(r.passed for r in checks.values())
    report = {
        "command": "planewave",
        "momentum": mom.to_json(),
        "amplitude": amp.to_json(),
        "completion": completion,
        "window": list(window.shape),
        "dynamic_range": psi_dynamic_range(mom, window),
        "constraint_residual": momentum_constraint_residual(amp, mom),
        "hestenes_conditions": {"standard": standard, "reversed": reversed_, "mass_sign": mass_sign},
        "warnings": warnings,
        "checks": {k: r.to_json() for k, r in checks.items()},
        "pass": passed,
    }
    sys.stdout.write(render(report, args.format, _residual_rows(report["checks"])))
    return 0 if passed else 1


def cmd_basis(args) -> int:
    m = args.m
    p1, p2, p3 = args.p
    window = Window.cube(args.window)
    tol = args.tolerance
    basis = solution_basis(m, p1, p2, p3)

    warnings = []
    solutions = []
    for i, sol in enumerate(basis):
        if sol.seed in ("x", "e01"):
            warnings += _warnings(sol.momentum, window)
        rep = joyce_residual(build_plane_wave(sol.amplitude, sol.momentum, window), m, tol)
        solutions.append({
            "index": i,
            "branch": sol.branch,
            "seed": sol.seed,
            "completion": sol.completion,
            "momentum": sol.momentum.to_json(),
            "amplitude": sol.amplitude.to_json(),
            "joyce": rep.to_json(),
        })

    rank, kernel, joint = {}, {}, {}
    for branch in ("+", "-"):
        members = [s for s in basis if s.branch == branch]
        mom = members[0].momentum
        rank[branch] = numerical_rank(np.array([s.amplitude.vector() for s in members]))
        used = condition_matrix_38(mom) if members[0].completion == "A_minus" else condition_matrix_39(mom)
        kernel[branch] = kernel_dimension(used)
        joint[branch] = kernel_dimension(np.vstack([condition_matrix_38(mom), condition_matrix_39(mom)]))

    _, audit38 = expand_condition_38()
    _, audit39 = expand_condition_39()
    passed = (all(s["joyce"]["pass"] for s in solutions)
              and all(rank[b] == 4 and kernel[b] == 4 and joint[b] == 4 for b in rank))
    report = {
        "command": "basis",
        "m": m,
        "p": [p1, p2, p3],
        "window": list(window.shape),
        "warnings": warnings,
        "solutions": solutions,
        "rank": rank,
        "kernel_dimension": kernel,
        "joint_kernel_dimension": joint,
        "audit": {"condition_38": audit38.to_json(), "condition_39": audit39.to_json()},
        "pass": passed,
    }
    header = ["index", "branch", "seed", "completion", "p0"] + \
        [f"{f}_{part}" for f in AMPLITUDE_ORDER for part in ("re", "im")] + ["relative", "pass"]
    rows = []
    for s in solutions:
        amp = s["amplitude"]
        rows.append([s["index"], s["branch"], s["seed"], s["completion"], s["momentum"]["p0"]]
                    + [v for f in AMPLITUDE_ORDER for v in amp[f]]
                    + [s["joyce"]["relative"], s["joyce"]["pass"]])
    sys.stdout.write(render(report, args.format, (header, rows)))
    return 0 if passed else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="discrete-dirac",
                                     description="Verify discrete Dirac-type equations and their plane waves.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, window_default):
        p.add_argument("--format", choices=("json", "csv", "text"), default="text")
        p.add_argument("--window", type=window_extent, default=window_default, help="uniform window extent N")

    s = sub.add_parser("selfcheck", help="run the exact algebraic identity suites")
    common(s, 4)
    s.add_argument("--only", help=f"comma-separated subset of: {', '.join(sc.SUITES)}")
    s.add_argument("--samples", type=int, default=100, help="random forms per windowed suite")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_selfcheck)

    pw = sub.add_parser("planewave", help="build a plane wave and report its residuals")
    common(pw, 6)
    pw.add_argument("--m", type=float, required=True, help="mass")
    pw.add_argument("--p", type=parse_momenta, default=(0.0, 0.0, 0.0), help="p1,p2,p3")
    energy = pw.add_mutually_exclusive_group()
    energy.add_argument("--sign", type=parse_sign, default=1, help="sign of p0 on the mass shell (+ or -)")
    energy.add_argument("--p0", type=float, help="explicit p0 (may be off-shell)")
    pw.add_argument("--seed", choices=sorted(SEEDS), help="unit seed blade (default x)")
    pw.add_argument("--amplitude", help="amplitude JSON file, used as given")
    for f in AMPLITUDE_ORDER:
        pw.add_argument(f"--{f}", type=parse_complex, metavar="A+Bi", help=f"set {f} on top of the seed")
    pw.add_argument("--tolerance", type=positive_float, default=DEFAULT_TOLERANCE)
    pw.add_argument("--hestenes", action="store_true", help="also check the Hestenes equation")
    pw.add_argument("--projections", action="store_true", help="check the P0 and P12 projected parts")
    pw.add_argument("--dump", help="write the plane wave to a .json or .csv file")
    pw.set_defaults(func=cmd_planewave)

    b = sub.add_parser("basis", help="the eight plane-wave solutions for one spatial momentum")
    common(b, 6)
    b.add_argument("--m", type=float, required=True)
    b.add_argument("--p", type=parse_momenta, default=(0.0, 0.0, 0.0))
    b.add_argument("--tolerance", type=positive_float, default=DEFAULT_TOLERANCE)
    b.set_defaults(func=cmd_basis)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
