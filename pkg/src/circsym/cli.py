"""Command-line interface.

Subcommands: ``test`` (symmetry about a known direction), ``uniformity``
(Rayleigh against a fixed direction), ``mc`` (replication tables),
``power`` (local power curves), ``fisher`` (information matrix report),
``sample`` (synthetic draws). Exit codes: 0 success, 1 usage error, 2 data
error, 3 numerical failure. The only environment variable honored is
CIRCSYM_THREADS (default worker count for ``mc`` and ``power``).
"""

import argparse
import json
import math
import os
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .distributions import MoebiusSkewed, SineSkewed, SkewedMixture, parse_base
from .errors import (
    DegenerateInformationError,
    DegenerateSampleError,
    EmptySampleError,
    QuadratureConvergenceError,
)
from .asymptotics import fisher_matrix, singularity_report
from .io import AngleFileError, read_angles, write_angles
from .montecarlo import (
    DEFAULT_MASTER_SEED,
    PRESETS,
    derive_stream,
    load_scenario_file,
    power_curve,
    preset_scenarios,
    run_scenario,
)
from .symtests import (
    ALTERNATIVES,
    rayleigh_cardioid_test,
    symmetry_test,
)

SCHEMA = "circsym/v1"

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERICAL = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _parse_angle(text, unit="radians"):
    """Angle literal with optional deg/rad suffix, else the given unit."""
    raw = str(text).strip().lower()
    try:
        if raw.endswith("deg"):
            return math.radians(float(raw[:-3]))
        if raw.endswith("rad"):
            return float(raw[:-3])
        value = float(raw)
    except ValueError:
        raise UsageError(
            f"bad angle {text!r}; write a number with an optional deg/rad suffix"
        ) from None
    return math.radians(value) if unit == "degrees" else value


def _parse_int_list(text):
    try:
        return [int(part) for part in str(text).split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"bad integer list {text!r}") from None


def _parse_grid(text):
    """Comma list, or start:stop:count for a uniform grid."""
    raw = str(text).strip()
    if ":" in raw:
        pieces = raw.split(":")
        if len(pieces) != 3:
            raise UsageError(f"grid {text!r} must be start:stop:count or a comma list")
        try:
            start, stop, count = float(pieces[0]), float(pieces[1]), int(pieces[2])
        except ValueError:
            raise UsageError(f"bad grid {text!r}") from None
        if count < 2:
            raise UsageError("grid count must be at least 2")
        step = (stop - start) / (count - 1)
        return [start + i * step for i in range(count)]
    try:
        return [float(part) for part in raw.split(",") if part.strip()]
    except ValueError:
        raise UsageError(f"bad grid {text!r}") from None


def _parse_model(text):
    """Sampling model from a compact descriptor.

    A bare base label (``vm:1``) denotes the symmetric density itself.
    Skewed forms: ``sineskew(vm:1,k=2,lam=0.3,theta=0)``,
    ``moebius(vm:1,r=0.5,lam=0.1)``, ``mixshift(kappa=10,lam=0.4)``.
    Angles inside a model descriptor are radians.
    """
    raw = str(text).strip()
    try:
        if "(" not in raw:
            return parse_base(raw)
        head, _, inner = raw.partition("(")
        head = head.strip()
        if not inner.endswith(")"):
            raise ValueError("missing closing parenthesis")
        positional = []
        keywords = {}
        for part in inner[:-1].split(","):
            part = part.strip()
            if not part:
                continue
            if "=" in part:
                key, _, value = part.partition("=")
                keywords[key.strip()] = float(value)
            else:
                positional.append(part)
        if head == "sineskew":
            (base_label,) = positional
            return SineSkewed(
                parse_base(base_label),
                keywords.pop("lam"),
                k=int(keywords.pop("k", 1)),
                theta=keywords.pop("theta", 0.0),
            )
        if head == "moebius":
            (base_label,) = positional
            return MoebiusSkewed(
                parse_base(base_label), keywords.pop("lam"), keywords.pop("r")
            )
        if head == "mixshift":
            if positional:
                raise ValueError("mixshift takes kappa= and lam= only")
            return SkewedMixture(keywords.pop("kappa"), keywords.pop("lam"))
        raise ValueError(f"unknown model family {head!r}")
    except UsageError:
        raise
    except (ValueError, KeyError) as exc:
        raise UsageError(f"bad model {text!r}: {exc}") from None


def _read_sample(args):
    return read_angles(
        args.file,
        unit=args.unit,
        fmt=args.format,
        column=args.column,
        zero=args.zero,
        sense=args.sense,
    )


def _add_file_options(sub):
    sub.add_argument("file", help="angle file (plain, csv or grouped)")
    sub.add_argument("--unit", choices=("radians", "degrees"), default="radians",
                     help="unit of file angles unless the file header says otherwise")
    sub.add_argument("--format", choices=("plain", "csv", "grouped"), default=None,
                     help="file layout when the header does not declare one")
    sub.add_argument("--column", type=int, default=0, help="csv column index")
    sub.add_argument("--zero", default=None,
                     help="direction of the file's zero (e.g. 90deg)")
    sub.add_argument("--sense", choices=("ccw", "cw"), default=None,
                     help="rotation sense of the file angles")


def _emit(args, payload, human_lines):
    if getattr(args, "json", False):
        payload = dict(payload)
        payload["schema"] = SCHEMA
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in human_lines:
            print(line)


def cmd_test(args):
    if args.theta is None:
        raise UsageError(
            "--theta is required: these tests address symmetry about a known "
            "median direction and cannot estimate the center from the data"
        )
    theta = _parse_angle(args.theta, args.unit)
    sample = _read_sample(args)
    results = [
        symmetry_test(sample, theta, k, alternative=args.alt, alpha=args.alpha)
        for k in _parse_int_list(args.k)
    ]
    lines = [f"n={results[0].n}  theta={theta:.10g} rad  alternative={args.alt}",
             "k  statistic     p-value   reject"]
    for r in results:
        lines.append(f"{r.k}  {r.statistic:+12.6f}  {r.p_value:.4f}  "
                     f"{'yes' if r.reject else 'no'}")
    _emit(args, {"results": [r.to_dict() for r in results]}, lines)
    return EXIT_OK


def cmd_uniformity(args):
    if args.direction is None:
        raise UsageError("--direction is required: the test targets a fixed direction")
    direction = _parse_angle(args.direction, args.unit)
    sample = _read_sample(args)
    result = rayleigh_cardioid_test(sample, direction, alpha=args.alpha)
    lines = [f"n={result.n}  direction={direction:.10g} rad",
             f"statistic {result.statistic:+.6f}  p-value {result.p_value:.4f}  "
             f"reject {'yes' if result.reject else 'no'}"]
    _emit(args, {"results": [result.to_dict()]}, lines)
    return EXIT_OK


def cmd_mc(args):
    if (args.preset is None) == (args.scenario is None):
        raise UsageError("pick exactly one of --preset or --scenario")
    if args.preset is not None:
        if args.preset not in PRESETS:
            raise UsageError(
                f"unknown preset {args.preset!r}; choose from {sorted(PRESETS)}"
            )
        specs = preset_scenarios(args.preset, reps=args.reps, master_seed=args.seed)
    else:
        spec = load_scenario_file(args.scenario)
        if args.reps is not None or args.seed is not None:
            updates = {}
            if args.reps is not None:
                updates["reps"] = args.reps
            if args.seed is not None:
                updates["master_seed"] = args.seed
            spec = replace(spec, **updates)
        specs = (spec,)
    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    for spec in specs:
        table = run_scenario(spec, threads=args.threads)
        written = []
        if args.out in ("csv", "both"):
            path = outdir / f"{spec.scenario_id}.csv"
            path.write_text(table.to_csv(), encoding="utf-8")
            written.append(path)
        if args.out in ("json", "both"):
            path = outdir / f"{spec.scenario_id}.json"
            path.write_text(table.to_json(), encoding="utf-8")
            written.append(path)
        for path in written:
            print(f"wrote {path}")
    return EXIT_OK


def cmd_power(args):
    try:
        base = parse_base(args.base)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    kprimes = _parse_int_list(args.kprime)
    grid = _parse_grid(args.grid)
    columns = {}
    for kp in kprimes:
        columns[f"analytic_kprime{kp}"] = [
            p for _, p in power_curve(base, args.k, kp, grid, alpha=args.alpha)
        ]
    if args.empirical is not None:
        n, reps = args.empirical
        for kp in kprimes:
            columns[f"empirical_kprime{kp}"] = [
                p for _, p in power_curve(
                    base, args.k, kp, grid, alpha=args.alpha, mode="empirical",
                    n=n, reps=reps, master_seed=args.seed, threads=args.threads,
                )
            ]
    names = list(columns)
    lines = [f"# schema: {SCHEMA}",
             f"# base: {base.label}  k: {args.k}  alpha: {args.alpha:g}",
             "tau2," + ",".join(names)]
    for i, tau2 in enumerate(grid):
        lines.append(f"{tau2:g}," + ",".join(f"{columns[c][i]:.6f}" for c in names))
    text = "\n".join(lines) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"wrote {args.out}")
    else:
        print(text, end="")
    return EXIT_OK


def cmd_fisher(args):
    try:
        base = parse_base(args.base)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    matrix = fisher_matrix(base, args.k)
    try:
        report = singularity_report(base, args.k)
        gap, singular = report.normalized_gap, report.singular
    except DegenerateInformationError:
        gap, singular = None, None
    payload = {
        "base": base.label, "k": args.k,
        "g11": matrix.g11, "g12": matrix.g12, "g22": matrix.g22,
        "determinant": matrix.determinant,
        "normalized_gap": gap, "singular": singular,
    }
    lines = [f"base {base.label}  k={args.k}",
             f"g11 {matrix.g11:.12g}",
             f"g12 {matrix.g12:.12g}",
             f"g22 {matrix.g22:.12g}",
             f"determinant {matrix.determinant:.12g}"]
    if gap is None:
        lines.append("normalized_gap undefined (no location information)")
    else:
        lines.append(f"normalized_gap {gap:.12g}")
        lines.append(f"singular {'true' if singular else 'false'}")
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_sample(args):
    model = _parse_model(args.model)
    if args.n < 1:
        raise UsageError("-n must be positive")
    rng = derive_stream(args.seed, f"cli-sample|{model.label}", 0)
    draws = model.sample(rng, args.n)
    if args.out:
        write_angles(args.out, draws, unit=args.unit)
        print(f"wrote {args.out}")
    else:
        scale = 180.0 / math.pi if args.unit == "degrees" else 1.0
        print(f"# unit: {args.unit}")
        print("# format: plain")
        for value in draws:
            print(f"{value * scale:.17g}")
    return EXIT_OK


def build_parser():
    parser = _Parser(prog="circsym",
                     description="Tests of circular reflective symmetry about "
                                 "a known median direction, with replication "
                                 "and power tooling.")
    parser.add_argument("--version", action="version", version=f"circsym {__version__}")
    default_threads = int(os.environ.get("CIRCSYM_THREADS", "1"))
    commands = parser.add_subparsers(dest="command", required=True)

    sub = commands.add_parser("test", help="sine-based symmetry tests at chosen k")
    _add_file_options(sub)
    sub.add_argument("--theta", default=None,
                     help="known median direction, e.g. 180deg or 3.14rad")
    sub.add_argument("--k", default="1,2,3", help="comma list of frequencies")
    sub.add_argument("--alt", choices=ALTERNATIVES, default="two-sided")
    sub.add_argument("--alpha", type=float, default=0.05)
    sub.add_argument("--json", action="store_true", help="machine-readable output")
    sub.set_defaults(func=cmd_test)

    sub = commands.add_parser("uniformity",
                              help="Rayleigh test against a fixed direction")
    _add_file_options(sub)
    sub.add_argument("--direction", default=None,
                     help="hypothesized concentration direction")
    sub.add_argument("--alpha", type=float, default=0.05)
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(func=cmd_uniformity)

    sub = commands.add_parser("mc", help="replication tables for preset or file scenarios")
    sub.add_argument("--preset", default=None, help="table1, table2 or table3")
    sub.add_argument("--scenario", default=None, help="scenario file path")
    sub.add_argument("--reps", type=int, default=None)
    sub.add_argument("--seed", type=int, default=None)
    sub.add_argument("--threads", type=int, default=default_threads)
    sub.add_argument("--out", choices=("csv", "json", "both"), default="csv")
    sub.add_argument("--outdir", default=".")
    sub.set_defaults(func=cmd_mc)

    sub = commands.add_parser("power", help="local power curves of the k test")
    sub.add_argument("--base", default="vm:1")
    sub.add_argument("--k", type=int, default=2)
    sub.add_argument("--kprime", default="1,2,3")
    sub.add_argument("--alpha", type=float, default=0.05)
    sub.add_argument("--grid", default="0:5:21",
                     help="tau2 grid, comma list or start:stop:count")
    sub.add_argument("--empirical", nargs=2, type=int, metavar=("N", "REPS"),
                     default=None, help="add simulated columns at sample size N")
    sub.add_argument("--seed", type=int, default=DEFAULT_MASTER_SEED)
    sub.add_argument("--threads", type=int, default=default_threads)
    sub.add_argument("--out", default=None, help="write CSV here instead of stdout")
    sub.set_defaults(func=cmd_power)

    sub = commands.add_parser("fisher", help="information matrix and singularity report")
    sub.add_argument("--base", required=True)
    sub.add_argument("--k", type=int, required=True)
    sub.add_argument("--json", action="store_true")
    sub.set_defaults(func=cmd_fisher)

    sub = commands.add_parser("sample", help="draw synthetic angles from a model")
    sub.add_argument("--model", required=True,
                     help="e.g. vm:1 or sineskew(vm:1,k=2,lam=0.3)")
    sub.add_argument("-n", type=int, required=True)
    sub.add_argument("--seed", type=int, default=DEFAULT_MASTER_SEED)
    sub.add_argument("--unit", choices=("radians", "degrees"), default="radians")
    sub.add_argument("--out", default=None)
    sub.set_defaults(func=cmd_sample)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"circsym: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (AngleFileError, EmptySampleError, DegenerateSampleError,
            FileNotFoundError) as exc:
        print(f"circsym: data error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (QuadratureConvergenceError, DegenerateInformationError,
            FloatingPointError, OverflowError) as exc:
        print(f"circsym: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL


if __name__ == "__main__":
    sys.exit(main())
