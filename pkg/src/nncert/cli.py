"""Command-line front end.

Subcommands: generate, classify, sweep, visibility, chsh, validate.
Reports are JSON (CSV for sweeps with --format csv) and carry a timestamp
unless --no-timestamp is given; with fixed flags and --seed every rerun is
byte identical apart from that field.

Exit codes: 0 success (any verdict), 1 usage or I/O error, 2 invalid
correlation input, 3 internal numeric failure (LP did not converge, or no
bisection bracket).
"""

from __future__ import annotations

import argparse
import datetime
import enum
import json
import sys

import numpy as np

from . import analysis, generators, oracles
from ._lp import LpError
from .corr import Correlation, FormatError, ScenarioShape, deserialize, serialize, validate
from .generators import FritzSide


class ExitStatus(enum.IntEnum):
    OK = 0
    USAGE = 1
    INVALID_INPUT = 2
    NUMERIC_FAILURE = 3


class UsageError(Exception):
    pass


EXAMPLE_PARAMS = {
    "pr": ("V",),
    "ps": ("V", "pps"),
    "local": (),
    "es": ("v",),
    "fritz-r": ("v",),
    "fritz-l": ("v",),
    "mnn1": ("mu", "V", "pps"),
    "mnn1q": ("mu", "v"),
    "mnn2": ("theta", "v"),
}


def _build_example(name: str, params: dict) -> Correlation:
    required = EXAMPLE_PARAMS.get(name)
    if required is None:
        raise UsageError(f"unknown example {name!r}; choose from {sorted(EXAMPLE_PARAMS)}")
    missing = [p for p in required if p not in params]
    if missing:
        raise UsageError(f"example {name!r} needs --param {'/'.join(missing)}")
    extra = [p for p in params if p not in required]
    if extra:
        raise UsageError(f"example {name!r} does not take parameters {extra}")
    try:
        if name == "pr":
            box = generators.gen_pr_box(params["V"])  # (x, y, a, b) read as (x, z, a, c)
            shape = ScenarioShape(card_x=2, card_z=2, card_a=2, card_b=1, card_c=2)
            return Correlation(shape, box[:, :, :, None, :])
        if name == "ps":
            return generators.gen_post_selection_box(params["V"], params["pps"])
        if name == "local":
            return generators.gen_local_test()
        if name == "es":
            return generators.gen_entanglement_swapping(params["v"])
        if name == "fritz-r":
            return generators.gen_fritz(FritzSide.R, params["v"])
        if name == "fritz-l":
            return generators.gen_fritz(FritzSide.L, params["v"])
        if name == "mnn1":
            return generators.gen_mnn1(params["mu"], params["V"], params["pps"])
        if name == "mnn1q":
            return generators.gen_mnn1_quantum(params["mu"], params["v"])
        return generators.gen_mnn2(params["theta"], params["v"])
    except ValueError as exc:
        raise UsageError(f"illegal parameters for example {name!r}: {exc}") from exc


def _parse_params(items) -> dict:
    out = {}
    for item in items or []:
        for chunk in item.split(","):
            if not chunk:
                continue
            if "=" not in chunk:
                raise UsageError(f"parameter {chunk!r} is not of the form name=value")
            key, _, raw = chunk.partition("=")
            try:
                out[key.strip()] = float(raw)
            except ValueError as exc:
                raise UsageError(f"parameter {key!r} has non-numeric value {raw!r}") from exc
    return out


def _parse_range(spec: str):
    name, _, raw = spec.partition("=")
    parts = raw.split(":")
    if len(parts) != 3:
        raise UsageError(f"range {spec!r} is not of the form name=lo:hi:step")
    try:
        lo, hi, step = (float(p) for p in parts)
    except ValueError as exc:
        raise UsageError(f"range {spec!r} has non-numeric bounds") from exc
    if step <= 0:
        raise UsageError("range step must be positive")
    if hi < lo:
        raise UsageError("range needs lo <= hi")
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return name.strip(), [lo + i * step for i in range(n)]


def _oracle_cfg(args) -> oracles.OracleConfig:
    return oracles.OracleConfig(eps=args.eps, grid_n=args.grid, refine_rounds=args.refine,
                                restarts=args.restarts, seed=args.seed)


def _emit(args, doc: dict) -> None:
    if not args.no_timestamp:
        doc = {**doc, "timestamp": datetime.datetime.now(datetime.timezone.utc).isoformat()}
    text = json.dumps(doc, indent=2)
    if args.report:
        with open(args.report, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    else:
        print(text)


def _read_correlation(path: str) -> Correlation:
    try:
        with open(path, "rb") as fh:
            return deserialize(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from exc
    except FormatError as exc:
        raise UsageError(f"{path}: {exc}") from exc


def _cmd_generate(args) -> int:
    corr = _build_example(args.example, _parse_params(args.param))
    data = serialize(corr)
    if args.out:
        with open(args.out, "wb") as fh:
            fh.write(data + b"\n")
        target = args.out
    else:
        sys.stdout.buffer.write(data + b"\n")
        target = "<stdout>"
    n = int(np.prod(corr.shape.tensor_shape))
    print(f"generated example '{args.example}' ({n} probabilities) -> {target}",
          file=sys.stderr)
    return ExitStatus.OK


def _cmd_classify(args) -> int:
    corr = _read_correlation(args.input)
    report = validate(corr)
    if not report.is_valid and (report.max_negativity > oracles.NEGATIVITY_CLAMP
                                or report.max_normalization_error > corr.atol):
        print(f"invalid correlation: max negativity {report.max_negativity:.3g}, "
              f"max normalization error {report.max_normalization_error:.3g}",
              file=sys.stderr)
        return ExitStatus.INVALID_INPUT
    result = oracles.classify(corr, _oracle_cfg(args))
    _emit(args, result.to_json_dict())
    return ExitStatus.OK


def _cmd_sweep(args) -> int:
    name, values = _parse_range(args.param)
    fixed = _parse_params(args.fixed)
    if name in fixed:
        raise UsageError(f"swept parameter {name!r} also appears in --fixed")

    def make(value: float) -> Correlation:
        return _build_example(args.example, {**fixed, name: value})

    make(values[0])  # surface parameter errors before the sweep starts
    records = analysis.sweep_records(name, values, make, _oracle_cfg(args))
    if args.format == "csv":
        text = analysis.records_to_csv(records)
        if args.report:
            with open(args.report, "w", encoding="utf-8") as fh:
                fh.write(text)
        else:
            print(text, end="")
    else:
        doc = {"records": json.loads(analysis.records_to_json(records))}
        _emit(args, doc)
    return ExitStatus.OK


def _cmd_visibility(args) -> int:
    fixed = _parse_params(args.fixed)
    if args.example == "mnn1q":
        if "mu" not in fixed:
            raise UsageError("example 'mnn1q' needs --fixed mu=...")
        family = analysis.mnn1_quantum_family(fixed["mu"])
    elif args.example == "mnn2":
        if "theta" not in fixed:
            raise UsageError("example 'mnn2' needs --fixed theta=...")
        family = analysis.mnn2_family(fixed["theta"])
    else:
        raise UsageError("visibility supports --example mnn1q or mnn2")
    cfg = analysis.BisectionConfig(tol=args.tol)
    mid, lo, hi = analysis.critical_visibility_bracket(family, cfg, _oracle_cfg(args))
    _emit(args, {"v_crit": mid, "bracket": [lo, hi], "tol": args.tol,
                 "predicate": "classical-set membership flip",
                 "example": args.example, "fixed": fixed})
    return ExitStatus.OK


def _cmd_chsh(args) -> int:
    corr = _read_correlation(args.input)
    if args.postselect is not None and args.fritz is not None:
        raise UsageError("--postselect and --fritz are mutually exclusive")
    try:
        if args.postselect is not None:
            key, _, raw = args.postselect.partition("=")
            if key.strip() != "b":
                raise UsageError("--postselect takes b=<outcome>")
            result = analysis.postselected_chsh(corr, int(raw))
        elif args.fritz is not None:
            key, _, raw = args.fritz.partition("=")
            if key.strip() != "z":
                raise UsageError("--fritz takes z=<input>")
            result = analysis.fritz_chsh(corr, int(raw))
        else:
            box = corr.values.sum(axis=3)  # (x, z, a, c): CHSH between the end parties
            result = analysis.chsh(box)
    except ValueError as exc:
        print(f"cannot evaluate: {exc}", file=sys.stderr)
        return ExitStatus.INVALID_INPUT
    _emit(args, {"value": result.value, "conditioning": result.conditioning,
                 "classical_bound": 2.0, "algebraic_bound": 4.0})
    return ExitStatus.OK


def _cmd_validate(args) -> int:
    corr = _read_correlation(args.input)
    report = validate(corr)
    _emit(args, {"is_valid": report.is_valid,
                 "max_negativity": report.max_negativity,
                 "max_normalization_error": report.max_normalization_error,
                 "offending_indices": [list(ix) for ix in report.offending_indices[:20]]})
    return ExitStatus.OK


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--eps", type=float, default=1e-7, help="oracle feasibility threshold")
    parser.add_argument("--grid", type=int, default=64, help="square-oracle grid resolution")
    parser.add_argument("--refine", type=int, default=3, help="refinement rounds")
    parser.add_argument("--restarts", type=int, default=4, help="seesaw random restarts")
    parser.add_argument("--seed", type=int, default=0, help="seed for seesaw restarts")
    parser.add_argument("--tol", type=float, default=1e-3, help="bisection bracket width")
    parser.add_argument("--report", metavar="PATH", help="write the report here instead of stdout")
    parser.add_argument("--format", choices=("json", "csv"), default="json")
    parser.add_argument("--no-timestamp", action="store_true",
                        help="omit the timestamp field for byte-identical reruns")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nncert",
        description="Generate, validate and classify correlations of the minimal chain network.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="write a named example correlation")
    p.add_argument("--example", required=True, choices=sorted(EXAMPLE_PARAMS))
    p.add_argument("--param", action="append", metavar="NAME=VALUE")
    p.add_argument("-o", "--out", metavar="PATH")
    _add_common(p)
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("classify", help="region label plus all sub-verdicts")
    p.add_argument("input", metavar="CORR_FILE")
    _add_common(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("sweep", help="classify along one parameter range")
    p.add_argument("--example", required=True, choices=sorted(EXAMPLE_PARAMS))
    p.add_argument("--param", required=True, metavar="NAME=LO:HI:STEP")
    p.add_argument("--fixed", action="append", metavar="NAME=VALUE[,NAME=VALUE...]")
    _add_common(p)
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("visibility", help="bisect the critical visibility")
    p.add_argument("--example", required=True, choices=("mnn1q", "mnn2"))
    p.add_argument("--fixed", action="append", metavar="NAME=VALUE")
    _add_common(p)
    p.set_defaults(func=_cmd_visibility)

    p = sub.add_parser("chsh", help="CHSH value, plain or conditioned")
    p.add_argument("input", metavar="CORR_FILE")
    p.add_argument("--postselect", metavar="b=K", help="condition on Bob's outcome")
    p.add_argument("--fritz", metavar="z=K", help="treat Charlie's output as Bob's input at fixed z")
    _add_common(p)
    p.set_defaults(func=_cmd_chsh)

    p = sub.add_parser("validate", help="structural and probabilistic validity report")
    p.add_argument("input", metavar="CORR_FILE")
    _add_common(p)
    p.set_defaults(func=_cmd_validate)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses code 2 for usage errors
        return ExitStatus.USAGE if exc.code not in (0, None) else ExitStatus.OK
    try:
        return int(args.func(args))
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitStatus.USAGE
    except analysis.BracketError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return ExitStatus.NUMERIC_FAILURE
    except LpError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return ExitStatus.NUMERIC_FAILURE
    except oracles.OracleInputError as exc:
        print(f"invalid correlation input: {exc}", file=sys.stderr)
        return ExitStatus.INVALID_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ExitStatus.USAGE


if __name__ == "__main__":
    sys.exit(main())
