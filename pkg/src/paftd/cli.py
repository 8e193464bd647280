"""Command-line front end.

``solve``, ``oracle``, ``preprocess`` and ``validate-td`` print a single JSON
record to stdout; ``generate`` and ``decompose`` print the generated document
itself (PAF text resp. TD text) so output can be piped straight into a file.
Exit codes: 0 success, 2 usage error, 3 input error, 4 capacity/timeout.
"""

from __future__ import annotations

import argparse
import decimal
import json
import sys
import time
from fractions import Fraction

import numpy as np

from . import generator, oracle, paffile, preprocess, solver, treedecomp
from .errors import BudgetExceeded, CapacityError, InputError

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_INPUT = 3
EXIT_CAPACITY = 4

_SEMANTICS_ALIASES = {
    "adm": "adm",
    "admissible": "adm",
    "com": "com",
    "complete": "com",
    "stb": "stb",
    "stable": "stb",
    "grd": "grd",
    "grounded": "grd",
}


def _semantics(name: str, allowed) -> str:
    sigma = _SEMANTICS_ALIASES.get(name)
    if sigma is None or sigma not in allowed:
        raise InputError(f"unsupported semantics {name!r}")
    return sigma


def _decimal15(value: Fraction) -> str:
    ctx = decimal.Context(prec=15)
    return str(ctx.divide(decimal.Decimal(value.numerator), decimal.Decimal(value.denominator)))


def _answer_fields(value, mode: str) -> dict:
    if mode == "rational":
        return {"answer": str(value), "answerDecimal": _decimal15(value)}
    return {"answer": repr(float(value)), "answerDecimal": repr(float(value))}


def _parse_set(text: str) -> frozenset[str]:
    return frozenset(x for x in text.split(",") if x)


def _load_document(path: str) -> paffile.PafDocument:
    try:
        with open(path, encoding="utf-8") as fh:
            return paffile.parse_paf(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _load_td(path: str):
    try:
        with open(path, encoding="utf-8") as fh:
            return treedecomp.parse_td(fh.read())
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from None


def _emit(record: dict) -> None:
    print(json.dumps(record))


def _cmd_solve(args) -> int:
    started = time.monotonic()
    deadline = started + args.timeout if args.timeout > 0 else None
    doc = _load_document(args.input)
    paf = doc.paf
    sigma = _semantics(args.semantics, solver.DP_SEMANTICS)
    if args.set is not None:
        S = _parse_set(args.set)
    elif doc.query_set is not None:
        S = doc.query_set
    else:
        raise InputError("no query set: pass --set or add a set line to the file")

    td = _load_td(args.td_file) if args.td_file else None
    if td is not None and not isinstance(td, treedecomp.NiceTreeDecomposition):
        td = treedecomp.make_nice(td)

    multiplier = Fraction(1)
    preprocessed = "off"
    if args.preprocess == "on" and sigma == "com" and td is None:
        reduction = preprocess.simplify_for_ext(paf, S)
        if reduction.zero:
            record = {
                **_answer_fields(Fraction(0) if args.mode == "rational" else 0.0, args.mode),
                "mode": args.mode,
                "semantics": args.semantics,
                "width": None,
                "nodes": None,
                "preprocess": "zero",
                "wallMillis": int((time.monotonic() - started) * 1000),
            }
            _emit(record)
            return EXIT_OK
        paf = reduction.paf
        multiplier = reduction.multiplier
        preprocessed = "on"

    result = solver.solve(
        paf,
        sigma,
        S,
        mode=args.mode,
        td=td,
        heuristic=args.heuristic,
        order=_parse_order(args.order),
        trace=args.trace,
        deadline=deadline,
    )
    value = result.value
    if multiplier != 1:
        value = value * (float(multiplier) if args.mode == "float" else multiplier)
    record = {
        **_answer_fields(value, args.mode),
        "mode": args.mode,
        "semantics": args.semantics,
        "width": result.width,
        "nodes": result.node_count,
        "preprocess": preprocessed,
        "wallMillis": int((time.monotonic() - started) * 1000),
    }
    if args.trace:
        record["trace"] = result.trace
    _emit(record)
    return EXIT_OK


def _parse_order(text):
    if not text:
        return None
    return [x for x in text.split(",") if x]


def _cmd_oracle(args) -> int:
    started = time.monotonic()
    deadline = started + args.timeout if args.timeout > 0 else None
    doc = _load_document(args.input)
    paf = doc.paf
    sigma = _semantics(args.semantics, oracle.ORACLE_SEMANTICS)

    queries = [q for q in (args.ext, args.acc, args.count_ext, args.count_acc) if q is not None]
    if args.ext is None and args.count_ext is None and args.acc is None and args.count_acc is None:
        if doc.query_set is not None:
            args.ext = str(",".join(sorted(doc.query_set)))
        elif doc.query_arg is not None:
            args.acc = doc.query_arg
        else:
            raise InputError("no query: pass --ext/--acc/--count-ext/--count-acc")
    elif len(queries) > 1:
        raise InputError("pass exactly one of --ext/--acc/--count-ext/--count-acc")

    multiplier = Fraction(1)
    if args.ext is not None:
        S = _parse_set(args.ext)
        if args.preprocess == "on" and sigma == "com":
            reduction = preprocess.simplify_for_ext(paf, S)
            if reduction.zero:
                value = Fraction(0)
            else:
                value = reduction.multiplier * oracle.p_ext_oracle(
                    reduction.paf, sigma, S, cap=args.cap, deadline=deadline
                )
        else:
            value = oracle.p_ext_oracle(paf, sigma, S, cap=args.cap, deadline=deadline)
        fields = _answer_fields(value, "rational")
    elif args.acc is not None:
        if args.preprocess == "on" and preprocess.simplify_for_acc(paf, args.acc):
            value = Fraction(0)
        else:
            value = oracle.p_acc_oracle(paf, sigma, args.acc, cap=args.cap, deadline=deadline)
        fields = _answer_fields(value, "rational")
    elif args.count_ext is not None:
        fields = {"answer": oracle.count_ext(paf, sigma, _parse_set(args.count_ext), cap=args.cap, deadline=deadline)}
    else:
        fields = {"answer": oracle.count_acc(paf, sigma, args.count_acc, cap=args.cap, deadline=deadline)}

    record = {
        **fields,
        "mode": "rational",
        "semantics": args.semantics,
        "width": None,
        "nodes": None,
        "wallMillis": int((time.monotonic() - started) * 1000),
    }
    _emit(record)
    return EXIT_OK


def _cmd_preprocess(args) -> int:
    started = time.monotonic()
    doc = _load_document(args.input)
    paf = doc.paf
    forced = preprocess.forced_labeling(paf)
    record = {
        "forcedIn": sorted(forced.forced_in),
        "forcedOut": sorted(forced.forced_out),
        "wallMillis": int((time.monotonic() - started) * 1000),
    }
    S = _parse_set(args.set) if args.set is not None else doc.query_set
    if S is not None:
        reduction = preprocess.simplify_for_ext(paf, S)
        record["set"] = sorted(S)
        record["zero"] = reduction.zero
        if not reduction.zero:
            record["multiplier"] = str(reduction.multiplier)
            record["removed"] = sorted(
                set(paf.af.arguments) - set(reduction.paf.af.arguments)
            )
    _emit(record)
    return EXIT_OK


def _cmd_decompose(args) -> int:
    doc = _load_document(args.input)
    rng = np.random.default_rng(args.seed) if args.seed is not None else None
    td = treedecomp.decompose(
        doc.paf.af, heuristic=args.heuristic, order=_parse_order(args.order), rng=rng
    )
    if args.nice:
        td = treedecomp.make_nice(td)
    sys.stdout.write(td.serialize())
    return EXIT_OK


def _cmd_validate_td(args) -> int:
    doc = _load_document(args.input)
    td = _load_td(args.td_file)
    violations = td.validate(doc.paf.af)
    _emit(
        {
            "ok": not violations,
            "violations": violations,
            "width": td.width(),
            "nodes": td.node_count(),
        }
    )
    return EXIT_OK if not violations else EXIT_INPUT


def _cmd_generate(args) -> int:
    try:
        rows, cols = args.grid.lower().split("x")
        spec = generator.GridSpec(int(rows), int(cols), args.seed)
    except ValueError:
        raise InputError(f"invalid grid spec {args.grid!r}; expected KxN") from None
    sys.stdout.write(generator.generate_grid_document(spec))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="paftd",
        description="Exact constellation-semantics solver for probabilistic AFs",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="P-Ext via tree-decomposition DP")
    solve.add_argument("input")
    solve.add_argument("--semantics", default="complete")
    solve.add_argument("--set", help="comma-separated query set")
    solve.add_argument("--mode", choices=("float", "rational"), default="rational")
    solve.add_argument("--td-file", help="replay a fixed (nice) tree-decomposition")
    solve.add_argument("--heuristic", choices=treedecomp.HEURISTICS, default="min-fill")
    solve.add_argument("--order", help="elimination order for given-order")
    solve.add_argument("--preprocess", choices=("on", "off"), default="on")
    solve.add_argument("--timeout", type=float, default=300.0)
    solve.add_argument("--trace", action="store_true")
    solve.set_defaults(func=_cmd_solve)

    orc = sub.add_parser("oracle", help="brute-force enumeration ground truth")
    orc.add_argument("input")
    orc.add_argument("--semantics", default="complete")
    orc.add_argument("--ext", help="comma-separated set for P-Ext")
    orc.add_argument("--acc", help="argument for P-Acc")
    orc.add_argument("--count-ext", help="comma-separated set for scenario counting")
    orc.add_argument("--count-acc", help="argument for scenario counting")
    orc.add_argument("--cap", type=int, default=oracle.DEFAULT_UNCERTAINTY_CAP)
    orc.add_argument("--preprocess", choices=("on", "off"), default="off")
    orc.add_argument("--timeout", type=float, default=300.0)
    orc.set_defaults(func=_cmd_oracle)

    prep = sub.add_parser("preprocess", help="forced labeling and query reduction")
    prep.add_argument("input")
    prep.add_argument("--set", help="comma-separated query set")
    prep.set_defaults(func=_cmd_preprocess)

    dec = sub.add_parser("decompose", help="emit a tree-decomposition")
    dec.add_argument("input")
    dec.add_argument("--heuristic", choices=treedecomp.HEURISTICS, default="min-fill")
    dec.add_argument("--order", help="elimination order for given-order")
    dec.add_argument("--nice", action="store_true", help="emit the nice form")
    dec.add_argument("--seed", type=int, help="randomize heuristic tie-breaks")
    dec.set_defaults(func=_cmd_decompose)

    val = sub.add_parser("validate-td", help="check a TD file against an instance")
    val.add_argument("input")
    val.add_argument("--td-file", required=True)
    val.set_defaults(func=_cmd_validate_td)

    gen = sub.add_parser("generate", help="emit a seeded grid instance")
    gen.add_argument("--grid", required=True, help="dimensions, e.g. 3x5")
    gen.add_argument("--seed", type=int, required=True)
    gen.set_defaults(func=_cmd_generate)

    return parser


def run(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if exc.code is not None else EXIT_USAGE
    try:
        return args.func(args)
    except (CapacityError, BudgetExceeded) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
