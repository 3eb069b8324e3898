"""Command-line front end.

Subcommands mirror the library: ``mult``, ``mixed``, ``rees``, ``closure``,
``degree``, ``verify``, ``random``.  Ideals travel as JSON files (``-`` for
standard input) shaped like::

    {"dim": 2, "generators": [[2, 0], [0, 3]], "quotient": [[1, 1]]}

where ``quotient`` is optional.  Output is canonical JSON on stdout: keys
sorted, no whitespace, ``"schema": "mlab/1"``, integers emitted as decimal
strings once they no longer fit in 53 bits.  ``--pretty`` renders a human
layout instead.  Exit codes: 0 success, 1 verification failure or identity
violation, 2 invalid input, 3 stabilization cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from .errors import (
    DimensionMismatch,
    EmptyGenerators,
    GridInconsistent,
    IdentityViolation,
    IntegralityError,
    MlabError,
    NotMinimalPrime,
    NotPrimary,
    NotStabilized,
    ScaleLimit,
    SchemaError,
    UnboundedComplement,
    UnboundedFacet,
    UnitIdeal,
    WrongDimension,
    ZeroImage,
)
from .hilbert import mixed_multiplicities, multiplicity, multiplicity_fit, multiplicity_polyhedral, multiplicity_quotient
from .monomials import MonomialIdeal
from .newton import integral_closure_power
from .rees import degree_function, rees_coefficients
from .suite import (
    DEFAULT_MAX_EXPONENT,
    SUITE_GROUPS,
    SuiteConfig,
    checks_for_suite,
    random_ideal,
    run_file_checks,
    run_suite,
)

_JSON_INT_LIMIT = 1 << 53


# ---------------------------------------------------------------------------
# canonical JSON


def _jsonable(x):
    if isinstance(x, bool):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) >= _JSON_INT_LIMIT else x
    if isinstance(x, (list, tuple)):
        return [_jsonable(v) for v in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    if x is None or isinstance(x, str):
        return x
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _emit(doc: dict) -> None:
    doc = dict(doc)
    doc["schema"] = "mlab/1"
    sys.stdout.write(json.dumps(_jsonable(doc), sort_keys=True, separators=(",", ":")) + "\n")


# ---------------------------------------------------------------------------
# input files


def _check_rows(rows, dim: int, field: str):
    if not isinstance(rows, list) or not rows:
        raise SchemaError(f"{field} must be a nonempty list of exponent rows", field=field)
    out = []
    for row in rows:
        if not isinstance(row, list) or len(row) != dim:
            raise SchemaError(f"each {field} row must have exactly {dim} entries", field=field)
        for v in row:
            if isinstance(v, bool) or not isinstance(v, int) or v < 0:
                raise SchemaError(f"{field} entries must be nonnegative integers", field=field)
        out.append(tuple(row))
    return tuple(out)


def load_ideal_file(path: str):
    """Parse an ideal file; returns (ideal, quotient_or_None)."""
    try:
        text = sys.stdin.read() if path == "-" else open(path, "r", encoding="utf-8").read()
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    try:
        doc = json.loads(text)
    except ValueError as exc:
        raise SchemaError(f"{path}: invalid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise SchemaError(f"{path}: expected a JSON object")
    allowed = {"schema", "dim", "generators", "quotient"}
    for key in doc:
        if key not in allowed:
            raise SchemaError(f"{path}: unknown field {key!r}", field=key)
    dim = doc.get("dim")
    if isinstance(dim, bool) or not isinstance(dim, int) or dim < 1:
        raise SchemaError(f"{path}: dim must be a positive integer", field="dim")
    if dim > 4:
        raise SchemaError(f"{path}: dimension {dim} exceeds the supported cap of 4", field="dim")
    if "generators" not in doc:
        raise SchemaError(f"{path}: missing generators", field="generators")
    gens = _check_rows(doc["generators"], dim, "generators")
    I = MonomialIdeal(dim, gens)
    Q = None
    if "quotient" in doc:
        Q = MonomialIdeal(dim, _check_rows(doc["quotient"], dim, "quotient"))
    return I, Q


def _load_plain(path: str) -> MonomialIdeal:
    I, Q = load_ideal_file(path)
    if Q is not None:
        raise SchemaError(f"{path}: quotient data is not accepted by this command", field="quotient")
    return I


# ---------------------------------------------------------------------------
# subcommands


def _cmd_mult(args) -> int:
    I, Q = load_ideal_file(args.ideal)
    method = args.method or ("fit" if Q is not None else "both")
    if Q is not None and method != "fit":
        raise SchemaError("a file with quotient data supports --method fit only", field="method")
    if Q is not None:
        value = multiplicity_quotient(Q, I)
        doc = {"e": value, "fit": value, "polyhedral": None}
    elif method == "both":
        res = multiplicity(I)
        doc = {"e": res.value, "fit": res.path_fit, "polyhedral": res.path_polyhedral}
    elif method == "fit":
        value = multiplicity_fit(I)
        doc = {"e": value, "fit": value, "polyhedral": None}
    else:
        value = multiplicity_polyhedral(I)
        doc = {"e": value, "fit": None, "polyhedral": value}
    if args.pretty:
        print(f"e = {doc['e']}  (fit {doc['fit']}, polyhedral {doc['polyhedral']})")
    else:
        _emit(doc)
    return 0


def _cmd_mixed(args) -> int:
    ideals = tuple(_load_plain(p) for p in args.ideals)
    table = mixed_multiplicities(ideals)
    entries = sorted(table.as_dict().items())
    if args.pretty:
        for v, e in entries:
            print(f"e{v} = {e}")
    else:
        _emit(
            {
                "dim": table.dim,
                "arity": table.arity,
                "table": [{"index": list(v), "value": e} for v, e in entries],
            }
        )
    return 0


def _cmd_rees(args) -> int:
    I = _load_plain(args.ideal)
    system = rees_coefficients(I)
    e_total = sum(v.offset * d for v, d in zip(system.valuations, system.coefficients))
    if args.pretty:
        for v, d in zip(system.valuations, system.coefficients):
            print(f"w={v.normal} e={v.offset} d={d}")
        print(f"sum e_i d_i = {e_total}")
    else:
        _emit(
            {
                "dim": system.dim,
                "valuations": [
                    {"w": list(v.normal), "e": v.offset, "d": d}
                    for v, d in zip(system.valuations, system.coefficients)
                ],
                "multiplicity": e_total,
            }
        )
    return 0


def _cmd_closure(args) -> int:
    I = _load_plain(args.ideal)
    if args.power < 0:
        raise SchemaError("--power must be nonnegative", field="power")
    J = integral_closure_power(I, args.power)
    if args.pretty:
        for g in J.gens:
            print(" ".join(str(x) for x in g))
    else:
        _emit({"dim": J.dim, "power": args.power, "generators": [list(g) for g in J.gens]})
    return 0


def _cmd_degree(args) -> int:
    I = _load_plain(args.ideal)
    try:
        element = tuple(int(part) for part in args.element.split(","))
    except ValueError as exc:
        raise SchemaError(f"--element must be comma-separated integers: {exc}", field="element") from exc
    if any(x < 0 for x in element):
        raise SchemaError("--element entries must be nonnegative", field="element")
    rep = degree_function(I, element)
    if args.pretty:
        print(f"coordinate {rep.value_coordinate}  direct {rep.value_direct}  valuation {rep.value_valuation}")
        print("agree" if rep.agree else "DISAGREE")
    else:
        _emit(
            {
                "element": list(element),
                "value": rep.value_direct,
                "coordinate": rep.value_coordinate,
                "direct": rep.value_direct,
                "valuation": rep.value_valuation,
                "agree": rep.agree,
            }
        )
    return 0 if rep.agree else 1


def _parse_dims(raw: str):
    try:
        dims = tuple(int(p) for p in raw.split(","))
    except ValueError as exc:
        raise SchemaError(f"--dims must be comma-separated integers: {exc}", field="dims") from exc
    return dims


def _print_report(report, pretty: bool) -> None:
    if not pretty:
        _emit(report.to_dict())
        return
    print(f"seed={report.seed} dims={','.join(str(d) for d in report.dims)}")
    width = max((len(c.name) for c in report.checks), default=10)
    print(f"{'check'.ljust(width)}  dim  trials  passed  failed")
    for c in report.checks:
        print(f"{c.name.ljust(width)}  {c.dim:>3}  {c.trials:>6}  {c.passed:>6}  {c.failed:>6}")
        for ex in c.counterexamples:
            print(f"    counterexample: {ex}")
    print("ok" if report.ok else "FAILED")
    for name, seconds in report.timings:
        print(f"time {name}: {seconds:.3f}s")


def _cmd_verify(args) -> int:
    names = checks_for_suite(args.suite)
    if args.ideals:
        entries = []
        for path in args.ideals:
            I, Q = load_ideal_file(path)
            entries.append((path, I, Q))
        report = run_file_checks(entries, seed=args.seed, include=names)
    else:
        config = SuiteConfig(
            seed=args.seed,
            dims=_parse_dims(args.dims),
            trials=args.trials,
            max_exponent=args.max_exp,
        )
        report = run_suite(config, include=names)
    _print_report(report, args.pretty)
    return 0 if report.ok else 1


def _cmd_random(args) -> int:
    if args.dim < 1 or args.dim > 4:
        raise SchemaError("--dim must be between 1 and 4", field="dim")
    max_exp = args.max_exp if args.max_exp is not None else DEFAULT_MAX_EXPONENT[args.dim]
    if max_exp < 1:
        raise SchemaError("--max-exp must be positive", field="max-exp")
    rng = random.Random(args.seed)
    I = random_ideal(args.dim, rng, max_exp)
    _emit({"dim": I.dim, "generators": [list(g) for g in I.gens]})
    return 0


# ---------------------------------------------------------------------------
# parser and dispatch


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlab",
        description="Exact multiplicities, mixed multiplicities, and Rees valuations of monomial ideals.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("mult", help="multiplicity along both paths")
    p.add_argument("ideal", help="ideal JSON file, or - for stdin")
    p.add_argument("--method", choices=("fit", "polyhedral", "both"), default=None)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_mult)

    p = sub.add_parser("mixed", help="mixed multiplicity table")
    p.add_argument("ideals", nargs="+", help="ideal JSON files")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_mixed)

    p = sub.add_parser("rees", help="Rees valuations with coefficients")
    p.add_argument("ideal")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_rees)

    p = sub.add_parser("closure", help="integral closure of a power")
    p.add_argument("ideal")
    p.add_argument("--power", type=int, default=1)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_closure)

    p = sub.add_parser("degree", help="degree function along three routes")
    p.add_argument("ideal")
    p.add_argument("--element", required=True, help="exponent vector, e.g. 1,1")
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_degree)

    p = sub.add_parser("verify", help="run the identity suite")
    p.add_argument("ideals", nargs="*", help="optional explicit ideal files")
    p.add_argument("--suite", choices=sorted(SUITE_GROUPS), default="all")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--trials", type=int, default=None)
    p.add_argument("--dims", default="1,2,3")
    p.add_argument("--max-exp", type=int, default=None)
    p.add_argument("--pretty", action="store_true")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("random", help="emit a random m-primary ideal file")
    p.add_argument("--dim", type=int, required=True)
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--max-exp", type=int, default=None)
    p.set_defaults(func=_cmd_random)

    return parser


_INPUT_ERRORS = (
    SchemaError,
    NotPrimary,
    DimensionMismatch,
    EmptyGenerators,
    UnitIdeal,
    ZeroImage,
    NotMinimalPrime,
    ScaleLimit,
    UnboundedComplement,
    UnboundedFacet,
)

_VIOLATION_ERRORS = (IdentityViolation, WrongDimension, IntegralityError, GridInconsistent)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(str(exc), file=sys.stderr)
        return 2
    except NotStabilized as exc:
        print(str(exc), file=sys.stderr)
        return 3
    except _VIOLATION_ERRORS as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except MlabError as exc:
        print(str(exc), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
