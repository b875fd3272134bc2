"""Command line entry point.

Subcommands:

    validate <file>                         structure + relation checks
    stasheff <file> [--max-arity N] [--jobs N]
    filtration check <file>
    filtration degree <file> -o OUT
    filtration appendix <file> --kappa K -o OUT
    gamma build <file> -o OUT
    sod <file> [--format json|text] [--jobs N]
    deform <file> --cochain <file> -o OUT

Every command prints a report (JSON unless asked otherwise) and exits with
0 when all mathematical checks pass, 1 when a check fails (the report carries
the witnesses), and 2 on usage or parse errors.  Reports are deterministic up
to the timing fields: witness lists are sorted.
"""

from __future__ import annotations

import argparse
import json
import sys
import time

from .ainf import check_stasheff, validate_structure
from .auslander import build_auslander, verify_lift_independence
from .filtration import (
    FiltrationError,
    appendix_filtration,
    check_filtration,
    degree_filtration,
)
from .hochschild import (
    HochschildCochain,
    HochschildError,
    deform_by_cocycle,
    diagonal_bimodule,
    hochschild_differential,
)
from .perfmod import ModuleError, sod_report
from .specfile import (
    SpecError,
    category_to_dict,
    parse_spec,
    serialize,
)

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_USAGE = 2


def _emit(report: dict, started: float) -> None:
    report["timings"] = {"total_s": round(time.perf_counter() - started, 6)}
    print(json.dumps(report, indent=2))


def _write_out(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)


def _load(path: str):
    return parse_spec(path)


def cmd_validate(args) -> int:
    started = time.perf_counter()
    spec = _load(args.file)
    structure = validate_structure(spec.category)
    relations = check_stasheff(spec.category, jobs=args.jobs)
    ok = structure.passed and relations.passed
    _emit(
        {
            "command": "validate",
            "verdict": "PASS" if ok else "FAIL",
            "structure": structure.to_json(),
            "relations": relations.to_json(),
        },
        started,
    )
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_stasheff(args) -> int:
    started = time.perf_counter()
    spec = _load(args.file)
    structure = validate_structure(spec.category)
    pre_ok = structure.check("degrees").passed and structure.check("composability").passed
    report = check_stasheff(spec.category, n_max=args.max_arity, jobs=args.jobs)
    ok = pre_ok and report.passed
    _emit(
        {
            "command": "stasheff",
            "verdict": "PASS" if ok else "FAIL",
            "structure": structure.to_json(),
            "relations": report.to_json(),
        },
        started,
    )
    return EXIT_PASS if ok else EXIT_FAIL


def _need_filtration(spec):
    if spec.filtration is None:
        raise SpecError("this command needs a filtration section in the input file")
    return spec.filtration


def cmd_filtration_check(args) -> int:
    started = time.perf_counter()
    spec = _load(args.file)
    filt = _need_filtration(spec)
    report = check_filtration(spec.category, filt)
    _emit(
        {
            "command": "filtration check",
            "verdict": "PASS" if report.passed else "FAIL",
            "levels": list(filt.dims()),
            "report": report.to_json(),
        },
        started,
    )
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_filtration_degree(args) -> int:
    started = time.perf_counter()
    spec = _load(args.file)
    filt = degree_filtration(spec.category)
    report = check_filtration(spec.category, filt)
    _write_out(
        args.output,
        serialize(category_to_dict(spec.category, filtration=filt, kappa=spec.kappa)),
    )
    _emit(
        {
            "command": "filtration degree",
            "verdict": "PASS" if report.passed else "FAIL",
            "levels": list(filt.dims()),
            "output": args.output,
            "report": report.to_json(),
        },
        started,
    )
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_filtration_appendix(args) -> int:
    started = time.perf_counter()
    spec = _load(args.file)
    kappa = args.kappa if args.kappa is not None else spec.kappa
    if kappa is None:
        raise SpecError("appendix construction needs --kappa or a kappa field")
    filt, params = appendix_filtration(spec.category, kappa)
    report = check_filtration(spec.category, filt)
    _write_out(
        args.output,
        serialize(category_to_dict(spec.category, filtration=filt, kappa=kappa)),
    )
    _emit(
        {
            "command": "filtration appendix",
            "verdict": "PASS" if report.passed else "FAIL",
            "kappa": kappa,
            "radical_dim": params.radical.dim,
            "nil_index": params.nil_index,
            "N": params.big_n,
            "levels": list(filt.dims()),
            "output": args.output,
            "report": report.to_json(),
        },
        started,
    )
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_gamma_build(args) -> int:
    started = time.perf_counter()
    spec = _load(args.file)
    filt = _need_filtration(spec)
    filt_report = check_filtration(spec.category, filt)
    if not filt_report.passed:
        _emit(
            {
                "command": "gamma build",
                "verdict": "FAIL",
                "report": filt_report.to_json(),
            },
            started,
        )
        return EXIT_FAIL
    aus = build_auslander(spec.category, filt)
    relations = check_stasheff(aus.gamma, jobs=args.jobs)
    structure = validate_structure(aus.gamma)
    lifts_ok = verify_lift_independence(aus, trials=args.lift_trials)
    ok = relations.passed and structure.passed and lifts_ok
    _write_out(args.output, serialize(category_to_dict(aus.gamma)))
    _emit(
        {
            "command": "gamma build",
            "verdict": "PASS" if ok else "FAIL",
            "objects": aus.n,
            "hom_dims": [list(row) for row in aus.hom_dims()],
            "total_dim": aus.gamma.total_dim(),
            "lift_independence": lifts_ok,
            "output": args.output,
            "structure": structure.to_json(),
            "relations": relations.to_json(),
        },
        started,
    )
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_sod(args) -> int:
    started = time.perf_counter()
    spec = _load(args.file)
    filt = _need_filtration(spec)
    filt_report = check_filtration(spec.category, filt)
    if not filt_report.passed:
        _emit(
            {"command": "sod", "verdict": "FAIL", "report": filt_report.to_json()},
            started,
        )
        return EXIT_FAIL
    aus = build_auslander(spec.category, filt)
    rep = sod_report(aus, jobs=args.jobs)
    data = rep.to_json()
    data["command"] = "sod"
    if args.format == "text":
        print(f"semiorthogonality report: {data['verdict']} (n = {rep.n})")
        print(f"H(R/F^1) dims: {data['rbar_cohomology_dims']}")

        def show(name, tab):
            print(name)
            for row in tab:
                print("  " + " ".join(str(cell["total"]).rjust(3) for cell in row))

        show("H Hom(P_j, S_i) total dims (rows i, cols j):", data["hom_P_S_dims"])
        show("H Hom(S_j, S_i) total dims (rows i, cols j):", data["hom_S_S_dims"])
        if rep.failures:
            print(f"failures: {json.dumps(rep.failures)}")
    else:
        _emit(data, started)
    return EXIT_PASS if rep.passed else EXIT_FAIL


def cmd_deform(args) -> int:
    started = time.perf_counter()
    spec = _load(args.file)
    cat = spec.category
    cospec = parse_spec(args.cochain) if _looks_like_spec(args.cochain) else None
    if cospec is not None and cospec.cochain is not None:
        raw = cospec.cochain
    else:
        raw = _load_bare_cochain(args.cochain, cat)
    module = diagonal_bimodule(cat)
    table = {
        key: {f"M.{lab}": c for lab, c in vec.items()}
        for key, vec in raw["table"].items()
    }
    try:
        eta = HochschildCochain(cat, module, raw["arity"], table)
    except HochschildError as exc:
        raise SpecError(str(exc)) from None
    deformed = deform_by_cocycle(cat, module, eta)
    cocycle = hochschild_differential(eta).is_zero()
    structure = validate_structure(deformed)
    relations = check_stasheff(deformed)
    ok = structure.passed and relations.passed
    _write_out(args.output, serialize(category_to_dict(deformed)))
    _emit(
        {
            "command": "deform",
            "verdict": "PASS" if ok else "FAIL",
            "cocycle": cocycle,
            "output": args.output,
            "structure": structure.to_json(),
            "relations": relations.to_json(),
        },
        started,
    )
    return EXIT_PASS if ok else EXIT_FAIL


def _looks_like_spec(path: str) -> bool:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError):
        return False
    return isinstance(data, dict) and "field" in data


def _load_bare_cochain(path: str, cat) -> dict:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise SpecError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise SpecError(f"{path}: invalid JSON at line {exc.lineno}: {exc.msg}") from None
    from .specfile import _parse_cochain

    return _parse_cochain(data, cat)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ainfbench",
        description="verification workbench for finite strictly unital "
        "A-infinity algebras and categories",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="structure and relation checks")
    p.add_argument("file")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("stasheff", help="evaluate the defining relations")
    p.add_argument("file")
    p.add_argument("--max-arity", type=int, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_stasheff)

    p = sub.add_parser("filtration", help="filtration tools")
    fsub = p.add_subparsers(dest="subcommand", required=True)

    q = fsub.add_parser("check", help="verify the filtration in the file")
    q.add_argument("file")
    q.set_defaults(func=cmd_filtration_check)

    q = fsub.add_parser("degree", help="filtration by cohomological degree")
    q.add_argument("file")
    q.add_argument("-o", "--output", required=True)
    q.set_defaults(func=cmd_filtration_degree)

    q = fsub.add_parser("appendix", help="radical-power filtration for a "
                        "two-degree algebra")
    q.add_argument("file")
    q.add_argument("--kappa", type=int, default=None)
    q.add_argument("-o", "--output", required=True)
    q.set_defaults(func=cmd_filtration_appendix)

    p = sub.add_parser("gamma", help="quotient category tools")
    gsub = p.add_subparsers(dest="subcommand", required=True)
    q = gsub.add_parser("build", help="build the quotient category on 0..n-1")
    q.add_argument("file")
    q.add_argument("-o", "--output", required=True)
    q.add_argument("--jobs", type=int, default=1)
    q.add_argument("--lift-trials", type=int, default=50)
    q.set_defaults(func=cmd_gamma_build)

    p = sub.add_parser("sod", help="semiorthogonality report")
    p.add_argument("file")
    p.add_argument("--format", choices=("json", "text"), default="json")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sod)

    p = sub.add_parser("deform", help="deform by a Hochschild cochain "
                       "(diagonal bimodule)")
    p.add_argument("file")
    p.add_argument("--cochain", required=True)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_deform)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (SpecError, FiltrationError, HochschildError, ModuleError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
