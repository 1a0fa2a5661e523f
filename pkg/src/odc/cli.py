"""Command-line front end.

Commands::

    odc validate FILE                  check an instance file
    odc reduce FILE --to {obs,dx,con}  emit the constructed instance(s)
    odc solve FILE [--depth N] [--fusion KIND]
    odc roundtrip FILE                 obs file: construct, verify, recover
    odc oracle FILE [--budget N] [--fusion KIND]

All reports are UTF-8 JSON on standard output; diagnostics go to standard
error.  Exit codes: 0 ok/solvable (an explicitly inconclusive solve verdict
also exits 0; the verdict is in the JSON), 1 semantic failure/unsolvable,
2 parse error, 3 oracle budget exceeded.
"""

from __future__ import annotations

import argparse
import sys
from dataclasses import replace
from typing import Optional

from .automata import enumerate_upto, has_finite_language
from ._backend import backend_name
from .errors import FormatError, InputError, InvalidInstanceError, OracleBudgetError
from .instance_io import (
    dumps,
    instance_to_jsonable,
    parse_instance_file,
)
from .oracle import DEFAULT_BUDGET, oracle_solve_con, oracle_solve_dx, oracle_solve_obs
from .problems import (
    ConInstance,
    DxInstance,
    FusionRule,
    ObsInstance,
    validate_con,
    validate_dx,
    validate_obs,
)
from .reductions import con_to_obs, dx_to_obs, obs_to_con, obs_to_dx, verify_obs_to_con
from .solvers import DEFAULT_DEPTH, solve_con, solve_dx, solve_obs

EXIT_OK = 0
EXIT_SEMANTIC = 1
EXIT_PARSE = 2
EXIT_BUDGET = 3


def _class_of(instance) -> str:
    if isinstance(instance, ObsInstance):
        return "obs"
    if isinstance(instance, DxInstance):
        return "dx"
    return "con"


def _validate(instance):
    return {
        ObsInstance: validate_obs,
        DxInstance: validate_dx,
        ConInstance: validate_con,
    }[type(instance)](instance)


def _emit(obj):
    sys.stdout.write(dumps(obj))


def cmd_validate(args) -> int:
    instance = parse_instance_file(args.file)
    report = _validate(instance)
    out = {"class": _class_of(instance)}
    out.update(report.to_json_dict())
    _emit(out)
    return EXIT_OK if report.ok else EXIT_SEMANTIC


_REDUCTIONS = {
    ("obs", "dx"): obs_to_dx,
    ("dx", "obs"): dx_to_obs,
    ("obs", "con"): obs_to_con,
}


def cmd_reduce(args) -> int:
    instance = parse_instance_file(args.file)
    source = _class_of(instance)
    target = args.to
    if source == "con" and target == "obs":
        members = con_to_obs(instance)
        _emit([{"sigma": s, "instance": instance_to_jsonable(m)} for s, m in members.items()])
        return EXIT_OK
    fn = _REDUCTIONS.get((source, target))
    if fn is None:
        hint = ""
        if (source, target) in (("dx", "con"), ("con", "dx")):
            hint = f": reduce to obs first, then to {target}"
        print(f"no direct reduction from {source} to {target}{hint}", file=sys.stderr)
        return EXIT_SEMANTIC
    _emit(instance_to_jsonable(fn(instance)))
    return EXIT_OK


def _with_fusion(instance, name: Optional[str]):
    if name is None:
        return instance
    return replace(instance, fusion=FusionRule.from_name(name))


def cmd_solve(args) -> int:
    instance = _with_fusion(parse_instance_file(args.file), args.fusion)
    depth = args.depth if args.depth is not None else DEFAULT_DEPTH
    if isinstance(instance, ObsInstance):
        report = solve_obs(instance, depth)
    elif isinstance(instance, DxInstance):
        report = solve_dx(instance, depth)
    else:
        report = solve_con(instance, depth)
    _emit(report.to_json_dict())
    return EXIT_SEMANTIC if report.unsolvable else EXIT_OK


def cmd_roundtrip(args) -> int:
    instance = parse_instance_file(args.file)
    if not isinstance(instance, ObsInstance):
        print("roundtrip needs an obs instance", file=sys.stderr)
        return EXIT_SEMANTIC
    con = obs_to_con(instance)
    if args.tamper:
        # Testing hook: drop the appended event from the first agent's
        # controllable set, which must make verification fail.
        from .automata import Alphabet

        tampered = (Alphabet([]),) + con.controllable[1:]
        con = replace(con, controllable=tampered)
    report = verify_obs_to_con(con, instance)
    out = report.to_json_dict()
    if report.ok:
        members = con_to_obs(con)
        if len(members) != 1:
            out["ok"] = False
            out["obligations"].append(
                {"name": "single-member", "ok": False, "detail": f"{len(members)} members"}
            )
        else:
            from .automata import are_equivalent, embed

            ((sigma, member),) = members.items()
            wide = con.plant.alphabet
            eq_p, _ = are_equivalent(member.plant, embed(instance.plant, wide))
            eq_s, _ = are_equivalent(member.spec, embed(instance.spec, wide))
            out["obligations"].append(
                {"name": "roundtrip-plant", "ok": eq_p, "detail": f"via {sigma}"}
            )
            out["obligations"].append(
                {"name": "roundtrip-spec", "ok": eq_s, "detail": f"via {sigma}"}
            )
            out["ok"] = report.ok and eq_p and eq_s
    _emit(out)
    return EXIT_OK if out["ok"] else EXIT_SEMANTIC


def _finite_words(automaton, what: str):
    if not has_finite_language(automaton):
        raise InputError(f"the oracle needs finite languages, but the {what} is infinite")
    return enumerate_upto(automaton, max(automaton.n_states - 1, 0))


def cmd_oracle(args) -> int:
    instance = _with_fusion(parse_instance_file(args.file), args.fusion)
    budget = args.budget
    if isinstance(instance, ObsInstance):
        report = oracle_solve_obs(
            _finite_words(instance.plant, "plant"),
            _finite_words(instance.spec, "spec"),
            instance.observed,
            instance.fusion,
            budget=budget,
        )
    elif isinstance(instance, DxInstance):
        report = oracle_solve_dx(
            _finite_words(instance.plant, "plant"),
            instance.observed,
            instance.fault,
            instance.delay,
            instance.fusion,
            budget=budget,
        )
    else:
        report = oracle_solve_con(
            _finite_words(instance.plant, "plant"),
            _finite_words(instance.spec, "spec"),
            instance.observed,
            instance.controllable,
            instance.fusion,
            budget=budget,
        )
    _emit(report.to_json_dict())
    return EXIT_SEMANTIC if report.unsolvable else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="odc",
        description="Observation, diagnosis and control problems over regular languages.",
    )
    parser.add_argument(
        "--version", action="store_true", help="print version and kernel backend"
    )
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("validate", help="check an instance file")
    p.add_argument("file")
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("reduce", help="construct the equivalent instance(s)")
    p.add_argument("file")
    p.add_argument("--to", required=True, choices=["obs", "dx", "con"])
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("solve", help="decide solvability")
    p.add_argument("file")
    p.add_argument("--depth", type=int, default=None, help="bound for the semi-decision (default 8)")
    p.add_argument("--fusion", choices=[f.value for f in FusionRule], default=None)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("roundtrip", help="obs -> con -> obs with all proof obligations")
    p.add_argument("file")
    p.add_argument("--tamper", action="store_true", help=argparse.SUPPRESS)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(fn=cmd_roundtrip)

    p = sub.add_parser("oracle", help="brute-force reference decision (finite instances)")
    p.add_argument("file")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--fusion", choices=[f.value for f in FusionRule], default=None)
    p.add_argument("--format", choices=["json"], default="json")
    p.set_defaults(fn=cmd_oracle)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.version:
        from . import __version__

        print(f"odc {__version__} (kernels: {backend_name()})")
        return EXIT_OK
    if args.command is None:
        parser.print_usage(sys.stderr)
        return EXIT_SEMANTIC
    try:
        return args.fn(args)
    except FormatError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except OracleBudgetError as exc:
        print(f"oracle: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print(f"cannot read input: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (InvalidInstanceError, InputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SEMANTIC


if __name__ == "__main__":
    sys.exit(main())
