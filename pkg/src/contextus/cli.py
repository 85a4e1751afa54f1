"""``contextus`` command line.

    contextus VERB --input FILE [flags]
    contextus scenario NAME VERB [flags]

Exit codes: 0 success, 1 domain error, 2 parse/usage error, 3 determinism
or plan error, 4 capacity error.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from . import __version__
from .errors import (
    CapacityError,
    ContextusError,
    DeterminismError,
    ImpossibleOutcomeError,
    PlanError,
)
from .heyting import DownSetAlgebra
from .mbqc import consumption_trace, contextuality_link, fmt_bits, parse_plan, run_sampled
from .poset import poset_to_json, to_dot
from .presheaf import pseudostate, spectral_presheaf, verdict
from .scenarios import BUILTIN, Scenario, builtin, from_document

VERBS = ("poset", "downsets", "nonbool", "contextuality", "mbqc-table", "mbqc-trace")
DOT_VERBS = {"poset", "downsets", "nonbool", "contextuality"}

EXIT_DOMAIN, EXIT_USAGE, EXIT_PLAN, EXIT_CAPACITY = 1, 2, 3, 4


class UsageError(Exception):
    pass


def _add_verb_options(p: argparse.ArgumentParser, with_input: bool) -> None:
    if with_input:
        p.add_argument("--input", required=True, help="JSON input document")
    p.add_argument("--format", choices=("json", "dot"), default="json")
    p.add_argument("--seed", type=int, default=None, help="seed for sampled outcomes")
    p.add_argument("--plan", default="", help='measurement plan, e.g. "1:X:+,2:X:+"')
    p.add_argument("--state-dependent", action="store_true", help="search the pseudostate instead of the spectral presheaf")
    p.add_argument("--dump", action="store_true", help="include every section (at most 1000)")
    p.add_argument("--tables", action="store_true", help="include meet/join/implies tables (posets of at most 6 elements)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="contextus", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="verb", required=True)
    for verb in VERBS:
        _add_verb_options(sub.add_parser(verb), with_input=True)
    sc = sub.add_parser("scenario", help="run a verb on a built-in scenario")
    sc.add_argument("name", choices=BUILTIN)
    sc_sub = sc.add_subparsers(dest="scenario_verb", required=True)
    for verb in VERBS:
        _add_verb_options(sc_sub.add_parser(verb), with_input=False)
    return parser


def _load(args) -> tuple[str, Scenario]:
    if args.verb == "scenario":
        return args.scenario_verb, builtin(args.name)
    try:
        with open(args.input, encoding="utf-8") as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    try:
        return args.verb, from_document(doc, name=args.input)
    except (KeyError, TypeError) as exc:
        raise UsageError(f"malformed input {args.input}: {exc}") from None


def _need_spec(scn: Scenario):
    if scn.spec is None:
        raise UsageError(f"{scn.name} is not an MBQC spec")
    return scn.spec


def run(verb: str, scn: Scenario, args) -> str:
    if args.format == "dot":
        if verb not in DOT_VERBS:
            raise UsageError(f"--format dot is not available for {verb}")
        return to_dot(scn.poset(), name=scn.name)

    if verb == "poset":
        out = poset_to_json(scn.poset())
        if scn.bare_poset is None:
            cp = scn.context_poset()
            out["contexts"] = {l: [str(g) for g in c.generators] for l, c in cp.contexts.items()}
        return _dump(out)

    if verb == "downsets":
        alg = DownSetAlgebra(scn.poset())
        return _dump({"downset_count": len(alg), "downsets": [a.members() for a in alg]})

    if verb == "nonbool":
        alg = DownSetAlgebra(scn.poset())
        out = alg.report()
        if args.tables:
            out["tables"] = alg.truth_tables()
        return _dump(out)

    if verb == "contextuality":
        cp = scn.context_poset()
        if args.state_dependent:
            state = scn.resource()
            if state is None:
                raise UsageError(f"{scn.name} has no state for a state-dependent check")
            local, kind = pseudostate(state, cp), "pseudostate"
        else:
            local, kind = spectral_presheaf(cp), "spectral"
        return _dump({"presheaf": kind, **verdict(cp, local, dump=args.dump)})

    if verb == "mbqc-table":
        spec = _need_spec(scn)
        out = contextuality_link(spec).to_json()
        if args.seed is not None:
            out["sampled"] = {}
            for i in spec.inputs():
                bit, outcomes = run_sampled(spec, i, args.seed)
                out["sampled"][fmt_bits(i)] = {"output": bit, "outcomes": list(outcomes)}
        return _dump(out)

    if verb == "mbqc-trace":
        spec = _need_spec(scn)
        plan = parse_plan(args.plan, spec)
        report = consumption_trace(spec, plan, seed=0 if args.seed is None else args.seed)
        return _dump(report.to_json())

    raise UsageError(f"unknown verb {verb}")


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        verb, scn = _load(args)
        sys.stdout.write(run(verb, scn, args))
    except UsageError as exc:
        print(f"contextus: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (DeterminismError, PlanError, ImpossibleOutcomeError) as exc:
        print(f"contextus: error: {exc}", file=sys.stderr)
        return EXIT_PLAN
    except CapacityError as exc:
        print(f"contextus: error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ContextusError as exc:
        print(f"contextus: error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    return 0


if __name__ == "__main__":
    sys.exit(main())
