"""Command line driver.

Exit codes: 0 live, 1 not live, 2 usage/parse/validation error,
3 resource limit reached (inconclusive).
"""

from __future__ import annotations

import argparse
import sys

from .commoner import check_commoner
from .errors import InadmissibleNetError, ParseError, ResourceLimitError
from .net import validate
from .netgen import GenParams, generate
from .reachability import DEFAULT_MAX_STATES, Verdict, explore, liveness_oracle
from .report import graph_to_dot, graph_to_text, report_to_json, report_to_text
from .structural import DEFAULT_WORK_LIMIT, brute_force_siphons, brute_force_traps, minimal_siphons
from .textformat import format_net, parse

EXIT_LIVE = 0
EXIT_NOT_LIVE = 1
EXIT_ERROR = 2
EXIT_RESOURCE = 3

_EXIT = {Verdict.LIVE: EXIT_LIVE, Verdict.NOT_LIVE: EXIT_NOT_LIVE, Verdict.INCONCLUSIVE: EXIT_RESOURCE}


def _positive(text: str) -> int:
    n = int(text)
    if n < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return n


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="fcnet", description="Liveness of free-choice Petri nets.")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="decide liveness with the siphon/trap criterion")
    c.add_argument("file")
    c.add_argument("--json", action="store_true", help="emit the machine-readable report")
    c.add_argument("--witness", action="store_true", help="also run the priority strategy for a dead-marking witness")
    c.add_argument("--max-states", type=_positive, default=DEFAULT_MAX_STATES)
    c.add_argument("--work-limit", type=_positive, default=DEFAULT_WORK_LIMIT)

    o = sub.add_parser("oracle", help="decide liveness by explicit state exploration")
    o.add_argument("file")
    o.add_argument("--max-states", type=_positive, default=DEFAULT_MAX_STATES)

    s = sub.add_parser("structure", help="list siphons or traps")
    s.add_argument("file")
    which = s.add_mutually_exclusive_group()
    which.add_argument("--siphons", action="store_true", help="all siphons (brute force)")
    which.add_argument("--traps", action="store_true", help="all traps (brute force)")
    which.add_argument("--minimal", action="store_true", help="minimal nonempty siphons (default)")

    g = sub.add_parser("gen", help="print a random free-choice net")
    d = GenParams()
    g.add_argument("--seed", type=int, required=True)
    g.add_argument("--places", type=int, default=d.n_places)
    g.add_argument("--clusters", type=int, default=d.n_clusters)
    g.add_argument("--transitions", type=int, default=d.n_transitions)
    g.add_argument("--max-tokens", type=int, default=d.max_tokens)
    g.add_argument("--density", type=float, default=d.density)

    r = sub.add_parser("graph", help="print the reachability graph")
    r.add_argument("file")
    r.add_argument("--max-states", type=_positive, default=DEFAULT_MAX_STATES)
    r.add_argument("--dot", action="store_true", help="Graphviz output")
    return ap


def _load(path: str):
    with open(path, "rb") as fh:
        data = fh.read()
    try:
        return parse(data)
    except ParseError as e:
        raise ParseError(e.line, e.column, f"{path}: {e.message}") from None


def _set(net, s) -> str:
    return "{" + ", ".join(net.place_order(s)) + "}"


def run(args: argparse.Namespace, out=None) -> int:
    out = out or sys.stdout
    if args.command == "gen":
        params = GenParams(args.seed, args.places, args.clusters, args.transitions, args.max_tokens, args.density)
        net, m0 = generate(params)
        out.write(format_net(net, m0))
        return 0

    net, m0 = _load(args.file)
    if args.command == "check":
        report = check_commoner(
            net, m0, work_limit=args.work_limit, witness=args.witness, max_states=args.max_states
        )
        out.write(report_to_json(net, report) if args.json else report_to_text(net, report))
        return _EXIT[report.verdict]
    if args.command == "oracle":
        verdict = liveness_oracle(net, m0, args.max_states)
        out.write(f"{verdict.value}\n")
        return _EXIT[verdict]
    if args.command == "structure":
        rep = validate(net)
        if args.siphons:
            sets = brute_force_siphons(net)
        elif args.traps:
            sets = brute_force_traps(net)
        else:
            sets = minimal_siphons(net)
        for s in sets:
            out.write(_set(net, s) + "\n")
        if not rep.admissible or rep.source_transitions:
            sys.stderr.write(rep.describe() + "\n")
        return 0
    if args.command == "graph":
        g = explore(net, m0, args.max_states)
        out.write(graph_to_dot(g) if args.dot else graph_to_text(g))
        return 0 if g.complete else EXIT_RESOURCE
    raise AssertionError(args.command)  # pragma: no cover


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else 0
    try:
        return run(args)
    except ParseError as e:
        sys.stderr.write(f"parse error: {e}\n")
    except InadmissibleNetError as e:
        sys.stderr.write(f"net is not admissible (must be free-choice with no isolated places):\n{e.report.describe()}\n")
    except ResourceLimitError as e:
        sys.stderr.write(f"resource limit: {e}\n")
        return EXIT_RESOURCE
    except (OSError, ValueError) as e:
        sys.stderr.write(f"error: {e}\n")
    return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
