"""JSON and plain-text renderings of analysis results.

JSON schema (``format_version`` 1)::

    {
      "format_version": 1,
      "verdict": "Live" | "NotLive",
      "siphons": [{"siphon": [ids], "max_trap": [ids], "initially_marked": bool}],
      "violation": null | {
        "siphon": [ids], "max_trap": [ids],
        "plan": {"chain": [{"transition": id, "residual": [ids]}],
                 "bounds": [int] | null},
        "witness": null | {"status": "inconclusive"} | {
          "status": "found", "trace": [ids], "strategy_steps": int,
          "marking": {place: int}, "dead_transitions": [ids],
          "siphon": [ids], "picked_places": {transition: place}}
      },
      "oracle_verdict": null | "Live" | "NotLive" | "Inconclusive"
    }

Place and transition lists follow declaration order.
"""

from __future__ import annotations

import json

from .commoner import AnalysisReport, DeadWitness, PriorityPlan
from .net import Net
from .reachability import ReachGraph, Verdict

FORMAT_VERSION = 1


def plan_to_dict(net: Net, plan: PriorityPlan) -> dict:
    return {
        "chain": [{"transition": t, "residual": net.place_order(r)} for t, r in plan.chain],
        "bounds": list(plan.bounds) if plan.bounds is not None else None,
    }


def witness_to_dict(net: Net, w: DeadWitness | Verdict | None) -> dict | None:
    if w is None:
        return None
    if not isinstance(w, DeadWitness):
        return {"status": "inconclusive"}
    return {
        "status": "found",
        "trace": list(w.trace),
        "strategy_steps": w.strategy_steps,
        "marking": net.marking_dict(w.marking),
        "dead_transitions": net.transition_order(w.dead_transitions),
        "siphon": net.place_order(w.siphon),
        "picked_places": {t: w.picked_places[t] for t in net.transition_order(w.picked_places)},
    }


def report_to_dict(net: Net, report: AnalysisReport) -> dict:
    v = report.violation
    return {
        "format_version": FORMAT_VERSION,
        "verdict": report.verdict.value,
        "siphons": [
            {
                "siphon": net.place_order(c.siphon),
                "max_trap": net.place_order(c.max_trap),
                "initially_marked": c.initially_marked,
            }
            for c in report.checked_siphons
        ],
        "violation": None
        if v is None
        else {
            "siphon": net.place_order(v.siphon),
            "max_trap": net.place_order(v.max_trap),
            "plan": plan_to_dict(net, v.plan),
            "witness": witness_to_dict(net, v.witness),
        },
        "oracle_verdict": report.oracle_verdict.value if report.oracle_verdict else None,
    }


def report_to_json(net: Net, report: AnalysisReport) -> str:
    return json.dumps(report_to_dict(net, report), indent=2) + "\n"


def _braces(names) -> str:
    return "{" + ", ".join(names) + "}"


def report_to_text(net: Net, report: AnalysisReport) -> str:
    lines = [f"verdict: {report.verdict.value}"]
    for c in report.checked_siphons:
        mark = "marked" if c.initially_marked else "UNMARKED"
        lines.append(
            f"  siphon {_braces(net.place_order(c.siphon))}: "
            f"max trap {_braces(net.place_order(c.max_trap))} {mark}"
        )
    v = report.violation
    if v is not None:
        lines.append(f"violating siphon: {_braces(net.place_order(v.siphon))}")
        lines.append(f"maximal trap inside: {_braces(net.place_order(v.max_trap))}")
        chain = " ".join(v.plan.transitions) or "(empty)"
        lines.append(f"priority transitions: {chain}")
        if v.plan.bounds:
            lines.append(f"occurrence bounds: {' '.join(map(str, v.plan.bounds))}")
        w = v.witness
        if isinstance(w, DeadWitness):
            lines.append(f"witness trace: {' '.join(w.trace) or '(empty)'}")
            marking = " ".join(f"{p}={c}" for p, c in net.marking_dict(w.marking).items() if c)
            lines.append(f"reached marking: {marking or '(empty)'}")
            lines.append(f"dead transitions: {_braces(net.transition_order(w.dead_transitions))}")
            lines.append(f"unmarked siphon: {_braces(net.place_order(w.siphon))}")
        elif w is not None:
            lines.append("witness: inconclusive (state limit reached)")
    if report.oracle_verdict is not None:
        lines.append(f"oracle verdict: {report.oracle_verdict.value}")
    return "\n".join(lines) + "\n"


def graph_to_dot(g: ReachGraph) -> str:
    net = g.net

    def label(m) -> str:
        parts = [f"{p}={c}" if c > 1 else p for p, c in zip(net.places, m) if c]
        return " ".join(parts) or "0"

    lines = ["digraph reachability {"]
    for i, m in enumerate(g.nodes):
        shape = ", shape=doublecircle" if i == 0 else ""
        lines.append(f'  n{i} [label="{label(m)}"{shape}];')
    for u, t, v in g.edges:
        lines.append(f'  n{u} -> n{v} [label="{t}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_text(g: ReachGraph) -> str:
    net = g.net
    lines = [f"states: {len(g)}  edges: {len(g.edges)}  complete: {str(g.complete).lower()}"]
    for i, m in enumerate(g.nodes):
        marking = " ".join(f"{p}={c}" for p, c in zip(net.places, m) if c) or "0"
        succ = ", ".join(f"{t}->{v}" for t, v in g.succ[i])
        lines.append(f"{i}: [{marking}] {succ}".rstrip())
    return "\n".join(lines) + "\n"
