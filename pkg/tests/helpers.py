"""Canonical nets and the generated acceptance suite shared by the tests."""

from __future__ import annotations

import functools
from dataclasses import dataclass

from fcnet.commoner import AnalysisReport, check_commoner
from fcnet.net import Marking, Net
from fcnet.netgen import GenParams, SplitMix64, generate
from fcnet.reachability import ReachGraph, Verdict, explore, live_set

SUITE_SEEDS = range(1, 501)
SUITE_MAX_STATES = 50_000


def e1() -> Net:
    return Net.from_transitions(["p"], {"t": (["p"], ["p"])})


def e2() -> Net:
    return Net.from_transitions(
        ["p1", "p2"],
        {"a": (["p1"], ["p2"]), "b": (["p2"], ["p1"]), "c": (["p2"], [])},
    )


def source_net() -> Net:
    """t produces into p from nothing; u drains p."""
    return Net.from_transitions(["p"], {"t": ([], ["p"]), "u": (["p"], [])})


def suite_params(seed: int) -> GenParams:
    """At most 8 places and 8 transitions, at most 2 tokens per place."""
    r = SplitMix64(0xC0FFEE ^ seed)
    n = 2 + r.below(7)
    nt = min(8, max(1, n - r.below(2)))
    k = max(min(n, nt) - r.below(2), 1)
    return GenParams(seed, n, k, nt, 1 + r.below(2), (0.0, 0.0, 0.05)[r.below(3)])


@dataclass
class SuiteCase:
    seed: int
    net: Net
    m0: Marking
    graph: ReachGraph
    report: AnalysisReport
    oracle: Verdict


def oracle_from_graph(g: ReachGraph) -> Verdict:
    if not g.complete:
        return Verdict.INCONCLUSIVE
    return Verdict.LIVE if live_set(g, 0) == frozenset(g.net.transitions) else Verdict.NOT_LIVE


@functools.lru_cache(maxsize=None)
def suite_cases() -> tuple[SuiteCase, ...]:
    out = []
    for seed in SUITE_SEEDS:
        net, m0 = generate(suite_params(seed))
        g = explore(net, m0, SUITE_MAX_STATES)
        report = check_commoner(net, m0, witness=True, max_states=SUITE_MAX_STATES)
        out.append(SuiteCase(seed, net, m0, g, report, oracle_from_graph(g)))
    return tuple(out)


def small_params(seed: int, max_places: int = 8) -> GenParams:
    """Generator parameters for property tests, sized by ``max_places``."""
    r = SplitMix64(0xBADC0DE ^ seed)
    n = 1 + r.below(max_places)
    nt = 1 + r.below(8)
    k = 1 + r.below(min(n, nt))
    return GenParams(seed, n, k, nt, r.below(3), (0.0, 0.05, 0.1, 0.2, 0.3)[r.below(5)])
