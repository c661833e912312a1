"""Commoner's liveness criterion for free-choice nets, with witnesses.

A free-choice net without isolated places is live at ``m0`` iff every
nonempty siphon contains a trap marked at ``m0``.  Checking minimal
siphons suffices, and a siphon contains a marked trap iff its maximal
trap is marked.

Two witness constructions back a ``NotLive`` verdict:

* :func:`siphon_from_dead_marking` starts from a reachable marking where
  every transition is either dead or live and extracts an unmarked
  siphon covering the dead transitions.
* :func:`build_priority_plan` / :func:`run_priority_strategy` start from
  the violating siphon and drive the net into a marking at which every
  output transition of the siphon is dead.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import ContractError, InadmissibleNetError
from .net import Marking, Net, PlaceSet, TransitionSet, fire, is_enabled, postset, preset, validate
from .reachability import (
    DEFAULT_MAX_STATES,
    ReachGraph,
    Verdict,
    dead_set,
    explore,
    find_saturated_node,
    live_set,
    liveness_oracle,
    liveness_table,
)
from .structural import DEFAULT_WORK_LIMIT, is_siphon, maximal_trap_within, minimal_siphons


@dataclass(frozen=True)
class PriorityPlan:
    """Priority transitions ``t_1..t_k`` that drain a siphon down to its maximal trap.

    ``chain[i]`` is ``(t_i, R_i)`` where ``R_1`` is the siphon and
    ``R_{i+1} = R_i - pre(t_i)``; the residual after the last step is
    ``max_trap``.  ``bounds[i]`` caps how often ``t_i`` can fire in the
    priority strategy and is only filled in when a marking was supplied.
    """

    siphon: PlaceSet
    max_trap: PlaceSet
    chain: tuple[tuple[str, PlaceSet], ...]
    bounds: tuple[int, ...] | None = None

    @property
    def transitions(self) -> tuple[str, ...]:
        return tuple(t for t, _ in self.chain)

    def check(self, net: Net) -> None:
        """Raise ContractError unless every structural invariant holds."""
        s, q = self.siphon, self.max_trap
        s_out = postset(net, s)
        used: set[str] = set()
        for i, (t, r) in enumerate(self.chain):
            if r != s - used:
                raise ContractError(f"R_{i + 1} is not S minus the presets of earlier priority transitions")
            if not r > q:
                raise ContractError(f"R_{i + 1} does not strictly contain the maximal trap")
            pre_t, post_t = net.pre(t), net.post(t)
            if t not in s_out:
                raise ContractError(f"{t} is not an output transition of the siphon")
            if not pre_t & r:
                raise ContractError(f"{t} takes no input from R_{i + 1}")
            if post_t & r:
                raise ContractError(f"{t} puts tokens back into R_{i + 1}")
            if pre_t & q:
                raise ContractError(f"{t} consumes from the maximal trap")
            used |= pre_t
        if s - used != q:
            raise ContractError("the chain does not drain the siphon down to its maximal trap")
        if self.bounds is not None and len(self.bounds) != len(self.chain):
            raise ContractError("bounds and chain lengths differ")


@dataclass(frozen=True)
class DeadWitness:
    """A replayable run ending in a marking with an unmarked siphon.

    ``picked_places`` maps every dead transition to one of its input
    places; the image of that map is ``siphon``.  For witnesses from the
    priority strategy, ``strategy_steps`` is the length of the trace
    prefix produced by the strategy itself; the rest only moves to a
    marking where every transition is dead or live.
    """

    trace: tuple[str, ...]
    marking: Marking
    dead_transitions: TransitionSet
    siphon: PlaceSet
    picked_places: dict[str, str]
    strategy_steps: int | None = None


@dataclass(frozen=True)
class SiphonCheck:
    siphon: PlaceSet
    max_trap: PlaceSet
    initially_marked: bool


@dataclass(frozen=True)
class Violation:
    siphon: PlaceSet
    max_trap: PlaceSet
    plan: PriorityPlan
    # None: not requested; Verdict.INCONCLUSIVE: the strategy hit the state cap
    witness: DeadWitness | Verdict | None = None


@dataclass(frozen=True)
class AnalysisReport:
    verdict: Verdict
    checked_siphons: list[SiphonCheck] = field(default_factory=list)
    violation: Violation | None = None
    oracle_verdict: Verdict | None = None


def build_priority_plan(net: Net, s, m0: Marking | None = None) -> PriorityPlan:
    """Fix priority transitions for a siphon whose maximal trap is unmarked.

    Each step takes the lowest-index transition that reads from the
    current residual set without writing back into it.
    """
    s = frozenset(s)
    if not s or not is_siphon(net, s):
        raise ContractError("expected a nonempty siphon")
    q = maximal_trap_within(net, s)
    if m0 is not None and any(m0[net.place_index[p]] for p in q):
        raise ContractError("the maximal trap inside the siphon is marked")

    chain = []
    r = s
    while r != q:
        inputs_r = preset(net, r)
        t = next(
            (t for t in net.transition_order(postset(net, r)) if t not in inputs_r),
            None,
        )
        if t is None:  # pragma: no cover - r would be a trap larger than q
            raise ContractError("residual set is a trap; maximal trap computation is inconsistent")
        chain.append((t, r))
        r = r - net.pre(t)

    bounds = None
    if m0 is not None and chain:
        tok = lambda ps: min(m0[net.place_index[p]] for p in ps)  # noqa: E731
        k = len(chain)
        b = [0] * k
        b[k - 1] = tok(chain[k - 1][1] - q)
        for i in range(k - 2, -1, -1):
            b[i] = sum(b[i + 1 :]) + tok(chain[i][1] - chain[i + 1][1])
        bounds = tuple(b)
    elif m0 is not None:
        bounds = ()
    plan = PriorityPlan(s, q, tuple(chain), bounds)
    plan.check(net)
    return plan


def siphon_from_dead_marking(net: Net, g: ReachGraph, node: int) -> DeadWitness:
    """Unmarked siphon built from the dead transitions at ``node``.

    Requires a complete graph and a node where dead and live transitions
    together make up all of T, with at least one dead transition.  Each
    dead transition contributes its lowest-index input place that is
    empty and not fed by any live transition.
    """
    dead = dead_set(g, node)
    live = live_set(g, node)
    if not dead or dead | live != frozenset(net.transitions):
        raise ContractError("node must have a nonempty dead set and dead | live == T")
    m = g.nodes[node]
    fed_by_live = postset(net, live)
    picked = {}
    for t in net.transition_order(dead):
        p = next(
            (p for p in net.place_order(net.pre(t)) if m[net.place_index[p]] == 0 and p not in fed_by_live),
            None,
        )
        if p is None:
            raise ContractError(f"no empty input place outside the live postset for dead transition {t}")
        picked[t] = p
    return DeadWitness(
        trace=tuple(g.trace_to(node)),
        marking=m,
        dead_transitions=dead,
        siphon=frozenset(picked.values()),
        picked_places=picked,
    )


def run_priority_strategy(
    net: Net,
    m0: Marking,
    plan: PriorityPlan,
    max_states: int = DEFAULT_MAX_STATES,
) -> DeadWitness | Verdict:
    """Drive the net until no priority transition can ever fire again.

    Repeatedly explores the closure of the current marking under the
    transitions outside the siphon's postset and fires the first priority
    transition (chain order) enabled anywhere in it.  Once none is, every
    transition of the siphon's postset is dead.  The run then continues
    inside that closure to a marking where dead and live transitions
    cover T, and :func:`siphon_from_dead_marking` yields the witness.

    Returns ``Verdict.INCONCLUSIVE`` when a closure exceeds ``max_states``.
    """
    if any(m0[net.place_index[p]] for p in plan.max_trap):
        raise ContractError("the maximal trap inside the siphon is marked")
    s_out = postset(net, plan.siphon)
    free = [t for t in net.transitions if t not in s_out]
    trace: list[str] = []
    m = m0
    while True:
        g = explore(net, m, max_states, transitions=free)
        if not g.complete:
            return Verdict.INCONCLUSIVE
        hit = None
        for t in plan.transitions:
            for v, mv in enumerate(g.nodes):
                if is_enabled(net, mv, t):
                    hit = (v, t)
                    break
            if hit:
                break
        if hit is None:
            break
        v, t = hit
        trace += g.trace_to(v)
        trace.append(t)
        m = fire(net, g.nodes[v], t)

    full = explore(net, m, max_states)
    if not full.complete:  # pragma: no cover - full equals the closure by the free-choice argument
        return Verdict.INCONCLUSIVE
    target = find_saturated_node(full, 0, liveness_table(full))
    if target is None:  # pragma: no cover - a complete graph always has one
        raise ContractError("no reachable marking with dead | live == T")
    w = siphon_from_dead_marking(net, full, target)
    if not s_out <= w.dead_transitions:
        raise ContractError("priority strategy left an output transition of the siphon alive")
    return DeadWitness(
        trace=tuple(trace) + w.trace,
        marking=w.marking,
        dead_transitions=w.dead_transitions,
        siphon=w.siphon,
        picked_places=w.picked_places,
        strategy_steps=len(trace),
    )


def check_commoner(
    net: Net,
    m0: Marking,
    work_limit: int = DEFAULT_WORK_LIMIT,
    witness: bool = False,
    max_states: int = DEFAULT_MAX_STATES,
    oracle: bool = False,
) -> AnalysisReport:
    """Decide liveness of ``m0`` structurally.

    Refuses nets that are not free-choice or have isolated places.  With
    ``witness=True`` the priority strategy is run for the violating
    siphon; with ``oracle=True`` the explicit-state oracle is consulted
    too and its verdict recorded alongside.
    """
    report = validate(net)
    if not report.admissible:
        raise InadmissibleNetError(report)
    checks = []
    for s in minimal_siphons(net, work_limit):
        q = maximal_trap_within(net, s)
        marked = any(m0[net.place_index[p]] for p in q)
        checks.append(SiphonCheck(s, q, marked))

    violation = None
    bad = next((c for c in checks if not c.initially_marked), None)
    if bad is not None:
        plan = build_priority_plan(net, bad.siphon, m0)
        w = run_priority_strategy(net, m0, plan, max_states) if witness else None
        violation = Violation(bad.siphon, bad.max_trap, plan, w)
    verdict = Verdict.NOT_LIVE if violation else Verdict.LIVE
    oracle_verdict = liveness_oracle(net, m0, max_states) if oracle else None
    return AnalysisReport(verdict, checks, violation, oracle_verdict)

