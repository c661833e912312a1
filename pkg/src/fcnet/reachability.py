"""Explicit-state reachability graphs and exact dead/live transition sets.

Everything here is only sound on a *complete* graph, so the dead/live
queries refuse truncated ones.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable

import networkx as nx

from .errors import GraphIncompleteError, TokenOverflowError
from .net import MAX_TOKENS, Marking, Net, TransitionSet, check_marking, enabled_index

DEFAULT_MAX_STATES = 100_000


class Verdict(str, enum.Enum):
    LIVE = "Live"
    NOT_LIVE = "NotLive"
    INCONCLUSIVE = "Inconclusive"


@dataclass(eq=False)
class ReachGraph:
    """BFS reachability graph; node 0 is the initial marking."""

    net: Net
    nodes: list[Marking]
    index: dict[Marking, int]
    edges: list[tuple[int, str, int]]
    succ: list[list[tuple[str, int]]]
    parent: list[tuple[int, str] | None]
    complete: bool
    allowed: tuple[str, ...] = field(default=())

    def __len__(self) -> int:
        return len(self.nodes)

    def trace_to(self, node: int) -> list[str]:
        """Shortest firing sequence from the initial marking to ``node``."""
        out = []
        while self.parent[node] is not None:
            node, t = self.parent[node]
            out.append(t)
        out.reverse()
        return out

    def forward(self, node: int) -> set[int]:
        seen = {node}
        todo = [node]
        while todo:
            u = todo.pop()
            for _, v in self.succ[u]:
                if v not in seen:
                    seen.add(v)
                    todo.append(v)
        return seen

    def backward(self, targets: Iterable[int]) -> set[int]:
        pred: list[list[int]] = [[] for _ in self.nodes]
        for u, _, v in self.edges:
            pred[v].append(u)
        seen = set(targets)
        todo = list(seen)
        while todo:
            v = todo.pop()
            for u in pred[v]:
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
        return seen

    def enabled_at(self, node: int) -> TransitionSet:
        m = self.nodes[node]
        return frozenset(t for i, t in enumerate(self.net.transitions) if enabled_index(self.net, m, i))


def explore(
    net: Net,
    m0: Marking,
    max_states: int = DEFAULT_MAX_STATES,
    transitions: Iterable[str] | None = None,
) -> ReachGraph:
    """Breadth-first exploration from ``m0`` keeping at most ``max_states`` markings.

    ``transitions`` restricts which transitions may fire (default: all).
    When a new marking would exceed the cap, exploration stops and the
    partial graph comes back with ``complete=False``.
    """
    if max_states < 1:
        raise ValueError("max_states must be positive")
    check_marking(net, m0)
    if transitions is None:
        allowed = list(range(len(net.transitions)))
    else:
        allowed = sorted(net.transition_index[t] for t in set(transitions))
    names = net.transitions

    nodes = [m0]
    index = {m0: 0}
    edges: list[tuple[int, str, int]] = []
    succ: list[list[tuple[str, int]]] = [[]]
    parent: list[tuple[int, str] | None] = [None]
    steps = [(names[ti], net._pre_idx[ti], net._delta[ti]) for ti in allowed]
    complete = True
    queue = deque([0])
    while queue and complete:
        u = queue.popleft()
        m = nodes[u]
        for name, pre_idx, delta in steps:
            for i in pre_idx:
                if not m[i]:
                    break
            else:
                lst = list(m)
                for i, c in delta:
                    lst[i] += c
                    if lst[i] > MAX_TOKENS:
                        raise TokenOverflowError(f"place {net.places[i]!r} would exceed {MAX_TOKENS} tokens")
                m2 = tuple(lst)
                v = index.get(m2)
                if v is None:
                    if len(nodes) >= max_states:
                        complete = False
                        break
                    v = len(nodes)
                    index[m2] = v
                    nodes.append(m2)
                    succ.append([])
                    parent.append((u, name))
                    queue.append(v)
                edges.append((u, name, v))
                succ[u].append((name, v))
    return ReachGraph(net, nodes, index, edges, succ, parent, complete, tuple(names[i] for i in allowed))


def _require_complete(g: ReachGraph) -> None:
    if not g.complete:
        raise GraphIncompleteError("reachability graph is incomplete; dead/live sets are undefined")
    if len(g.allowed) != len(g.net.transitions):
        raise GraphIncompleteError("graph was explored with a restricted transition set")


def dead_set(g: ReachGraph, node: int = 0) -> TransitionSet:
    """Transitions enabled at no marking reachable from ``node``."""
    _require_complete(g)
    seen: set[str] = set()
    for v in g.forward(node):
        seen |= g.enabled_at(v)
    return frozenset(t for t in g.net.transitions if t not in seen)


def live_set(g: ReachGraph, node: int = 0) -> TransitionSet:
    """Transitions that can be re-enabled from every marking reachable from ``node``."""
    _require_complete(g)
    fwd = g.forward(node)
    live = []
    for ti, t in enumerate(g.net.transitions):
        enabling = [v for v in range(len(g)) if enabled_index(g.net, g.nodes[v], ti)]
        if fwd <= g.backward(enabling):
            live.append(t)
    return frozenset(live)


@dataclass(frozen=True)
class LivenessSets:
    dead: TransitionSet
    live: TransitionSet
    at: int


def liveness_sets(g: ReachGraph, node: int = 0) -> LivenessSets:
    return LivenessSets(dead_set(g, node), live_set(g, node), node)


def liveness_table(g: ReachGraph) -> list[tuple[TransitionSet, TransitionSet]]:
    """``(dead, live)`` for every node at once, via the SCC condensation.

    A transition is dead at ``u`` iff no SCC reachable from ``u`` enables
    it, and live at ``u`` iff it is dead at no node reachable from ``u``.
    """
    _require_complete(g)
    net = g.net
    every = (1 << len(net.transitions)) - 1
    dg = nx.DiGraph()
    dg.add_nodes_from(range(len(g)))
    dg.add_edges_from((u, v) for u, _, v in g.edges)
    cond = nx.condensation(dg)
    members = cond.graph["mapping"]
    en_scc = [0] * cond.number_of_nodes()
    for u, m in enumerate(g.nodes):
        mask = 0
        for ti in range(len(net.transitions)):
            if enabled_index(net, m, ti):
                mask |= 1 << ti
        en_scc[members[u]] |= mask
    reach_en = [0] * len(en_scc)
    dead_any = [0] * len(en_scc)
    for c in reversed(list(nx.topological_sort(cond))):
        r = en_scc[c]
        for d in cond.successors(c):
            r |= reach_en[d]
        reach_en[c] = r
        da = every & ~r
        for d in cond.successors(c):
            da |= dead_any[d]
        dead_any[c] = da

    def tset(mask: int) -> TransitionSet:
        return frozenset(t for i, t in enumerate(net.transitions) if mask >> i & 1)

    cache: dict[int, tuple[TransitionSet, TransitionSet]] = {}
    out = []
    for u in range(len(g)):
        c = members[u]
        if c not in cache:
            cache[c] = (tset(every & ~reach_en[c]), tset(every & ~dead_any[c]))
        out.append(cache[c])
    return out


def find_saturated_node(
    g: ReachGraph,
    start: int = 0,
    table: list[tuple[TransitionSet, TransitionSet]] | None = None,
    require_dead: bool = True,
) -> int | None:
    """First node in BFS order from ``start`` where dead and live cover all transitions."""
    table = table if table is not None else liveness_table(g)
    every = frozenset(g.net.transitions)
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        dead, live = table[u]
        if dead | live == every and (dead or not require_dead):
            return u
        for _, v in g.succ[u]:
            if v not in seen:
                seen.add(v)
                queue.append(v)
    return None


def liveness_oracle(net: Net, m0: Marking, max_states: int = DEFAULT_MAX_STATES) -> Verdict:
    g = explore(net, m0, max_states)
    if not g.complete:
        return Verdict.INCONCLUSIVE
    return Verdict.LIVE if live_set(g, 0) == frozenset(net.transitions) else Verdict.NOT_LIVE
