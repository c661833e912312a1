"""Place/transition nets with unweighted arcs, markings and firing.

A marking is a plain tuple of token counts aligned with ``Net.places``.
Place and transition sets are frozensets of ids; anything that reports
them back to a user orders them by declaration index.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from .errors import ContractError, FiringError, StructuralError, TokenOverflowError

Marking = tuple[int, ...]
PlaceSet = frozenset[str]
TransitionSet = frozenset[str]

# Token counts are kept within a signed 64-bit machine word.
MAX_TOKENS = 2**63 - 1


class Net:
    """Immutable net ``(places, transitions, flow)``.

    ``flow`` holds ``(place, transition)`` and ``(transition, place)`` pairs.
    Every arc has weight one, so listing the same pair twice is an error.
    """

    __slots__ = (
        "places",
        "transitions",
        "flow",
        "_pre",
        "_post",
        "place_index",
        "transition_index",
        "_pre_idx",
        "_delta",
    )

    def __init__(
        self,
        places: Sequence[str],
        transitions: Sequence[str],
        flow: Iterable[tuple[str, str]],
    ):
        places = tuple(places)
        transitions = tuple(transitions)
        place_index = {p: i for i, p in enumerate(places)}
        transition_index = {t: i for i, t in enumerate(transitions)}
        if len(place_index) != len(places):
            raise ContractError("duplicate place id")
        if len(transition_index) != len(transitions):
            raise ContractError("duplicate transition id")
        shared = place_index.keys() & transition_index.keys()
        if shared:
            raise ContractError(f"ids used as place and transition: {sorted(shared)}")

        pre: dict[str, set[str]] = {x: set() for x in places + transitions}
        post: dict[str, set[str]] = {x: set() for x in places + transitions}
        arcs = set()
        for src, dst in flow:
            if (src, dst) in arcs:
                raise ContractError(f"duplicate arc {src} -> {dst}")
            ok = (src in place_index and dst in transition_index) or (
                src in transition_index and dst in place_index
            )
            if not ok:
                raise StructuralError(f"arc {src} -> {dst} does not join a place and a transition of the net")
            arcs.add((src, dst))
            post[src].add(dst)
            pre[dst].add(src)

        self.places = places
        self.transitions = transitions
        self.flow = frozenset(arcs)
        self.place_index = place_index
        self.transition_index = transition_index
        self._pre = {x: frozenset(s) for x, s in pre.items()}
        self._post = {x: frozenset(s) for x, s in post.items()}
        self._pre_idx = tuple(
            tuple(sorted(place_index[p] for p in self._pre[t])) for t in transitions
        )
        delta = []
        for t in transitions:
            d = {}
            for p in self._pre[t]:
                d[place_index[p]] = d.get(place_index[p], 0) - 1
            for p in self._post[t]:
                d[place_index[p]] = d.get(place_index[p], 0) + 1
            delta.append(tuple(sorted((i, c) for i, c in d.items() if c)))
        self._delta = tuple(delta)

    @classmethod
    def from_transitions(
        cls,
        places: Sequence[str],
        transitions: Mapping[str, tuple[Iterable[str], Iterable[str]]],
    ) -> "Net":
        """Build a net from ``{t: (preset, postset)}``."""
        flow = []
        for t, (ins, outs) in transitions.items():
            flow.extend((p, t) for p in ins)
            flow.extend((t, p) for p in outs)
        return cls(places, list(transitions), flow)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Net):
            return NotImplemented
        return (
            self.places == other.places
            and self.transitions == other.transitions
            and self.flow == other.flow
        )

    def __hash__(self) -> int:
        return hash((self.places, self.transitions, self.flow))

    def __repr__(self) -> str:
        return f"Net({len(self.places)} places, {len(self.transitions)} transitions, {len(self.flow)} arcs)"

    # -- node neighbourhoods -------------------------------------------------

    def pre(self, x: str) -> frozenset[str]:
        try:
            return self._pre[x]
        except KeyError:
            raise StructuralError(f"unknown node {x!r}") from None

    def post(self, x: str) -> frozenset[str]:
        try:
            return self._post[x]
        except KeyError:
            raise StructuralError(f"unknown node {x!r}") from None

    # -- ordering helpers ----------------------------------------------------

    def place_order(self, ps: Iterable[str]) -> list[str]:
        return sorted(ps, key=self.place_index.__getitem__)

    def transition_order(self, ts: Iterable[str]) -> list[str]:
        return sorted(ts, key=self.transition_index.__getitem__)

    def canonical_key(self, ps: Iterable[str]) -> tuple[int, ...]:
        """Sort key for place sets: sorted declaration indices, compared lexicographically."""
        return tuple(sorted(self.place_index[p] for p in ps))

    # -- markings ------------------------------------------------------------

    def marking(self, counts: Mapping[str, int] | None = None) -> Marking:
        counts = counts or {}
        unknown = set(counts) - self.place_index.keys()
        if unknown:
            raise StructuralError(f"unknown places in marking: {sorted(unknown)}")
        m = tuple(int(counts.get(p, 0)) for p in self.places)
        check_marking(self, m)
        return m

    def marking_dict(self, m: Marking) -> dict[str, int]:
        return dict(zip(self.places, m))

    def marked(self, m: Marking) -> PlaceSet:
        """Places holding at least one token."""
        return frozenset(p for p, c in zip(self.places, m) if c)


def check_marking(net: Net, m: Marking) -> None:
    if len(m) != len(net.places):
        raise ContractError(f"marking has {len(m)} entries, net has {len(net.places)} places")
    for c in m:
        if c < 0 or c > MAX_TOKENS:
            raise ContractError(f"token count {c} out of range")


def _node_kind(net: Net, xs: Iterable[str]) -> str | None:
    kinds = set()
    for x in xs:
        if x in net.place_index:
            kinds.add("place")
        elif x in net.transition_index:
            kinds.add("transition")
        else:
            raise StructuralError(f"unknown node {x!r}")
    if len(kinds) > 1:
        raise StructuralError("set mixes places and transitions")
    return kinds.pop() if kinds else None


def preset(net: Net, xs: Iterable[str]) -> frozenset[str]:
    """Union of the presets of all nodes in ``xs`` (all of one kind)."""
    xs = list(xs)
    _node_kind(net, xs)
    return frozenset().union(*(net.pre(x) for x in xs))


def postset(net: Net, xs: Iterable[str]) -> frozenset[str]:
    """Union of the postsets of all nodes in ``xs`` (all of one kind)."""
    xs = list(xs)
    _node_kind(net, xs)
    return frozenset().union(*(net.post(x) for x in xs))


def _tindex(net: Net, t: str) -> int:
    try:
        return net.transition_index[t]
    except KeyError:
        raise StructuralError(f"unknown transition {t!r}") from None


def enabled_index(net: Net, m: Marking, ti: int) -> bool:
    return all(m[i] for i in net._pre_idx[ti])


def successor_index(net: Net, m: Marking, ti: int) -> Marking | None:
    """Marking after firing transition number ``ti``, or None if it is disabled."""
    for i in net._pre_idx[ti]:
        if not m[i]:
            return None
    out = list(m)
    for i, c in net._delta[ti]:
        v = out[i] + c
        if v > MAX_TOKENS:
            raise TokenOverflowError(f"place {net.places[i]!r} would exceed {MAX_TOKENS} tokens")
        out[i] = v
    return tuple(out)


def is_enabled(net: Net, m: Marking, t: str) -> bool:
    check_marking(net, m)
    return enabled_index(net, m, _tindex(net, t))


def fire(net: Net, m: Marking, t: str) -> Marking:
    check_marking(net, m)
    out = successor_index(net, m, _tindex(net, t))
    if out is None:
        raise FiringError(t)
    return out


def fire_sequence(net: Net, m: Marking, sigma: Iterable[str]) -> Marking:
    """Fire ``sigma`` left to right; the failing step is reported by index."""
    check_marking(net, m)
    for k, t in enumerate(sigma):
        out = successor_index(net, m, _tindex(net, t))
        if out is None:
            raise FiringError(t, k)
        m = out
    return m


@dataclass(frozen=True)
class ValidationReport:
    free_choice_violations: list[tuple[str, str]] = field(default_factory=list)
    isolated_places: list[str] = field(default_factory=list)
    # Not a violation: transitions with an empty preset make the net unbounded.
    source_transitions: list[str] = field(default_factory=list)

    @property
    def admissible(self) -> bool:
        return not self.free_choice_violations and not self.isolated_places

    def describe(self) -> str:
        lines = []
        for t, u in self.free_choice_violations:
            lines.append(f"not free-choice: {t} and {u} share input places but have different presets")
        for p in self.isolated_places:
            lines.append(f"isolated place: {p}")
        for t in self.source_transitions:
            lines.append(f"warning: transition {t} has an empty preset (net is unbounded)")
        return "\n".join(lines) if lines else "admissible"


def validate(net: Net) -> ValidationReport:
    violations = []
    ts = net.transitions
    for i, t in enumerate(ts):
        for u in ts[i + 1 :]:
            a, b = net.pre(t), net.pre(u)
            if a & b and a != b:
                violations.append((t, u))
    isolated = [p for p in net.places if not net.pre(p) and not net.post(p)]
    sources = [t for t in ts if not net.pre(t)]
    return ValidationReport(violations, isolated, sources)
