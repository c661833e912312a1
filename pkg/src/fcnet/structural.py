"""Traps, siphons and their greatest fixpoints.

``brute_force_*`` enumerate every subset of places and exist as testing
oracles for the fixpoint and branch-and-bound routines.
"""

from __future__ import annotations

from typing import Iterable

from .errors import ResourceLimitError, StructuralError
from .net import Net, PlaceSet, postset, preset

DEFAULT_WORK_LIMIT = 10**6
BRUTE_FORCE_CAP = 16


def _places(net: Net, s: Iterable[str]) -> PlaceSet:
    s = frozenset(s)
    for p in s:
        if p not in net.place_index:
            raise StructuralError(f"unknown place {p!r}")
    return s


def is_trap(net: Net, q: Iterable[str]) -> bool:
    q = _places(net, q)
    return postset(net, q) <= preset(net, q)


def is_siphon(net: Net, s: Iterable[str]) -> bool:
    s = _places(net, s)
    return preset(net, s) <= postset(net, s)


def maximal_trap_within(net: Net, s: Iterable[str]) -> PlaceSet:
    """Union of all traps contained in ``s``.

    Greatest fixpoint: a place is dropped while one of its output
    transitions puts no token back into the remaining set.
    """
    r = set(_places(net, s))
    changed = True
    while changed:
        changed = False
        for p in net.place_order(r):
            if any(not (net.post(t) & r) for t in net.post(p)):
                r.discard(p)
                changed = True
                break
    return frozenset(r)


def maximal_siphon_within(net: Net, s: Iterable[str]) -> PlaceSet:
    """Union of all siphons contained in ``s`` (dual of :func:`maximal_trap_within`)."""
    r = set(_places(net, s))
    changed = True
    while changed:
        changed = False
        for p in net.place_order(r):
            if any(not (net.pre(t) & r) for t in net.pre(p)):
                r.discard(p)
                changed = True
                break
    return frozenset(r)


def minimal_siphons(net: Net, work_limit: int = DEFAULT_WORK_LIMIT) -> list[PlaceSet]:
    """All inclusion-minimal nonempty siphons, in canonical order.

    For each place ``p`` the search looks for siphons containing ``p`` and
    no earlier place.  A candidate set grows by covering its lowest
    uncovered input transition with one of that transition's input
    places; sibling branches exclude the places tried before them.
    ``work_limit`` bounds the number of branch nodes visited.
    """
    order = net.place_index
    found: list[PlaceSet] = []
    nodes = 0

    def uncovered(r: set[str]) -> str | None:
        out = postset(net, r)
        for t in net.transition_order(preset(net, r)):
            if t not in out:
                return t
        return None

    for p in net.places:
        excluded = {q for q in net.places if order[q] < order[p]}
        stack = [(frozenset([p]), frozenset(excluded))]
        while stack:
            nodes += 1
            if nodes > work_limit:
                raise ResourceLimitError("siphon enumeration work", work_limit)
            r, ex = stack.pop()
            if any(f <= r for f in found):
                continue
            t = uncovered(set(r))
            if t is None:
                found = [f for f in found if not r <= f]
                found.append(r)
                continue
            choices = [q for q in net.place_order(net.pre(t)) if q not in ex]
            branches = []
            for k, q in enumerate(choices):
                branches.append((r | {q}, ex | set(choices[:k])))
            # explore lower-index choices first
            stack.extend(reversed(branches))
    found = [f for f in found if not any(g < f for g in found)]
    return sorted(set(found), key=net.canonical_key)


# -- brute-force oracles -----------------------------------------------------


def _subset_unions(net: Net) -> tuple[list[int], list[int]]:
    """Bitmask tables: pre/post transition sets for every subset of places."""
    n = len(net.places)
    tbit = {t: 1 << i for i, t in enumerate(net.transitions)}
    pre_of = [sum(tbit[t] for t in net.pre(p)) for p in net.places]
    post_of = [sum(tbit[t] for t in net.post(p)) for p in net.places]
    pre_u = [0] * (1 << n)
    post_u = [0] * (1 << n)
    for mask in range(1, 1 << n):
        low = mask & -mask
        i = low.bit_length() - 1
        rest = mask ^ low
        pre_u[mask] = pre_u[rest] | pre_of[i]
        post_u[mask] = post_u[rest] | post_of[i]
    return pre_u, post_u


def _check_cap(net: Net, cap: int) -> None:
    if len(net.places) > cap:
        raise ResourceLimitError("brute-force place count", cap)


def _mask_to_set(net: Net, mask: int) -> PlaceSet:
    return frozenset(p for i, p in enumerate(net.places) if mask >> i & 1)


def _masks(net: Net, kind: str, cap: int) -> list[int]:
    _check_cap(net, cap)
    pre_u, post_u = _subset_unions(net)
    if kind == "trap":
        return [m for m in range(len(pre_u)) if post_u[m] & ~pre_u[m] == 0]
    return [m for m in range(len(pre_u)) if pre_u[m] & ~post_u[m] == 0]


def brute_force_traps(net: Net, cap: int = BRUTE_FORCE_CAP) -> list[PlaceSet]:
    """Every trap (the empty set included), canonical order."""
    sets = [_mask_to_set(net, m) for m in _masks(net, "trap", cap)]
    return sorted(sets, key=net.canonical_key)


def brute_force_siphons(net: Net, cap: int = BRUTE_FORCE_CAP) -> list[PlaceSet]:
    """Every siphon (the empty set included), canonical order."""
    sets = [_mask_to_set(net, m) for m in _masks(net, "siphon", cap)]
    return sorted(sets, key=net.canonical_key)


def brute_force_minimal_siphons(net: Net, cap: int = BRUTE_FORCE_CAP) -> list[PlaceSet]:
    """Inclusion-minimal nonempty siphons by exhaustive subset search."""
    n = len(net.places)
    siphon = [False] * (1 << n)
    for m in _masks(net, "siphon", cap):
        siphon[m] = m != 0
    # below[m]: some nonempty siphon is a subset of m
    below = siphon[:]
    for mask in range(1, 1 << n):
        if not below[mask]:
            below[mask] = any(below[mask & ~(1 << i)] for i in range(n) if mask >> i & 1)
    minimal = [
        m for m in range(1, 1 << n)
        if siphon[m] and not any(below[m & ~(1 << i)] for i in range(n) if m >> i & 1)
    ]
    return sorted((_mask_to_set(net, m) for m in minimal), key=net.canonical_key)


def brute_force_maximal_trap(net: Net, s: Iterable[str], cap: int = BRUTE_FORCE_CAP) -> PlaceSet:
    """Union of all brute-forced traps inside ``s``."""
    s = _places(net, s)
    out: set[str] = set()
    for q in brute_force_traps(net, cap):
        if q <= s:
            out |= q
    return frozenset(out)
