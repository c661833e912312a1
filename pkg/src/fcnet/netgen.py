"""Seeded generator of free-choice nets without isolated places.

Randomness comes from SplitMix64 (Steele, Lea & Flood), chosen because
it is a few lines in any language.  Derived draws:

* ``below(n)``: rejection sampling on the raw 64-bit output, rejecting
  values >= ``2**64 - (2**64 % n)``, then ``x % n``.
* ``unit()``: ``(x >> 11) * 2**-53``.
* ``chance(p)``: ``unit() < p``.

Draw order in :func:`generate`:

1. Fisher-Yates shuffle of the place indices (``i`` from ``n-1`` down to
   1, swap with ``below(i + 1)``).  The first ``n_clusters`` shuffled
   places seed clusters ``0..k-1``; every later one joins cluster
   ``below(k)``.
2. Transitions ``0..k-1`` go to clusters ``0..k-1``; each later one to
   ``below(k)``.
3. For each transition in order, for each place in order: ``chance(density)``
   puts the place in the transition's postset.
4. Repair, places in order: a place without input arcs gets one from
   ``pool[below(len(pool))]``, where ``pool`` lists (ascending) the
   transitions currently having the fewest output arcs.  Since every place already sits in some
   cluster preset, no place ends up isolated.
5. For each place in order: ``below(max_tokens + 1)`` initial tokens.

Places are named ``p0..``, transitions ``t0..``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .net import Marking, Net

_MASK = (1 << 64) - 1


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("n must be positive")
        limit = (1 << 64) - (1 << 64) % n
        while True:
            x = self.next()
            if x < limit:
                return x % n

    def unit(self) -> float:
        return (self.next() >> 11) * 2.0**-53

    def chance(self, p: float) -> bool:
        return self.unit() < p


@dataclass(frozen=True)
class GenParams:
    seed: int = 0
    n_places: int = 6
    n_clusters: int = 4
    n_transitions: int = 6
    max_tokens: int = 2
    density: float = 0.25


def generate(params: GenParams) -> tuple[Net, Marking]:
    p = params
    if p.n_places < 1:
        raise ValueError("n_places must be at least 1")
    if not 1 <= p.n_clusters <= p.n_transitions:
        raise ValueError("need 1 <= n_clusters <= n_transitions")
    if p.n_clusters > p.n_places:
        raise ValueError("n_clusters cannot exceed n_places (cluster presets are disjoint and nonempty)")
    if p.max_tokens < 0:
        raise ValueError("max_tokens must be nonnegative")
    if not 0.0 <= p.density <= 1.0:
        raise ValueError("density must lie in [0, 1]")

    rng = SplitMix64(p.seed)
    n, k, nt = p.n_places, p.n_clusters, p.n_transitions
    places = [f"p{i}" for i in range(n)]
    transitions = [f"t{i}" for i in range(nt)]

    order = list(range(n))
    for i in range(n - 1, 0, -1):
        j = rng.below(i + 1)
        order[i], order[j] = order[j], order[i]
    cluster_places: list[list[int]] = [[] for _ in range(k)]
    for pos, pi in enumerate(order):
        c = pos if pos < k else rng.below(k)
        cluster_places[c].append(pi)

    cluster_of = [i if i < k else rng.below(k) for i in range(nt)]

    pre = [sorted(cluster_places[cluster_of[ti]]) for ti in range(nt)]
    post = [[pi for pi in range(n) if rng.chance(p.density)] for _ in range(nt)]

    fed = set()
    for ti in range(nt):
        fed.update(post[ti])
    for pi in range(n):
        if pi not in fed:
            fewest = min(len(o) for o in post)
            pool = [ti for ti in range(nt) if len(post[ti]) == fewest]
            post[pool[rng.below(len(pool))]].append(pi)

    m0 = tuple(rng.below(p.max_tokens + 1) for _ in range(n))
    net = Net.from_transitions(
        places,
        {transitions[ti]: ([places[i] for i in pre[ti]], [places[i] for i in sorted(post[ti])]) for ti in range(nt)},
    )
    return net, m0
