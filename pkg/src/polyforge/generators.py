"""Standard graph families.  All results have edge ids ``0..m-1``."""

from __future__ import annotations

from itertools import combinations
from typing import Sequence

from .multigraph import Multigraph

__all__ = [
    "complete",
    "cycle",
    "path",
    "empty",
    "star",
    "complete_multipartite",
    "generalized_petersen",
    "join",
    "disjoint_union",
    "complement",
    "banana",
    "wheel",
]


def complete(n: int) -> Multigraph:
    return Multigraph.from_pairs(n, combinations(range(n), 2))


def cycle(n: int) -> Multigraph:
    """C_n; ``n = 1`` is a loop and ``n = 2`` a double edge."""
    if n < 1:
        raise ValueError("cycle needs n >= 1")
    return Multigraph.from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Multigraph:
    """Path on ``n`` vertices."""
    return Multigraph.from_pairs(n, [(i, i + 1) for i in range(n - 1)])


def empty(n: int) -> Multigraph:
    return Multigraph(n, ())


def star(leaves: int) -> Multigraph:
    return Multigraph.from_pairs(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def banana(k: int) -> Multigraph:
    """L_k: two vertices joined by ``k`` parallel edges."""
    return Multigraph.from_pairs(2, [(0, 1)] * k)


def complete_multipartite(parts: Sequence[int]) -> Multigraph:
    offs, starts = 0, []
    for p in parts:
        if p < 0:
            raise ValueError("negative part size")
        starts.append(offs)
        offs += p
    pairs = []
    for i, j in combinations(range(len(parts)), 2):
        for a in range(starts[i], starts[i] + parts[i]):
            for b in range(starts[j], starts[j] + parts[j]):
                pairs.append((a, b))
    return Multigraph.from_pairs(offs, sorted(pairs))


def generalized_petersen(n: int, k: int) -> Multigraph:
    """G(n, k): u_i = i, v_i = n + i; spokes, outer cycle, inner star polygon."""
    if n < 3 or not 1 <= k <= (n - 1) // 2:
        raise ValueError("generalized Petersen graph needs n >= 3 and 1 <= k <= (n-1)/2")
    pairs = []
    for i in range(n):
        pairs.append((i, n + i))
        pairs.append((i, (i + 1) % n))
        pairs.append((n + i, n + (i + k) % n))
    return Multigraph.from_pairs(2 * n, pairs)


def disjoint_union(g: Multigraph, h: Multigraph) -> Multigraph:
    pairs = g.pairs() + [(u + g.n, v + g.n) for u, v in h.pairs()]
    return Multigraph.from_pairs(g.n + h.n, pairs)


def join(g: Multigraph, h: Multigraph) -> Multigraph:
    """Disjoint union plus every edge between the two vertex sets."""
    pairs = g.pairs() + [(u + g.n, v + g.n) for u, v in h.pairs()]
    pairs += [(a, g.n + b) for a in range(g.n) for b in range(h.n)]
    return Multigraph.from_pairs(g.n + h.n, pairs)


def wheel(spokes: int) -> Multigraph:
    return join(empty(1), cycle(spokes))


def complement(g: Multigraph) -> Multigraph:
    if not g.is_simple:
        raise ValueError("complement needs a simple graph")
    present = set(g.pairs())
    return Multigraph.from_pairs(
        g.n, [p for p in combinations(range(g.n), 2) if p not in present]
    )
