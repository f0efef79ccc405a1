from __future__ import annotations

import random

import pytest

from polyforge.canon import connected_graphs
from polyforge.multigraph import Multigraph


def random_multigraph(rng: random.Random, max_n: int = 5, max_m: int = 8, loops: bool = True) -> Multigraph:
    n = rng.randint(1, max_n)
    m = rng.randint(0, max_m)
    pairs = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v and not loops:
            continue
        pairs.append((u, v))
    return Multigraph.from_pairs(n, pairs)


@pytest.fixture(scope="session")
def corpus5() -> list[Multigraph]:
    """Connected simple graphs on 1..5 vertices (34 graphs)."""
    return [g for n in range(1, 6) for g in connected_graphs(n)]


@pytest.fixture(scope="session")
def corpus6(corpus5) -> list[Multigraph]:
    return corpus5 + connected_graphs(6)
