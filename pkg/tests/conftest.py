"""Shared graph factories for the test suite."""
from __future__ import annotations

import random

import pytest

from graphbisect.core import Graph
from graphbisect.generators import (
    complete,
    complete_bipartite,
    cycle,
    path,
    petersen,
    star,
    triangles,
)


def bowtie() -> Graph:
    """Two triangles glued at one vertex (vertex 2)."""
    return Graph.from_edges(5, [(0, 1), (0, 2), (1, 2), (2, 3), (2, 4), (3, 4)])


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return Graph.from_edges(n, edges)


def random_connected_graph(n: int, rng: random.Random, extra: int | None = None) -> Graph:
    """Random spanning tree plus extra edges; always connected."""
    edges: set[tuple[int, int]] = set()
    perm = list(range(n))
    rng.shuffle(perm)
    for i in range(1, n):
        a, b = perm[rng.randrange(i)], perm[i]
        edges.add((min(a, b), max(a, b)))
    budget = rng.randint(0, n) if extra is None else extra
    for _ in range(budget):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, sorted(edges))


def random_isolated_free_graph(n: int, rng: random.Random) -> Graph:
    """Random graph with minimum degree >= 1 (a perfect-ish matching base)."""
    edges: set[tuple[int, int]] = set()
    perm = list(range(n))
    rng.shuffle(perm)
    for i in range(0, n - 1, 2):
        a, b = perm[i], perm[i + 1]
        edges.add((min(a, b), max(a, b)))
    if n % 2:
        a, b = perm[-1], perm[0]
        edges.add((min(a, b), max(a, b)))
    for _ in range(rng.randint(0, 2 * n)):
        u, v = rng.randrange(n), rng.randrange(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, sorted(edges))


def small_named_corpus() -> list[tuple[str, Graph]]:
    out = [
        ("K1", complete(1)),
        ("K2", complete(2)),
        ("K3", complete(3)),
        ("K4", complete(4)),
        ("K5", complete(5)),
        ("K6", complete(6)),
        ("P3", path(3)),
        ("P4", path(4)),
        ("C4", cycle(4)),
        ("C5", cycle(5)),
        ("C6", cycle(6)),
        ("C7", cycle(7)),
        ("star6", star(6)),
        ("star9", star(9)),
        ("2K3", triangles(2)),
        ("3K3", triangles(3)),
        ("bowtie", bowtie()),
        ("petersen", petersen()),
        ("K23", complete_bipartite(2, 3)),
        ("K24", complete_bipartite(2, 4)),
        ("K33", complete_bipartite(3, 3)),
        ("empty5", Graph.from_edges(5, [])),
    ]
    return out


@pytest.fixture(scope="session")
def named_corpus():
    return small_named_corpus()


@pytest.fixture(scope="session")
def mixed_corpus():
    """Named graphs plus seeded random graphs, n <= 12 (oracle scale)."""
    rng = random.Random(20240901)
    out = [g for _, g in small_named_corpus() if g.n <= 12]
    for _ in range(120):
        n = rng.randint(1, 12)
        out.append(random_graph(n, rng.uniform(0.1, 0.9), rng))
    for _ in range(40):
        n = rng.randint(2, 12)
        out.append(random_connected_graph(n, rng))
    return out
