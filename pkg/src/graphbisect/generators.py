"""Instance generators: extremal families and random benchmark graphs.

Family 1: disjoint cliques K_delta (x copies) and K_{delta+1} (y copies, y
odd) plus one dominating vertex.  Family 2: the complete bipartite graph
K_{delta+1, n-delta-1}.  Both meet the judicious floor
(delta+2)/(4(delta+1)) m - (delta+2)/4 asymptotically.

Generator specs parse from CLI strings like "family1:delta=2,x=4,y=3".
"""
from __future__ import annotations

import random
from dataclasses import dataclass

from .core import Graph

FAMILIES = (
    "triangles",
    "star",
    "path",
    "cycle",
    "complete",
    "complete_bipartite",
    "family1",
    "family2",
    "petersen",
    "random_min_degree",
    "random_max_degree",
    "random_regular",
    "empty",
)


@dataclass(frozen=True)
class GeneratorSpec:
    family: str
    params: dict

    @staticmethod
    def parse(text: str) -> GeneratorSpec:
        """Parse "family:key=val,key=val" (values are integers)."""
        if ":" in text:
            family, rest = text.split(":", 1)
        else:
            family, rest = text, ""
        family = family.strip()
        if family not in FAMILIES:
            raise ValueError(
                f"unknown family {family!r}; known: {', '.join(FAMILIES)}"
            )
        params: dict = {}
        if rest.strip():
            for item in rest.split(","):
                if "=" not in item:
                    raise ValueError(f"malformed parameter {item!r}")
                k, v = item.split("=", 1)
                params[k.strip()] = int(v)
        return GeneratorSpec(family=family, params=params)

    def to_string(self) -> str:
        if not self.params:
            return self.family
        inner = ",".join(f"{k}={v}" for k, v in sorted(self.params.items()))
        return f"{self.family}:{inner}"


def generate(spec: GeneratorSpec) -> Graph:
    fn = _DISPATCH.get(spec.family)
    if fn is None:
        raise ValueError(f"unknown family {spec.family!r}")
    g = fn(**spec.params)
    _post_verify(spec, g)
    return g


def _post_verify(spec: GeneratorSpec, g: Graph) -> None:
    if spec.family == "random_min_degree":
        delta = spec.params.get("delta", 2)
        if g.min_degree() < delta:
            raise AssertionError(
                f"generator defect: min degree {g.min_degree()} < {delta}"
            )
    if spec.family == "random_regular":
        r = spec.params["r"]
        if any(d != r for d in g.degrees()):
            raise AssertionError("generator defect: graph is not regular")
    if spec.family == "random_max_degree":
        r = spec.params["r"]
        if g.max_degree() > r:
            raise AssertionError("generator defect: max degree exceeded")


def triangles(t: int) -> Graph:
    edges = []
    for i in range(t):
        b = 3 * i
        edges += [(b, b + 1), (b, b + 2), (b + 1, b + 2)]
    return Graph.from_edges(3 * t, edges)


def star(n: int) -> Graph:
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(
        n, [(i, j) for i in range(n) for j in range(i + 1, n)]
    )


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(
        a + b, [(i, a + j) for i in range(a) for j in range(b)]
    )


def empty(n: int) -> Graph:
    return Graph.from_edges(n, [])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)


def family1(delta: int, x: int, y: int) -> Graph:
    """x copies of K_delta, y copies of K_{delta+1} (y odd), one dominating
    vertex adjacent to everything.  n = delta x + (delta+1) y + 1 is even."""
    if y % 2 != 1:
        raise ValueError("family1 requires odd y (so that n is even)")
    if delta < 1 or x < 0 or y < 0:
        raise ValueError("family1 parameters out of range")
    edges = []
    base = 0
    for _ in range(x):
        for i in range(delta):
            for j in range(i + 1, delta):
                edges.append((base + i, base + j))
        base += delta
    for _ in range(y):
        for i in range(delta + 1):
            for j in range(i + 1, delta + 1):
                edges.append((base + i, base + j))
        base += delta + 1
    v0 = base
    edges.extend((v0, v) for v in range(v0))
    return Graph.from_edges(v0 + 1, edges)


def family2(delta: int, n: int) -> Graph:
    """K_{delta+1, n-delta-1}; requires even n with both sides nonempty."""
    if n % 2 != 0:
        raise ValueError("family2 requires even n")
    if n < 2 * (delta + 1):
        raise ValueError("family2 requires n >= 2(delta+1)")
    return complete_bipartite(delta + 1, n - delta - 1)


def random_min_degree(n: int, m: int, delta: int = 2, seed: int = 0) -> Graph:
    """Random graph with minimum degree >= delta and exactly m edges.

    Base: ceil(delta/2) random Hamilton cycles (resampled edges on
    collision), patched to the minimum degree, then random extra edges up
    to m.  Verified post-generation.
    """
    if n < delta + 1:
        raise ValueError("need n > delta")
    rng = random.Random(seed)
    edge_set: set[tuple[int, int]] = set()

    def add(u: int, v: int) -> bool:
        if u == v:
            return False
        e = (u, v) if u < v else (v, u)
        if e in edge_set:
            return False
        edge_set.add(e)
        return True

    for _ in range((delta + 1) // 2):
        perm = list(range(n))
        rng.shuffle(perm)
        for i in range(n):
            add(perm[i], perm[(i + 1) % n])
    deg = [0] * n
    for u, v in edge_set:
        deg[u] += 1
        deg[v] += 1
    # patch stragglers (collisions may have dropped a few edges)
    for v in range(n):
        guard = 0
        while deg[v] < delta:
            u = rng.randrange(n)
            if u != v and add(v, u):
                deg[v] += 1
                deg[u] += 1
            guard += 1
            if guard > 100 * n:
                raise AssertionError("degree patching stalled")
    if m < len(edge_set):
        raise ValueError(
            f"m={m} below the {len(edge_set)} edges required for delta={delta}"
        )
    max_edges = n * (n - 1) // 2
    if m > max_edges:
        raise ValueError(f"m={m} exceeds simple-graph maximum {max_edges}")
    while len(edge_set) < m:
        add(rng.randrange(n), rng.randrange(n))
    return Graph.from_edges(n, sorted(edge_set))


def random_max_degree(n: int, r: int, m: int | None = None, seed: int = 0) -> Graph:
    """Random graph with max degree <= r (about m edges when m is given)."""
    rng = random.Random(seed)
    target = m if m is not None else (n * r) // 3
    edge_set: set[tuple[int, int]] = set()
    deg = [0] * n
    attempts = 0
    while len(edge_set) < target and attempts < 50 * target + 100:
        attempts += 1
        u = rng.randrange(n)
        v = rng.randrange(n)
        if u == v or deg[u] >= r or deg[v] >= r:
            continue
        e = (u, v) if u < v else (v, u)
        if e in edge_set:
            continue
        edge_set.add(e)
        deg[u] += 1
        deg[v] += 1
    return Graph.from_edges(n, sorted(edge_set))


def random_regular(n: int, r: int, seed: int = 0) -> Graph:
    """Random r-regular graph by pairing-model resampling."""
    if (n * r) % 2 or r >= n:
        raise ValueError("need n*r even and r < n")
    rng = random.Random(seed)
    for _ in range(2000):
        stubs = [v for v in range(n) for _ in range(r)]
        rng.shuffle(stubs)
        edge_set: set[tuple[int, int]] = set()
        ok = True
        for i in range(0, len(stubs), 2):
            u, v = stubs[i], stubs[i + 1]
            if u == v:
                ok = False
                break
            e = (u, v) if u < v else (v, u)
            if e in edge_set:
                ok = False
                break
            edge_set.add(e)
        if ok:
            return Graph.from_edges(n, sorted(edge_set))
    raise AssertionError("regular-graph sampling failed to converge")


_DISPATCH = {
    "triangles": triangles,
    "star": star,
    "path": path,
    "cycle": cycle,
    "complete": complete,
    "complete_bipartite": complete_bipartite,
    "family1": family1,
    "family2": family2,
    "petersen": petersen,
    "random_min_degree": random_min_degree,
    "random_max_degree": random_max_degree,
    "random_regular": random_regular,
    "empty": empty,
}
