"""Core graph types: immutable simple graphs, bipartitions, and cut accounting.

Vertices are dense integer indices 0..n-1.  Graphs are simple (no loops,
no parallel edges) and undirected; every other module builds on the three
types defined here.

Odd-n convention: a bisection means sides of size ceil(n/2) and floor(n/2),
and deterministic constructions put the extra vertex on side 1.
"""
from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass


class GraphParseError(ValueError):
    """Malformed graph input; carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class RebalanceError(RuntimeError):
    """Not enough low-degree vertices on the larger side; raise the cap."""


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph with adjacency lists and degrees."""

    n: int
    edges: tuple[tuple[int, int], ...]
    adjacency: tuple[tuple[int, ...], ...]

    @staticmethod
    def from_edges(n: int, edges) -> Graph:
        """Build a graph, rejecting self-loops, duplicates, and bad indices."""
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        seen: set[tuple[int, int]] = set()
        norm: list[tuple[int, int]] = []
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"vertex index out of range in edge ({u}, {v})")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge ({e[0]}, {e[1]})")
            seen.add(e)
            norm.append(e)
        norm.sort()
        adj: list[list[int]] = [[] for _ in range(n)]
        for u, v in norm:
            adj[u].append(v)
            adj[v].append(u)
        return Graph(
            n=n,
            edges=tuple(norm),
            adjacency=tuple(tuple(sorted(a)) for a in adj),
        )

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def degrees(self) -> list[int]:
        return [len(a) for a in self.adjacency]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adjacency), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adjacency), default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return v in self._adj_sets()[u]

    def _adj_sets(self) -> tuple[frozenset, ...]:
        # cached lazily on first use; object.__setattr__ because frozen
        cached = self.__dict__.get("_adj_sets_cache")
        if cached is None:
            cached = tuple(frozenset(a) for a in self.adjacency)
            object.__setattr__(self, "_adj_sets_cache", cached)
        return cached

    def neighbor_set(self, v: int) -> frozenset:
        return self._adj_sets()[v]

    def components(self) -> list[tuple[int, ...]]:
        """Connected components as sorted vertex tuples, sorted by minimum vertex."""
        seen = [False] * self.n
        comps: list[tuple[int, ...]] = []
        for start in range(self.n):
            if seen[start]:
                continue
            stack = [start]
            seen[start] = True
            comp = []
            while stack:
                v = stack.pop()
                comp.append(v)
                for u in self.adjacency[v]:
                    if not seen[u]:
                        seen[u] = True
                        stack.append(u)
            comps.append(tuple(sorted(comp)))
        return comps

    def induced(self, vertices) -> tuple[Graph, list[int]]:
        """Induced subgraph on `vertices`; returns (subgraph, old-index list).

        Subgraph vertex i corresponds to old index `mapping[i]` (sorted order).
        """
        mapping = sorted(vertices)
        index = {v: i for i, v in enumerate(mapping)}
        vs = set(mapping)
        sub_edges = [
            (index[u], index[v]) for (u, v) in self.edges if u in vs and v in vs
        ]
        return Graph.from_edges(len(mapping), sub_edges), mapping

    def edge_list_text(self) -> str:
        lines = [f"{self.n} {self.m}"]
        lines.extend(f"{u} {v}" for u, v in self.edges)
        return "\n".join(lines) + "\n"

    def content_hash(self) -> str:
        """Stable hash of the canonical edge list (used in CLI reports)."""
        return hashlib.sha256(self.edge_list_text().encode()).hexdigest()[:16]


@dataclass(frozen=True)
class Bipartition:
    """Two-coloring of vertices; side labels are 1 and 2."""

    side: tuple[int, ...]

    def __post_init__(self):
        for v, s in enumerate(self.side):
            if s not in (1, 2):
                raise ValueError(f"vertex {v} has invalid side label {s}")

    @staticmethod
    def from_side1(n: int, side1) -> Bipartition:
        s1 = set(side1)
        return Bipartition(tuple(1 if v in s1 else 2 for v in range(n)))

    def side_vertices(self, label: int) -> list[int]:
        return [v for v, s in enumerate(self.side) if s == label]

    def sizes(self) -> tuple[int, int]:
        s1 = sum(1 for s in self.side if s == 1)
        return s1, len(self.side) - s1

    def swapped(self) -> Bipartition:
        return Bipartition(tuple(3 - s for s in self.side))

    def to_json(self) -> list[int]:
        return list(self.side)


@dataclass(frozen=True)
class CutStats:
    """Edge counts of a bipartition: across, inside each side, side sizes."""

    crossing: int
    inside1: int
    inside2: int
    size1: int
    size2: int

    def to_json(self) -> dict:
        return {
            "crossing": self.crossing,
            "inside1": self.inside1,
            "inside2": self.inside2,
            "size1": self.size1,
            "size2": self.size2,
        }


def parse_graph(text: str) -> Graph:
    """Parse edge-list ("n m" header, 0-indexed) or DIMACS ("p edge", 1-indexed).

    Errors carry line numbers.  Self-loops and duplicate edges are rejected.
    """
    lines = text.splitlines()
    # skip DIMACS comments and blank lines when locating the header
    header_no = None
    for i, raw in enumerate(lines):
        s = raw.strip()
        if not s or s.startswith("c"):
            continue
        header_no = i
        break
    if header_no is None:
        raise GraphParseError(1, "empty input")

    header = lines[header_no].split()
    if header[0] == "p":
        return _parse_dimacs(lines, header_no)
    return _parse_edge_list(lines, header_no)


def _parse_edge_list(lines: list[str], header_no: int) -> Graph:
    header = lines[header_no].split()
    if len(header) != 2:
        raise GraphParseError(header_no + 1, "expected header 'n m'")
    try:
        n, m = int(header[0]), int(header[1])
    except ValueError:
        raise GraphParseError(header_no + 1, "expected integer 'n m'") from None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for i in range(header_no + 1, len(lines)):
        s = lines[i].strip()
        if not s:
            continue
        parts = s.split()
        if len(parts) != 2:
            raise GraphParseError(i + 1, f"expected 'u v', got {s!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(i + 1, f"non-integer vertex in {s!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(i + 1, f"vertex index out of range in ({u}, {v})")
        if u == v:
            raise GraphParseError(i + 1, f"self-loop at vertex {u}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise GraphParseError(i + 1, f"duplicate edge ({e[0]}, {e[1]})")
        seen.add(e)
        edges.append(e)
    if len(edges) != m:
        raise GraphParseError(
            len(lines), f"header declared {m} edges but found {len(edges)}"
        )
    return Graph.from_edges(n, edges)


def _parse_dimacs(lines: list[str], header_no: int) -> Graph:
    header = lines[header_no].split()
    if len(header) != 4 or header[1] not in ("edge", "col"):
        raise GraphParseError(header_no + 1, "expected header 'p edge n m'")
    try:
        n, m = int(header[2]), int(header[3])
    except ValueError:
        raise GraphParseError(header_no + 1, "expected integer 'p edge n m'") from None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for i in range(header_no + 1, len(lines)):
        s = lines[i].strip()
        if not s or s.startswith("c"):
            continue
        parts = s.split()
        if parts[0] != "e" or len(parts) != 3:
            raise GraphParseError(i + 1, f"expected 'e u v', got {s!r}")
        try:
            u, v = int(parts[1]) - 1, int(parts[2]) - 1
        except ValueError:
            raise GraphParseError(i + 1, f"non-integer vertex in {s!r}") from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(i + 1, f"vertex index out of range in {s!r}")
        if u == v:
            raise GraphParseError(i + 1, f"self-loop at vertex {u + 1}")
        e = (u, v) if u < v else (v, u)
        if e in seen:
            raise GraphParseError(i + 1, f"duplicate edge ({e[0] + 1}, {e[1] + 1})")
        seen.add(e)
        edges.append(e)
    if len(edges) != m:
        raise GraphParseError(
            len(lines), f"header declared {m} edges but found {len(edges)}"
        )
    return Graph.from_edges(n, edges)


def cut_stats(g: Graph, part: Bipartition) -> CutStats:
    """Count crossing and internal edges of a bipartition.  Pure function."""
    if len(part.side) != g.n:
        raise ValueError(f"partition covers {len(part.side)} vertices, graph has {g.n}")
    crossing = inside1 = inside2 = 0
    side = part.side
    for u, v in g.edges:
        if side[u] != side[v]:
            crossing += 1
        elif side[u] == 1:
            inside1 += 1
        else:
            inside2 += 1
    size1, size2 = part.sizes()
    return CutStats(crossing, inside1, inside2, size1, size2)


def is_bisection(g: Graph, part: Bipartition) -> bool:
    """True iff the side sizes differ by at most one."""
    if len(part.side) != g.n:
        raise ValueError(f"partition covers {len(part.side)} vertices, graph has {g.n}")
    s1, s2 = part.sizes()
    return abs(s1 - s2) <= 1


def rebalance_low_degree(
    g: Graph, part: Bipartition, degree_cap: int, frozen=()
) -> Bipartition:
    """Equalize side sizes by moving degree <= cap vertices from the larger side.

    Each move shifts exactly one low-degree vertex, so each e(V_i) changes by
    at most `degree_cap` per move.  Vertices in `frozen` never move (used to
    honor a preset split).  Raises RebalanceError when the larger side runs
    out of movable low-degree vertices (caller should raise the cap).
    """
    side = list(part.side)
    n = g.n
    frozen_set = set(frozen)
    s1 = sum(1 for s in side if s == 1)
    while abs(2 * s1 - n) > 1:
        larger = 1 if 2 * s1 > n else 2
        candidates = [
            (g.degree(v), v)
            for v in range(n)
            if side[v] == larger and g.degree(v) <= degree_cap
            and v not in frozen_set
        ]
        if not candidates:
            raise RebalanceError(
                f"no movable vertex of degree <= {degree_cap} left on side {larger}"
            )
        _, v = min(candidates)
        side[v] = 3 - larger
        s1 += 1 if larger == 2 else -1
    return Bipartition(tuple(side))


def rebalance_escalating(
    g: Graph, part: Bipartition, degree_cap: int, frozen=()
) -> tuple[Bipartition, int]:
    """rebalance_low_degree with cap doubling on failure; returns (part, cap used)."""
    cap = max(1, degree_cap)
    while True:
        try:
            return rebalance_low_degree(g, part, cap, frozen=frozen), cap
        except RebalanceError:
            if cap > g.n:
                raise
            cap *= 2


def dumps_canonical(obj) -> str:
    """Canonical JSON used by every report: sorted keys, fixed separators."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
