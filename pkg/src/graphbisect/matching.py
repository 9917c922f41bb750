"""Maximum matching in general graphs, refined to maximize free vertices.

A vertex w left uncovered by a matching is *free* if it has a free neighbor:
a matched vertex v with w ~ v but w not adjacent to v's partner.  Among all
maximum matchings, one that maximizes the number of free uncovered vertices
leaves exactly one non-free uncovered vertex per tight component; that
correspondence is what the greedy pair-splitting and star decomposition
modules consume.

The refinement here is a guarded local search: candidate moves come from the
structural argument (swap a matching edge for a boundary edge of a tight set
and rematch inside, or rematch a grown set to expose a free vertex), and a
move is accepted only if a global recount confirms the non-free count
strictly dropped.  Termination is therefore unconditional; global optimality
is certified against the brute-force oracle for small n in the tests.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .core import Graph


@dataclass(frozen=True)
class Matching:
    """A matching: disjoint edges plus the uncovered vertex set W."""

    n: int
    pairs: tuple[tuple[int, int], ...]
    uncovered: tuple[int, ...]

    @staticmethod
    def from_partner_array(match: list[int]) -> Matching:
        n = len(match)
        pairs = sorted(
            (v, match[v]) for v in range(n) if match[v] > v
        )
        uncovered = tuple(v for v in range(n) if match[v] == -1)
        return Matching(n=n, pairs=tuple(pairs), uncovered=uncovered)

    def partner_array(self) -> list[int]:
        match = [-1] * self.n
        for u, v in self.pairs:
            match[u] = v
            match[v] = u
        return match

    @property
    def size(self) -> int:
        return len(self.pairs)

    def validate(self, g: Graph) -> None:
        seen: set[int] = set()
        edge_set = set(g.edges)
        for u, v in self.pairs:
            if (min(u, v), max(u, v)) not in edge_set:
                raise ValueError(f"matching pair ({u}, {v}) is not a graph edge")
            if u in seen or v in seen:
                raise ValueError(f"matching pairs overlap at ({u}, {v})")
            seen.update((u, v))
        if set(self.uncovered) != set(range(g.n)) - seen:
            raise ValueError("uncovered set does not match pairs")


@dataclass(frozen=True)
class FreeInfo:
    """Per-uncovered-vertex free neighbors and the derived free flags."""

    free_neighbors: dict[int, frozenset[int]]
    free_flag: dict[int, bool]


def maximum_matching(g: Graph) -> Matching:
    """Maximum-cardinality matching via blossom-contracting augmenting search.

    Deterministic: vertices and neighbors are scanned in increasing order.
    Certified against the brute-force oracle for n <= 16 in the tests.
    """
    match = _blossom_max_matching(g)
    return Matching.from_partner_array(match)


def _blossom_max_matching(g: Graph) -> list[int]:
    n = g.n
    match = [-1] * n
    # greedy seed keeps the number of augmenting searches small
    for v in range(n):
        if match[v] == -1:
            for u in g.adjacency[v]:
                if match[u] == -1:
                    match[v] = u
                    match[u] = v
                    break
    for v in range(n):
        if match[v] == -1:
            _augment_from(g, match, v)
    return match


def _augment_from(g: Graph, match: list[int], root: int) -> bool:
    n = g.n
    parent = [-1] * n
    base = list(range(n))
    in_queue = [False] * n
    in_queue[root] = True
    queue = deque([root])

    def lca(a: int, b: int) -> int:
        on_path = [False] * n
        x = a
        while True:
            x = base[x]
            on_path[x] = True
            if match[x] == -1:
                break
            x = parent[match[x]]
        y = b
        while True:
            y = base[y]
            if on_path[y]:
                return y
            y = parent[match[y]]

    def mark_path(v: int, b: int, child: int, flag: list[bool]) -> None:
        while base[v] != b:
            flag[base[v]] = True
            flag[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    while queue:
        v = queue.popleft()
        for to in g.adjacency[v]:
            if base[v] == base[to] or match[v] == to:
                continue
            if to == root or (match[to] != -1 and parent[match[to]] != -1):
                # odd cycle: contract the blossom
                cur_base = lca(v, to)
                flag = [False] * n
                mark_path(v, cur_base, to, flag)
                mark_path(to, cur_base, v, flag)
                for i in range(n):
                    if flag[base[i]]:
                        base[i] = cur_base
                        if not in_queue[i]:
                            in_queue[i] = True
                            queue.append(i)
            elif parent[to] == -1:
                parent[to] = v
                if match[to] == -1:
                    # augmenting path found; flip along parents
                    u = to
                    while u != -1:
                        pv = parent[u]
                        ppv = match[pv]
                        match[u] = pv
                        match[pv] = u
                        u = ppv
                    return True
                in_queue[match[to]] = True
                queue.append(match[to])
    return False


def perfect_matching_of(g: Graph, vertices) -> list[tuple[int, int]] | None:
    """A perfect matching of the induced subgraph, or None if none exists."""
    verts = sorted(vertices)
    if len(verts) % 2:
        return None
    if not verts:
        return []
    sub, mapping = g.induced(verts)
    match = _blossom_max_matching(sub)
    if any(m == -1 for m in match):
        return None
    return sorted(
        (mapping[v], mapping[match[v]]) for v in range(sub.n) if match[v] > v
    )


def has_perfect_matching(g: Graph, vertices) -> bool:
    return perfect_matching_of(g, vertices) is not None


def compute_free_info(g: Graph, matching: Matching) -> FreeInfo:
    """Free neighbors of every uncovered vertex, straight from the definition."""
    partner = matching.partner_array()
    free_neighbors: dict[int, frozenset[int]] = {}
    free_flag: dict[int, bool] = {}
    for w in matching.uncovered:
        wn = g.neighbor_set(w)
        free = frozenset(
            v for v in wn if partner[v] != -1 and partner[v] not in wn
        )
        free_neighbors[w] = free
        free_flag[w] = bool(free)
    return FreeInfo(free_neighbors=free_neighbors, free_flag=free_flag)


def count_nonfree(g: Graph, matching: Matching, info: FreeInfo | None = None) -> int:
    """Number of uncovered vertices without a free neighbor."""
    if info is None:
        info = compute_free_info(g, matching)
    return sum(1 for w in matching.uncovered if not info.free_flag[w])


def _nonfree_count_raw(g: Graph, partner: list[int]) -> int:
    count = 0
    for w in range(g.n):
        if partner[w] != -1:
            continue
        wn = g.neighbor_set(w)
        free = False
        for v in wn:
            if partner[v] != -1 and partner[v] not in wn:
                free = True
                break
        if not free:
            count += 1
    return count


def maximize_free_vertices(g: Graph, matching: Matching) -> Matching:
    """Refine a maximum matching to (locally) maximize the free-vertex count.

    Every accepted move keeps the matching maximum and strictly decreases the
    non-free count, so at most n improvements happen.  The candidate moves
    mirror the structural exchange argument; acceptance is guarded by a
    global recount so a bad candidate can never make things worse.
    """
    partner = matching.partner_array()
    # necessary condition for maximality; the moves below rely on it
    for w in range(g.n):
        if partner[w] == -1:
            for u in g.adjacency[w]:
                if partner[u] == -1:
                    raise ValueError(
                        "matching is not maximum (two adjacent uncovered vertices)"
                    )
    improvements = 0
    cap = g.n * g.n
    while improvements < cap:
        base = _nonfree_count_raw(g, partner)
        if base == 0:
            break
        improved = False
        for w in range(g.n):
            if partner[w] != -1 or _is_free(g, partner, w):
                continue
            cand = _improve_from(g, partner, w, base)
            if cand is not None:
                partner = cand
                improvements += 1
                improved = True
                break
        if not improved:
            break
    return Matching.from_partner_array(partner)


def _is_free(g: Graph, partner: list[int], w: int) -> bool:
    wn = g.neighbor_set(w)
    for v in wn:
        if partner[v] != -1 and partner[v] not in wn:
            return True
    return False


def _improve_from(
    g: Graph, partner: list[int], w: int, base: int
) -> list[int] | None:
    """Grow a tight set around non-free w, looking for a free-count improvement.

    The set T always contains w, induces a tight subgraph, and never cuts a
    matching edge; the matching inside T covers T \\ {w}.  Returns an improved
    partner array, or None when w's component certifies as tight (or no
    guarded move helps).
    """
    T = {w}
    while True:
        grow = None
        for v_in in sorted(T):
            for v1 in g.adjacency[v_in]:
                if v1 in T:
                    continue
                v2 = partner[v1]
                if v2 == -1:
                    raise ValueError(
                        "matching is not maximum (augmenting edge at a tight set)"
                    )
                if v2 in T:
                    continue
                if not g.has_edge(v2, v_in):
                    cand = _swap_boundary_edge(g, partner, T, w, v_in, v1, v2)
                    if cand is not None and _nonfree_count_raw(g, cand) < base:
                        return cand
                elif grow is None:
                    grow = (v_in, v1, v2)
        if grow is None:
            return None
        v_in, v1, v2 = grow
        T2 = T | {v1, v2}
        violation_found = False
        for u, a, b in _condition_ii_violations(g, T2, v1, v2):
            violation_found = True
            cand = _rematch_inside(g, partner, T2, u, a, b)
            if cand is not None and _nonfree_count_raw(g, cand) < base:
                return cand
        if violation_found:
            # T2 is not tight and no guarded move helped; stop on this vertex
            return None
        T = T2


def _swap_boundary_edge(
    g: Graph,
    partner: list[int],
    T: set[int],
    w: int,
    v_in: int,
    v1: int,
    v2: int,
) -> list[int] | None:
    """Replace matching edge v1-v2 with v1-v_in and rematch T \\ {v_in}.

    Leaves v2 uncovered (and free, since v2 is adjacent to v1 but not v_in).
    """
    pm = _perfect_matching_inside(g, T - {v_in})
    if pm is None:
        return None
    new = list(partner)
    for t in T:
        new[t] = -1
    new[v2] = -1
    new[v1] = v_in
    new[v_in] = v1
    for a, b in pm:
        new[a] = b
        new[b] = a
    return new


def _rematch_inside(
    g: Graph, partner: list[int], T2: set[int], u: int, a: int, b: int
) -> list[int] | None:
    """Rematch T2 as edge (a, b) plus a perfect matching of T2 - {u, a, b}."""
    pm = _perfect_matching_inside(g, T2 - {u, a, b})
    if pm is None:
        return None
    new = list(partner)
    for t in T2:
        new[t] = -1
    new[a] = b
    new[b] = a
    for x, y in pm:
        new[x] = y
        new[y] = x
    return new


def _perfect_matching_inside(g: Graph, vertices: set[int]):
    return perfect_matching_of(g, vertices)


def _condition_ii_violations(g: Graph, T2: set[int], v1: int, v2: int):
    """Yield (u, a, b): edge a-b of G[T2] with exactly one endpoint adjacent
    to u, such that T2 - {u, a, b} has a perfect matching.

    Such a triple means T2 is not tight and rematching exposes u as free.
    Vertices of the old tight set are tried first; v1 last (moves exposing v1
    are the only ones that can fail the caller's improvement guard).
    """
    inner_edges = [
        (x, y)
        for (x, y) in g.edges
        if x in T2 and y in T2
    ]
    order = sorted(T2 - {v1, v2}) + [v2, v1]
    for u in order:
        un = g.neighbor_set(u)
        for a, b in inner_edges:
            if u in (a, b):
                continue
            if ((a in un) + (b in un)) != 1:
                continue
            if has_perfect_matching(g, T2 - {u, a, b}):
                yield (u, a, b)
