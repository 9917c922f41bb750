"""Brute-force oracles: exact answers at desk scale, used to certify the solvers.

All enumeration is over bitmasks with deterministic tie-breaking (lowest
lexicographic witness), so oracle outputs are reproducible.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .core import Bipartition, Graph, cut_stats

MAX_ORACLE_N = 20


class OracleSizeError(ValueError):
    """Instance too large for exhaustive enumeration."""


@dataclass(frozen=True)
class OracleResult:
    optimum: int
    witness: Bipartition
    instances_enumerated: int

    def to_json(self) -> dict:
        return {
            "optimum": self.optimum,
            "witness": self.witness.to_json(),
            "instances_enumerated": self.instances_enumerated,
        }


def _adj_masks(g: Graph) -> list[int]:
    masks = [0] * g.n
    for u, v in g.edges:
        masks[u] |= 1 << v
        masks[v] |= 1 << u
    return masks


def brute_max_bisection(g: Graph) -> OracleResult:
    """Exact maximum of e(V1, V2) over all bisections, n <= 20.

    Enumerates the floor(n/2)-sized side; the witness puts the ceil-half on
    side 1 (odd-n convention) and is the first optimum in enumeration order.
    """
    if g.n > MAX_ORACLE_N:
        raise OracleSizeError(f"n={g.n} exceeds oracle limit {MAX_ORACLE_N}")
    if g.n == 0:
        return OracleResult(0, Bipartition(()), 1)
    adj = _adj_masks(g)
    k = g.n // 2
    best = -1
    best_side2: tuple[int, ...] = ()
    count = 0
    for side2 in combinations(range(g.n), k):
        count += 1
        mask2 = 0
        for v in side2:
            mask2 |= 1 << v
        crossing = 0
        for v in side2:
            crossing += bin(adj[v] & ~mask2).count("1")
        if crossing > best:
            best = crossing
            best_side2 = side2
    side = [1] * g.n
    for v in best_side2:
        side[v] = 2
    return OracleResult(best, Bipartition(tuple(side)), count)


def brute_judicious_optimum(g: Graph) -> OracleResult:
    """Exact minimum over bisections of max(e(V1), e(V2)), n <= 20."""
    if g.n > MAX_ORACLE_N:
        raise OracleSizeError(f"n={g.n} exceeds oracle limit {MAX_ORACLE_N}")
    if g.n == 0:
        return OracleResult(0, Bipartition(()), 1)
    adj = _adj_masks(g)
    k = g.n // 2
    best = None
    best_side2: tuple[int, ...] = ()
    count = 0
    full = (1 << g.n) - 1
    for side2 in combinations(range(g.n), k):
        count += 1
        mask2 = 0
        for v in side2:
            mask2 |= 1 << v
        mask1 = full & ~mask2
        inside2 = 0
        for v in side2:
            inside2 += bin(adj[v] & mask2).count("1")
        inside2 //= 2
        inside1 = 0
        v = mask1
        while v:
            low = (v & -v).bit_length() - 1
            inside1 += bin(adj[low] & mask1).count("1")
            v &= v - 1
        inside1 //= 2
        worst = max(inside1, inside2)
        if best is None or worst < best:
            best = worst
            best_side2 = side2
    side = [1] * g.n
    for v in best_side2:
        side[v] = 2
    return OracleResult(best or 0, Bipartition(tuple(side)), count)


def brute_max_cut(g: Graph) -> int:
    """Exact Max Cut over all bipartitions (no balance constraint), n <= 22."""
    if g.n > 22:
        raise OracleSizeError(f"n={g.n} too large for max-cut enumeration")
    if g.n == 0:
        return 0
    adj = _adj_masks(g)
    best = 0
    # vertex n-1 fixed on side 0 (cut symmetric under complement)
    for mask in range(1 << (g.n - 1)):
        crossing = 0
        rest = mask
        while rest:
            low = (rest & -rest).bit_length() - 1
            crossing += bin(adj[low] & ~mask).count("1")
            rest &= rest - 1
        if crossing > best:
            best = crossing
    return best


# ---------------------------------------------------------------------------
# matching oracles (bitmask DP + exhaustive enumeration)
# ---------------------------------------------------------------------------

def brute_max_matching_size(g: Graph) -> int:
    """Maximum matching cardinality by DP over vertex subsets, n <= 20."""
    if g.n > MAX_ORACLE_N:
        raise OracleSizeError(f"n={g.n} exceeds oracle limit {MAX_ORACLE_N}")
    adj = _adj_masks(g)
    memo: dict[int, int] = {0: 0}

    def solve(mask: int) -> int:
        cached = memo.get(mask)
        if cached is not None:
            return cached
        v = (mask & -mask).bit_length() - 1
        best = solve(mask & (mask - 1))  # leave v uncovered
        avail = adj[v] & mask
        while avail:
            u = (avail & -avail).bit_length() - 1
            best = max(best, 1 + solve(mask & ~(1 << v) & ~(1 << u)))
            avail &= avail - 1
        memo[mask] = best
        return best

    return solve((1 << g.n) - 1)


def has_perfect_matching_brute(g: Graph, vertices) -> bool:
    """Whether the induced subgraph on `vertices` has a perfect matching."""
    sub, _ = g.induced(vertices)
    if sub.n % 2 != 0:
        return False
    return brute_max_matching_size(sub) * 2 == sub.n


def enumerate_perfect_matchings(g: Graph):
    """Yield every perfect matching of g as a tuple of sorted edges, n <= 16."""
    if g.n > 16:
        raise OracleSizeError(f"n={g.n} too large for matching enumeration")
    if g.n % 2:
        return
    adj = _adj_masks(g)
    full = (1 << g.n) - 1

    def rec(mask: int, acc: list[tuple[int, int]]):
        if mask == 0:
            yield tuple(acc)
            return
        v = (mask & -mask).bit_length() - 1
        avail = adj[v] & mask
        while avail:
            u = (avail & -avail).bit_length() - 1
            acc.append((v, u))
            yield from rec(mask & ~(1 << v) & ~(1 << u), acc)
            acc.pop()
            avail &= avail - 1

    yield from rec(full, [])


def enumerate_maximum_matchings(g: Graph):
    """Yield every maximum matching of g as a sorted edge tuple, n <= 14."""
    if g.n > 14:
        raise OracleSizeError(f"n={g.n} too large for maximum-matching enumeration")
    target = brute_max_matching_size(g)
    adj = _adj_masks(g)

    def rec(mask: int, size: int, acc: list[tuple[int, int]]):
        remaining = bin(mask).count("1")
        if size + remaining // 2 < target:
            return
        if size == target:
            yield tuple(sorted(acc))
            return
        if mask == 0:
            return
        v = (mask & -mask).bit_length() - 1
        avail = adj[v] & mask
        while avail:
            u = (avail & -avail).bit_length() - 1
            acc.append((v, u) if v < u else (u, v))
            yield from rec(mask & ~(1 << v) & ~(1 << u), size + 1, acc)
            acc.pop()
            avail &= avail - 1
        yield from rec(mask & (mask - 1), size, acc)  # leave v uncovered

    yield from rec((1 << g.n) - 1, 0, [])


def brute_tight_check(g: Graph, component) -> bool:
    """Literal tight-component test by enumerating every perfect matching.

    For every vertex v of the component: T \\ {v} must have at least one
    perfect matching, and no perfect matching of T \\ {v} may contain an edge
    with exactly one endpoint adjacent to v.  Component size capped at 12.
    """
    comp = sorted(component)
    if len(comp) > 12:
        raise OracleSizeError(f"component size {len(comp)} exceeds oracle limit 12")
    comp_set = set(comp)
    for v in comp:
        for u in g.adjacency[v]:
            if u not in comp_set:
                raise ValueError("vertex set is not a full connected component")
    sub, mapping = g.induced(comp)
    if not _is_connected(sub):
        raise ValueError("vertex set is not connected")
    for i in range(sub.n):
        rest = [x for x in range(sub.n) if x != i]
        rest_sub, rest_map = sub.induced(rest)
        nbrs = sub.neighbor_set(i)
        found_any = False
        for pm in enumerate_perfect_matchings(rest_sub):
            found_any = True
            for a, b in pm:
                adjacency_count = (rest_map[a] in nbrs) + (rest_map[b] in nbrs)
                if adjacency_count == 1:
                    return False
        if not found_any:
            return False
    return True


def _is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return len(g.components()) == 1


def verify_witness(g: Graph, result: OracleResult) -> bool:
    """Witness must reproduce the reported optimum under cut_stats."""
    stats = cut_stats(g, result.witness)
    return stats.crossing == result.optimum or max(stats.inside1, stats.inside2) == result.optimum
