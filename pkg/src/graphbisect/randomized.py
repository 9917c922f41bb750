"""Randomized judicious bisections with explicit acceptance predicates.

Two schemes live here.  The paired second-moment scheme pairs the vertices
(matching edges first), splits every pair across the sides with independent
fair coins, and accepts a trial when both sides span at most
m/4 + sqrt(2 * Lambda) edges, Lambda = (3m + sum of squared degrees) / 16.

The star-decomposition scheme covers the graph by stars grown from a
free-vertex-maximized maximum matching (leaves are uncovered vertices
assigned to the lowest-indexed matching edge holding one of their free
neighbors), pushes non-free and high-degree uncovered vertices into a
residual set T, places each star apex on a random side with its leaves
opposite, and places T uniformly.  Accepted trials are rebalanced into an
exact bisection by moving low-degree vertices.

Every trial stream is driven by a caller-supplied seed; identical inputs
give identical outputs.  The concentration hypotheses behind the caps are
asymptotic; runs outside the regime are reported (flags in the report),
not refused, unless strict=True.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .bounds import BoundReport
from .core import Bipartition, Graph, cut_stats, is_bisection, rebalance_escalating
from .matching import (
    compute_free_info,
    count_nonfree,
    maximize_free_vertices,
    maximum_matching,
)

DEFAULT_MAX_TRIALS = 64


class RegimeError(ValueError):
    """Raised in strict mode when the scheme's degree/edge hypotheses fail."""


# ---------------------------------------------------------------------------
# paired second-moment scheme
# ---------------------------------------------------------------------------

def default_pairing(g: Graph) -> tuple[list[tuple[int, int]], int | None]:
    """Pairing used by the paired random bisection: maximum-matching edges
    first, the rest paired consecutively in sorted order."""
    mm = maximum_matching(g)
    pairs = list(mm.pairs)
    rest = sorted(mm.uncovered)
    for i in range(0, len(rest) - 1, 2):
        pairs.append((rest[i], rest[i + 1]))
    singleton = rest[-1] if len(rest) % 2 else None
    return pairs, singleton


def lambda_bound(
    g: Graph, pairing: list[tuple[int, int]] | None = None
) -> tuple[Fraction, float]:
    """Lambda = (3m + sum d(v)^2) / 16 and the cap m/4 + sqrt(2 Lambda)."""
    if pairing is not None:
        seen: set[int] = set()
        for u, v in pairing:
            if u == v or u in seen or v in seen:
                raise ValueError("pairing is not a set of disjoint pairs")
            seen.update((u, v))
        if len(seen) < g.n - 1:  # odd n leaves at most one vertex unpaired
            raise ValueError("pairing does not cover the vertex set")
    lam = Fraction(3 * g.m + sum(d * d for d in g.degrees()), 16)
    cap = g.m / 4 + math.sqrt(2 * lam)
    return lam, cap


def paired_random_bisection(
    g: Graph,
    seed: int = 0,
    pairing: list[tuple[int, int]] | None = None,
) -> Bipartition:
    """Split every pair across the sides, orientation by independent fair
    coins from the seed.  Odd-n leftover goes to side 1."""
    if pairing is None:
        pairing, singleton = default_pairing(g)
    else:
        covered = {v for p in pairing for v in p}
        leftover = sorted(set(range(g.n)) - covered)
        if len(leftover) > 1:
            raise ValueError("pairing leaves more than one vertex unpaired")
        singleton = leftover[0] if leftover else None
    rng = random.Random(seed)
    side = [0] * g.n
    for u, v in pairing:
        if rng.getrandbits(1):
            side[u], side[v] = 1, 2
        else:
            side[u], side[v] = 2, 1
    if singleton is not None:
        side[singleton] = 1
    return Bipartition(tuple(side))


def judicious_bisection_variance(
    g: Graph,
    seed: int = 0,
    max_trials: int = DEFAULT_MAX_TRIALS,
) -> tuple[Bipartition, BoundReport]:
    """Retry the paired scheme until both sides span at most m/4 + sqrt(2L).

    Isolated vertices are held out of the pairing and distributed afterwards
    to equalize the sides; they carry no edges, so the caps are unaffected.
    """
    if max_trials < 1:
        raise ValueError("max_trials must be at least 1")
    n = g.n
    if n == 0:
        return Bipartition(()), BoundReport(
            theorem="judicious-variance",
            params={"Lambda": Fraction(0), "cap": 0.0, "trials_used": 0},
            bound=0.0,
            achieved=0,
            satisfied=True,
        )
    lam, cap = lambda_bound(g)
    isolated = [v for v in range(n) if g.degree(v) == 0]
    core = [v for v in range(n) if g.degree(v) > 0]
    core_graph, core_map = g.induced(core)
    pairing, singleton = default_pairing(core_graph)

    rng = random.Random(seed)
    best_side: list[int] | None = None
    best_worst: int | None = None
    trials_used = 0
    accepted = False
    for _ in range(max_trials):
        trials_used += 1
        side_core = [0] * core_graph.n
        for u, v in pairing:
            if rng.getrandbits(1):
                side_core[u], side_core[v] = 1, 2
            else:
                side_core[u], side_core[v] = 2, 1
        if singleton is not None:
            side_core[singleton] = 1
        e1 = e2 = 0
        for u, v in core_graph.edges:
            if side_core[u] == side_core[v]:
                if side_core[u] == 1:
                    e1 += 1
                else:
                    e2 += 1
        worst = max(e1, e2)
        if best_worst is None or worst < best_worst:
            best_worst = worst
            best_side = side_core
        if e1 <= cap and e2 <= cap:
            best_worst = worst
            best_side = side_core
            accepted = True
            break

    side = [0] * n
    for i, v in enumerate(core_map):
        side[v] = best_side[i]  # type: ignore[index]
    s1 = sum(1 for s in side if s == 1)
    s2 = len(core) - s1
    for v in isolated:
        if s1 <= s2:
            side[v] = 1
            s1 += 1
        else:
            side[v] = 2
            s2 += 1
    part = Bipartition(tuple(side))
    stats = cut_stats(g, part)
    assert is_bisection(g, part)
    achieved = max(stats.inside1, stats.inside2)
    report = BoundReport(
        theorem="judicious-variance",
        params={"Lambda": lam, "cap": cap, "trials_used": trials_used,
                "seed": seed},
        bound=cap,
        achieved=achieved,
        satisfied=accepted and achieved <= cap,
        extra={"cut": stats.to_json(), "isolated_held_out": len(isolated)},
    )
    return part, report


# ---------------------------------------------------------------------------
# star decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Star:
    apex: int
    members: tuple[int, ...]  # apex, matching partner, then leaf vertices


@dataclass(frozen=True)
class StarSystem:
    stars: tuple[Star, ...]
    residual: tuple[int, ...]  # T: non-free plus high-degree uncovered
    tau_estimate: int
    decomposed: tuple[int, ...]  # the vertex set that was decomposed
    meta: dict = field(default_factory=dict)


def star_decomposition(
    g: Graph,
    prepartition: tuple[list[int], list[int]] | None = None,
    C: float | None = None,
    eps: float = 0.1,
    strict: bool = False,
) -> StarSystem:
    """Cover V (or V minus the pre-partitioned set) by stars plus residual T.

    Stars come from a free-vertex-maximized maximum matching of the induced
    subgraph; uncovered vertices join the lowest-indexed matching edge where
    they have a free neighbor.  Non-free uncovered vertices and uncovered
    vertices of full-graph degree at least C/eps land in T, so
    |T| <= tau + 2 eps n whenever m <= C n.
    """
    if eps <= 0:
        raise ValueError("eps must be positive")
    n, m = g.n, g.m
    if C is None:
        C = max(1.0, m / n) if n else 1.0
    gamma = eps**4 / (1024 * C**3)
    a_set: set[int] = set()
    if prepartition is not None:
        a1, a2 = prepartition
        a_set = set(a1) | set(a2)
        if len(a_set) != len(a1) + len(a2):
            raise ValueError("pre-partition sides overlap")
    abar = [v for v in range(n) if v not in a_set]
    max_deg_outside = max((g.degree(v) for v in abar), default=0)
    regime = {
        "C": C,
        "gamma": gamma,
        "edges_within_Cn": m <= C * n,
        "degrees_within_gamma_n": max_deg_outside <= gamma * n,
        "preset_within_gamma_n": len(a_set) <= gamma * n,
    }
    if strict and not (
        regime["edges_within_Cn"]
        and regime["degrees_within_gamma_n"]
        and regime["preset_within_gamma_n"]
    ):
        raise RegimeError(
            f"hypotheses violated: {regime}; pre-partition the high-degree "
            "vertices (minimum-degree pipeline) or relax strict mode"
        )

    sub, mapping = g.induced(abar)
    mm = maximize_free_vertices(sub, maximum_matching(sub))
    info = compute_free_info(sub, mm)
    tau_est = count_nonfree(sub, mm, info)

    deg_threshold = C / eps
    edge_of: dict[int, int] = {}
    for j, (a, b) in enumerate(mm.pairs):
        edge_of[a] = j
        edge_of[b] = j
    leaves: dict[int, list[int]] = {j: [] for j in range(mm.size)}
    apex_of: dict[int, int] = {}
    residual: list[int] = []
    for w in mm.uncovered:
        full_degree = g.degree(mapping[w])
        if not info.free_flag[w] or full_degree >= deg_threshold:
            residual.append(mapping[w])
            continue
        j = min(edge_of[v] for v in info.free_neighbors[w])
        free_in_edge = [v for v in info.free_neighbors[w] if edge_of[v] == j]
        if len(free_in_edge) != 1:
            raise RuntimeError("two free neighbors inside one matching edge")
        v = free_in_edge[0]
        if j in apex_of and apex_of[j] != v:
            raise RuntimeError(
                "leaves of one matching edge disagree on the apex; "
                "matching is not maximum"
            )
        apex_of[j] = v
        leaves[j].append(mapping[w])

    stars = []
    for j, (a, b) in enumerate(mm.pairs):
        apex_local = apex_of.get(j, min(a, b))
        partner_local = b if apex_local == a else a
        members = (mapping[apex_local], mapping[partner_local]) + tuple(
            sorted(leaves[j])
        )
        stars.append(Star(apex=mapping[apex_local], members=members))

    return StarSystem(
        stars=tuple(stars),
        residual=tuple(sorted(residual)),
        tau_estimate=tau_est,
        decomposed=tuple(abar),
        meta=regime,
    )


# ---------------------------------------------------------------------------
# star-scheme judicious bisection (with optional pre-partition)
# ---------------------------------------------------------------------------

def _edge_profile(g: Graph, a1: set[int], a2: set[int]):
    """(e(A1), e(A2), e(A1, Abar), e(A2, Abar), e(Abar))."""
    ea1 = ea2 = x1 = x2 = ebar = 0
    for u, v in g.edges:
        in1 = (u in a1) + (v in a1)
        in2 = (u in a2) + (v in a2)
        if in1 == 2:
            ea1 += 1
        elif in2 == 2:
            ea2 += 1
        elif in1 == 1 and in2 == 1:
            pass  # edge inside A across the preset split; crossing by construction
        elif in1 == 1:
            x1 += 1
        elif in2 == 1:
            x2 += 1
        else:
            ebar += 1
    return ea1, ea2, x1, x2, ebar


def _run_star_trials(
    g: Graph,
    system: StarSystem,
    preset: dict[int, int],
    cap1_pre: Fraction,
    cap2_pre: Fraction,
    balance_tol: float,
    seed: int,
    max_trials: int,
):
    """Seeded trials: apex coins + residual coins; first accepted wins."""
    n = g.n
    rng = random.Random(seed)
    best: tuple | None = None  # (not balanced, worst, side tuple, e1, e2)
    trials_used = 0
    accepted = False
    chosen = None
    for _ in range(max_trials):
        trials_used += 1
        side = [0] * n
        for v, s in preset.items():
            side[v] = s
        for star in system.stars:
            coin = 1 if rng.getrandbits(1) else 2
            side[star.apex] = coin
            for v in star.members:
                if v != star.apex:
                    side[v] = 3 - coin
        for v in system.residual:
            side[v] = 1 if rng.getrandbits(1) else 2
        e1 = e2 = 0
        for u, v in g.edges:
            if side[u] == side[v]:
                if side[u] == 1:
                    e1 += 1
                else:
                    e2 += 1
        s1 = sum(1 for s in side if s == 1)
        balanced = abs(s1 - n / 2) <= balance_tol
        worst = max(e1, e2)
        key = (not balanced, worst)
        if best is None or key < best[0]:
            best = (key, tuple(side), e1, e2)
        if balanced and e1 <= cap1_pre and e2 <= cap2_pre:
            chosen = (tuple(side), e1, e2)
            accepted = True
            break
    if chosen is None:
        chosen = (best[1], best[2], best[3])  # type: ignore[index]
    return chosen, trials_used, accepted


def _star_scheme(
    g: Graph,
    prepartition: tuple[list[int], list[int]] | None,
    eps: float,
    seed: int,
    max_trials: int,
    C: float | None,
    strict: bool,
    theorem: str,
) -> tuple[Bipartition, BoundReport]:
    n, m = g.n, g.m
    if n == 0:
        return Bipartition(()), BoundReport(
            theorem=theorem, params={}, bound=0.0, achieved=0, satisfied=True
        )
    if max_trials < 1:
        raise ValueError("max_trials must be at least 1")
    if prepartition is not None:
        biggest = max(len(prepartition[0]), len(prepartition[1]))
        if biggest > (n + 1) // 2:
            raise ValueError(
                f"preset side of {biggest} vertices cannot fit in a bisection "
                f"of {n}"
            )
    if C is None:
        C = max(1.0, m / n)
    system = star_decomposition(g, prepartition, C=C, eps=eps, strict=strict)
    tau = system.tau_estimate
    eps_f = Fraction(eps)
    c_f = Fraction(C)

    a1 = set(prepartition[0]) if prepartition else set()
    a2 = set(prepartition[1]) if prepartition else set()
    ea1, ea2, x1, x2, ebar = _edge_profile(g, a1, a2)
    base1 = ea1 + Fraction(x1, 2) + Fraction(ebar, 4) - Fraction(n - tau, 8)
    base2 = ea2 + Fraction(x2, 2) + Fraction(ebar, 4) - Fraction(n - tau, 8)
    cap1_pre = base1 + eps_f * n / 2
    cap2_pre = base2 + eps_f * n / 2
    cap1 = base1 + eps_f * n
    cap2 = base2 + eps_f * n
    balance_tol = max(float(eps_f * n / (16 * c_f)), 0.5)

    preset = {v: 1 for v in a1}
    preset.update({v: 2 for v in a2})
    (side, e1_pre, e2_pre), trials_used, accepted = _run_star_trials(
        g, system, preset, cap1_pre, cap2_pre, balance_tol, seed, max_trials
    )
    part = Bipartition(side)
    rebalance_cap = max(1, math.ceil(8 * C))
    part, cap_used = rebalance_escalating(
        g, part, rebalance_cap, frozen=tuple(preset)
    )
    stats = cut_stats(g, part)
    assert is_bisection(g, part)
    satisfied = stats.inside1 <= cap1 and stats.inside2 <= cap2
    budget = {
        "expectation_share": float(eps_f * n / 4),
        "concentration_share": float(eps_f * n / 4),
        "rebalance_share": float(eps_f * n / 2),
        "pre_rebalance_used": float(max(e1_pre - base1, e2_pre - base2)),
        "rebalance_used": max(
            abs(stats.inside1 - e1_pre), abs(stats.inside2 - e2_pre)
        ),
    }
    report = BoundReport(
        theorem=theorem,
        params={
            "eps": eps,
            "C": C,
            "gamma": system.meta["gamma"],
            "tau": tau,
            "seed": seed,
            "trials_used": trials_used,
            "max_trials": max_trials,
        },
        bound=max(cap1, cap2),
        achieved=max(stats.inside1, stats.inside2),
        satisfied=satisfied,
        extra={
            "cap1": float(cap1),
            "cap2": float(cap2),
            "achieved1": stats.inside1,
            "achieved2": stats.inside2,
            "accepted": accepted,
            "rebalance_cap": cap_used,
            "stars": len(system.stars),
            "residual": len(system.residual),
            "regime": {k: v for k, v in system.meta.items() if k != "gamma"},
            "budget_ledger": budget,
            "cut": stats.to_json(),
        },
    )
    return part, report


def judicious_tight_bisection(
    g: Graph,
    eps: float,
    seed: int = 0,
    max_trials: int = DEFAULT_MAX_TRIALS,
    C: float | None = None,
    strict: bool = False,
) -> tuple[Bipartition, BoundReport]:
    """Bisection with both sides spanning at most m/4 - (n - tau)/8 + eps n.

    tau is the tight-component count (matching correspondence).  A trial is
    accepted when both sides are within the pre-rebalance cap (eps n / 2
    share) and the size deviation is within eps n / 16C; the accepted trial
    is rebalanced by low-degree moves (degree < 8C), consuming the remaining
    eps n / 2.
    """
    return _star_scheme(
        g, None, eps, seed, max_trials, C, strict, theorem="judicious-star"
    )


def judicious_with_prepartition(
    g: Graph,
    A1,
    A2,
    eps: float,
    seed: int = 0,
    max_trials: int = DEFAULT_MAX_TRIALS,
    C: float | None = None,
    strict: bool = False,
) -> tuple[Bipartition, BoundReport]:
    """Star scheme honoring a preset split A1 -> side 1, A2 -> side 2.

    Both sides span at most e(A_i) + e(A_i, Abar)/2 + e(Abar)/4 - (n-tau)/8
    + eps n, with tau counted in the graph induced away from A.
    """
    return _star_scheme(
        g,
        (sorted(A1), sorted(A2)),
        eps,
        seed,
        max_trials,
        C,
        strict,
        theorem="judicious-star-prepartition",
    )
