"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run `pytest tests/test_acceptance.py -s` to see the per-criterion lines.
Tolerances are pinned here exactly as stated; nothing is recalibrated at
runtime.
"""
from __future__ import annotations

import random
from fractions import Fraction

import networkx as nx
import pytest

from graphbisect.bounds import edwards_bound, extremal_judicious_floor
from graphbisect.coloring import bounded_degree_bisection, regular_bisection
from graphbisect.core import Graph, cut_stats, is_bisection
from graphbisect.generators import (
    complete,
    complete_bipartite,
    cycle,
    family1,
    family2,
    petersen,
    random_max_degree,
    random_min_degree,
    random_regular,
    star,
    triangles,
)
from graphbisect.greedy import alpha_bisection, tight_bisection
from graphbisect.mindegree import inequality_audit, min_degree_bisection
from graphbisect.oracle import (
    brute_judicious_optimum,
    brute_max_bisection,
    brute_max_cut,
)
from graphbisect.randomized import judicious_tight_bisection
from graphbisect.tight import count_tight_components

from conftest import random_connected_graph, random_isolated_free_graph


def _report(num: int, name: str, ok: bool, detail: str = "") -> None:
    line = f"ACCEPTANCE {num:02d} {name}: {'PASS' if ok else 'FAIL'}"
    if detail:
        line += f"  [{detail}]"
    print(line)
    assert ok, line


def test_criterion_01_triangle_tightness():
    ok = True
    details = []
    for t in range(2, 7):
        g = triangles(t)
        part, rep = tight_bisection(g)
        oracle = brute_max_bisection(g).optimum
        expected = 2 * g.n // 3
        details.append(f"t={t}:{rep.achieved}")
        ok &= rep.achieved == oracle == expected
        ok &= is_bisection(g, part)
    _report(1, "triangle-union tightness", ok, " ".join(details))


def test_criterion_02_star_tightness():
    ok = True
    for n in range(6, 17, 2):
        g = star(n)
        part, rep = tight_bisection(g)
        oracle = brute_max_bisection(g).optimum
        ok &= rep.achieved == oracle == n // 2
    _report(2, "star tightness", ok)


def test_criterion_03_bijection():
    # exhaustive up to isomorphism for n <= 7 (the atlas); seeded random
    # connected samples for 8 <= n <= 14 (isomorphism-free generation for
    # n in {8, 9} is not available in this environment; see decisions ledger)
    checked = 0
    for G in nx.graph_atlas_g()[1:]:
        if G.number_of_nodes() == 0 or not nx.is_connected(G):
            continue
        g = Graph.from_edges(G.number_of_nodes(), list(G.edges()))
        count_tight_components(g)  # raises on any two-route disagreement
        checked += 1
    atlas_count = checked
    rng = random.Random(31415)
    samples = 100_000
    for _ in range(samples):
        n = rng.randint(8, 14)
        g = random_connected_graph(n, rng)
        count_tight_components(g)
        checked += 1
    _report(
        3,
        "free-vertex/tight-component bijection",
        checked == atlas_count + samples,
        f"atlas={atlas_count} samples={samples}",
    )


def test_criterion_04_edwards_sanity():
    corpus: list[Graph] = []
    for G in nx.graph_atlas_g()[1:]:
        if 1 <= G.number_of_nodes() <= 7:
            corpus.append(Graph.from_edges(G.number_of_nodes(), list(G.edges())))
    rng = random.Random(2718)
    for _ in range(150):
        n = rng.randint(8, 12)
        p = rng.uniform(0.15, 0.9)
        edges = [
            (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
        ]
        corpus.append(Graph.from_edges(n, edges))
    ok = True
    for g in corpus:
        ok &= brute_max_cut(g) >= edwards_bound(g.m)
    equal = all(brute_max_cut(complete(k)) == edwards_bound(complete(k).m)
                for k in range(3, 9))
    _report(
        4,
        "edwards bound sanity",
        ok and equal,
        f"corpus={len(corpus)} complete-graph equality={equal}",
    )


def test_criterion_05_alpha_contract():
    rng = random.Random(1618)
    ok = True
    runs = 0
    for i in range(500):
        n = rng.randint(2, 60)
        g = random_isolated_free_graph(n, rng)
        for a in (Fraction(0), Fraction(1, 12), Fraction(1, 6)):
            part, rep = alpha_bisection(g, a)
            st = cut_stats(g, part)
            bound = Fraction(g.m, 2) + a * g.n
            ceil_bound = -(-bound.numerator // bound.denominator)
            ok &= st.crossing >= ceil_bound - 1
            ok &= min(st.size1, st.size2) >= int((Fraction(1, 2) - a) * n)
            runs += 1
    _report(5, "alpha-bisection contract", ok, f"runs={runs}")


def test_criterion_06_judicious_star_triangles():
    g = triangles(100)
    cap = 50 + 0.02 * 300  # m/4 - (n - tau)/8 + eps*n at tau=100
    hits = 0
    seeds = 100
    for seed in range(seeds):
        part, rep = judicious_tight_bisection(g, eps=0.02, seed=seed, max_trials=64)
        st = cut_stats(g, part)
        if max(st.inside1, st.inside2) <= cap and is_bisection(g, part):
            hits += 1
    _report(
        6,
        "star-scheme judicious caps on 100 triangles",
        hits >= 0.95 * seeds,
        f"hits={hits}/{seeds} cap={cap}",
    )


def test_criterion_07_big_bisection_no_judicious():
    g = complete_bipartite(2, 4)
    maxbis = brute_max_bisection(g).optimum
    judic = brute_judicious_optimum(g).optimum
    ok = maxbis == 6 == 3 * g.m // 4 and judic == 2 == g.m // 4
    details = [f"K_2,4:{maxbis}/{judic}"]
    for n in (6, 12, 18):
        gb = complete_bipartite(n // 3, 2 * n // 3)
        mb = brute_max_bisection(gb).optimum
        jd = brute_judicious_optimum(gb).optimum
        ok &= Fraction(mb) == Fraction(3 * gb.m, 4)
        ok &= Fraction(jd) >= Fraction(gb.m, 4)
        details.append(f"n={n}:{mb}/{jd}")
    _report(7, "large-bisection-without-judicious family", ok, " ".join(details))


def _family1_instances(delta: int, n_cap: int):
    out = []
    for y in range(1, n_cap, 2):
        for x in range(0, n_cap):
            n = delta * x + (delta + 1) * y + 1
            if n <= n_cap:
                out.append((x, y, family1(delta, x, y)))
    return out


def test_criterion_08_extremal_families():
    ok = True
    count = 0
    for delta in (2, 4):
        for x, y, g in _family1_instances(delta, 16):
            floor = extremal_judicious_floor(delta, g.m)
            opt = brute_judicious_optimum(g).optimum
            ok &= Fraction(opt) >= floor
            count += 1
        # family 2 where the exact floor provably holds: the half-split of
        # the small part must not beat the floor, which needs n large enough
        valid_n = [n for n in range(2 * delta + 4, 17, 2)
                   if (delta + 1) * (n // 2 - delta - 1)
                   >= extremal_judicious_floor(delta, (delta + 1) * (n - delta - 1))]
        for n in valid_n:
            g = family2(delta, n)
            floor = extremal_judicious_floor(delta, g.m)
            opt = brute_judicious_optimum(g).optimum
            ok &= Fraction(opt) >= floor
            count += 1
    # boundary instances where the asymptotic floor fails at tiny n: optima
    # frozen from the oracle; they document why the range above is restricted
    frozen = {(2, 6): 0, (2, 8): 3, (4, 10): 0, (4, 12): 5, (4, 14): 10}
    for (delta, n), expected in frozen.items():
        g = family2(delta, n)
        opt = brute_judicious_optimum(g).optimum
        ok &= opt == expected
        ok &= Fraction(opt) < extremal_judicious_floor(delta, g.m)
    _report(8, "extremal-family judicious floors", ok, f"instances={count}")


def test_criterion_09_min_degree_two_pipeline():
    ok = True
    worst_frac = 0.0
    for seed in range(50):
        rng = random.Random(5000 + seed)
        m = rng.randint(2000, 6000)
        g = random_min_degree(2000, m, delta=2, seed=seed)
        part, rep = min_degree_bisection(g, delta=2, eps=0.05, seed=seed)
        frac = max(rep.achieved1, rep.achieved2) / g.m
        worst_frac = max(worst_frac, frac)
        ok &= frac <= 1 / 3 + 0.05
        ok &= is_bisection(g, part)
    # oracle-optimality comparison at desk scale
    rng = random.Random(901)
    worst_gap = 0
    small = 0
    for trial in range(200):
        n = rng.randint(5, 12)
        m = rng.randint(n, min(n * (n - 1) // 2, 2 * n))
        try:
            g = random_min_degree(n, m, delta=2, seed=trial)
        except ValueError:
            continue
        small += 1
        part, rep = min_degree_bisection(g, delta=2, eps=0.05, seed=trial)
        gap = max(rep.achieved1, rep.achieved2) - brute_judicious_optimum(g).optimum
        worst_gap = max(worst_gap, gap)
    for g in (complete(3), complete(4), cycle(5), cycle(9),
              family1(2, 1, 1), family1(2, 2, 1), family1(2, 0, 3)):
        part, rep = min_degree_bisection(g, delta=2, eps=0.05, seed=1)
        gap = max(rep.achieved1, rep.achieved2) - brute_judicious_optimum(g).optimum
        worst_gap = max(worst_gap, gap)
        small += 1
    ok &= worst_gap <= 2
    _report(
        9,
        "minimum-degree-2 pipeline",
        ok,
        f"worst_frac={worst_frac:.4f} (cap {1/3 + 0.05:.4f}) "
        f"small={small} worst_gap={worst_gap}",
    )


def test_criterion_10_inequality_audit():
    ok = True
    details = []
    for delta in (2, 4, 6, 8, 10, 12):
        rep = inequality_audit(delta, 200)
        details.append(f"d{delta}:{rep.total_violations}")
        ok &= rep.total_violations == 0
    _report(10, "inequality audit", ok, " ".join(details))


def test_criterion_11_coloring_bisections():
    ok = True
    runs = 0
    for r in (2, 3, 4):
        for trial in range(67):
            rng = random.Random(7000 + 100 * r + trial)
            n = rng.randint(4, 60)
            g = random_max_degree(n, r, seed=9000 + 100 * r + trial)
            part, rep = bounded_degree_bisection(g, r)
            st = cut_stats(g, part)
            ok &= Fraction(st.crossing) >= rep.bound
            ok &= abs(st.size1 - st.size2) <= r // 2 + 1
            runs += 1
    regular_cases = [cycle(n) for n in (4, 5, 6, 7, 9, 12, 15)]
    regular_cases += [complete(4), petersen()]
    regular_cases += [random_regular(12, 3, seed=s) for s in range(8)]
    regular_cases += [random_regular(14, 4, seed=s) for s in range(4)]
    for g in regular_cases:
        part, rep = regular_bisection(g)
        st = cut_stats(g, part)
        ok &= Fraction(st.crossing) >= rep.bound
        ok &= is_bisection(g, part)
        runs += 1
    _report(11, "coloring bisections", ok, f"runs={runs}")


def test_criterion_12_determinism(tmp_path):
    from graphbisect.cli import main

    ok = True
    cases = [
        ("tight", []),
        ("alpha", ["--alpha", "1/6"]),
        ("variance", []),
        ("star", ["--eps", "0.05"]),
        ("mindeg", ["--delta", "2", "--eps", "0.1"]),
        ("bounded", []),
        ("regular", []),
    ]
    gen = "random_min_degree:n=40,m=60,delta=2,seed=3"
    gen_reg = "random_regular:n=40,r=3,seed=2"
    gen_bounded = "random_max_degree:n=40,r=3,m=45,seed=2"
    for algo, extra in cases:
        source = {"regular": gen_reg, "bounded": gen_bounded}.get(algo, gen)
        outs = []
        for i in range(2):
            target = tmp_path / f"{algo}_{i}.json"
            code = main(
                ["solve", "--gen", source, "--algo", algo, "--seed", "17",
                 "--r", "3", "--out", str(target), *extra]
            )
            ok &= code == 0
            outs.append(target.read_bytes())
        ok &= outs[0] == outs[1]
    _report(12, "seeded determinism", ok)
