import random
from fractions import Fraction

import pytest

from graphbisect.core import Graph
from graphbisect.generators import complete, cycle, path, star, triangles
from graphbisect.oracle import brute_tight_check
from graphbisect.tight import (
    DegreeSequence,
    count_tight_components,
    is_tight_component,
    tau_from_matching,
    tau_upper_by_degrees,
    tau_upper_by_rho,
)

from conftest import bowtie, random_graph


def test_isolated_vertex_is_tight():
    g = Graph.from_edges(1, [])
    assert is_tight_component(g, [0])
    assert brute_tight_check(g, [0])


@pytest.mark.parametrize("k", [3, 5, 7])
def test_odd_cliques_are_tight(k):
    g = complete(k)
    comp = range(k)
    assert is_tight_component(g, comp)
    assert brute_tight_check(g, comp)


def test_p3_not_tight():
    g = path(3)
    assert not is_tight_component(g, [0, 1, 2])
    assert not brute_tight_check(g, [0, 1, 2])


def test_c5_not_tight():
    g = cycle(5)
    assert not is_tight_component(g, range(5))
    assert not brute_tight_check(g, range(5))


def test_bowtie_tight():
    g = bowtie()
    assert is_tight_component(g, range(5))
    assert brute_tight_check(g, range(5))


def test_even_component_never_tight():
    assert not is_tight_component(complete(4), range(4))


def test_rejects_non_component_input():
    g = triangles(2)
    with pytest.raises(ValueError):
        is_tight_component(g, [0, 1])  # edge leaves the set
    with pytest.raises(ValueError):
        is_tight_component(g, [0, 1, 2, 3, 4, 5])  # not connected


def test_count_examples():
    assert count_tight_components(triangles(2)).tau == 2
    assert count_tight_components(bowtie()).tau == 1
    assert count_tight_components(star(6)).tau == 0


def test_report_json_shape():
    rep = count_tight_components(triangles(2))
    j = rep.to_json()
    assert j["tau"] == 2
    assert {c["tight"] for c in j["components"]} == {True}


def test_definitional_matches_brute_on_random_components():
    rng = random.Random(31)
    for _ in range(250):
        n = rng.randint(1, 9)
        g = random_graph(n, rng.uniform(0.15, 0.9), rng)
        for comp in g.components():
            assert is_tight_component(g, comp) == brute_tight_check(g, comp)


def test_bijection_definitional_vs_matching_small():
    # count_tight_components raises internally on any disagreement
    rng = random.Random(32)
    for _ in range(400):
        n = rng.randint(1, 12)
        g = random_graph(n, rng.uniform(0.05, 0.9), rng)
        rep = count_tight_components(g)
        assert rep.tau == tau_from_matching(g)


def test_tight_components_odd_order_even_degrees():
    rng = random.Random(33)
    for _ in range(200):
        n = rng.randint(1, 11)
        g = random_graph(n, rng.uniform(0.2, 0.9), rng)
        for comp, flag in count_tight_components(g).per_component:
            if flag:
                assert len(comp) % 2 == 1
                sub, _ = g.induced(comp)
                assert all(d % 2 == 0 for d in sub.degrees())


def test_tau_upper_by_degrees_examples():
    assert tau_upper_by_degrees(DegreeSequence(d={0: 3})) == 3
    assert tau_upper_by_degrees(DegreeSequence(d={2: 6})) == 2
    assert tau_upper_by_degrees(DegreeSequence(d={1: 10})) == 0


def test_tau_upper_by_degrees_bound_and_equality():
    rng = random.Random(34)
    for _ in range(150):
        n = rng.randint(1, 11)
        g = random_graph(n, rng.uniform(0.1, 0.9), rng)
        tau = count_tight_components(g).tau
        assert tau <= tau_upper_by_degrees(DegreeSequence.of(g))
    # equality on disjoint unions of odd cliques K_{i+1} (all degrees i)
    for t, k in [(2, 3), (3, 3), (2, 5)]:
        edges = []
        for c in range(t):
            base = c * k
            edges += [
                (base + i, base + j) for i in range(k) for j in range(i + 1, k)
            ]
        g = Graph.from_edges(t * k, edges)
        assert count_tight_components(g).tau == tau_upper_by_degrees(
            DegreeSequence.of(g)
        ) == t


def test_tau_upper_by_rho_examples():
    assert tau_upper_by_rho(12, 0, 2, 1) == 6
    assert tau_upper_by_rho(10, 5, 4, 2) == 5
    assert tau_upper_by_rho(9, 0, 2, 0) == 3
    assert count_tight_components(triangles(3)).tau == 3  # equality case


def test_tau_upper_by_rho_rejects_bad_alpha():
    with pytest.raises(ValueError):
        tau_upper_by_rho(10, 0, 2, 3)


def test_tau_upper_by_rho_exact_rational():
    assert tau_upper_by_rho(10, 0, 4, 2) == Fraction(10, 3)
