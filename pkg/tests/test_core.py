import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphbisect.core import (
    Bipartition,
    Graph,
    GraphParseError,
    RebalanceError,
    cut_stats,
    is_bisection,
    parse_graph,
    rebalance_low_degree,
)


def test_parse_edge_list_triangle():
    g = parse_graph("3 3\n0 1\n1 2\n0 2")
    assert g.n == 3 and g.m == 3
    assert g.adjacency == ((1, 2), (0, 2), (0, 1))
    assert sum(g.degrees()) == 2 * g.m


def test_parse_rejects_self_loop_with_line_number():
    with pytest.raises(GraphParseError) as exc:
        parse_graph("2 1\n0 0")
    assert "line 2" in str(exc.value)
    assert "self-loop" in str(exc.value)


def test_parse_rejects_duplicate_edge():
    with pytest.raises(GraphParseError, match="duplicate"):
        parse_graph("3 2\n0 1\n1 0")


def test_parse_rejects_out_of_range_vertex():
    with pytest.raises(GraphParseError, match="out of range"):
        parse_graph("2 1\n0 5")


def test_parse_rejects_malformed_line():
    with pytest.raises(GraphParseError, match="line 2"):
        parse_graph("2 1\n0 1 2")


def test_parse_rejects_edge_count_mismatch():
    with pytest.raises(GraphParseError, match="declared"):
        parse_graph("3 2\n0 1")


def test_parse_dimacs_path():
    g = parse_graph("c a comment\np edge 3 2\ne 1 2\ne 2 3")
    assert g.n == 3 and g.m == 2
    assert g.edges == ((0, 1), (1, 2))


def test_parse_dimacs_rejects_self_loop():
    with pytest.raises(GraphParseError, match="self-loop"):
        parse_graph("p edge 2 1\ne 1 1")


def test_parse_dimacs_ignores_comment_lines_between_edges():
    g = parse_graph("p edge 3 2\nc middle\ne 1 2\nc another\ne 2 3")
    assert g.m == 2


def test_graph_roundtrip_through_edge_list_text():
    g = parse_graph("4 3\n0 1\n2 3\n1 2")
    g2 = parse_graph(g.edge_list_text())
    assert g == g2
    assert g.content_hash() == g2.content_hash()


def test_cut_stats_triangle():
    g = parse_graph("3 3\n0 1\n1 2\n0 2")
    part = Bipartition.from_side1(3, {0})
    st_ = cut_stats(g, part)
    assert (st_.crossing, st_.inside1, st_.inside2) == (2, 0, 1)
    assert (st_.size1, st_.size2) == (1, 2)


def test_cut_stats_k4_balanced():
    g = Graph.from_edges(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    st_ = cut_stats(g, Bipartition.from_side1(4, {0, 1}))
    assert (st_.crossing, st_.inside1, st_.inside2) == (4, 1, 1)


def test_cut_stats_star_split():
    g = Graph.from_edges(6, [(0, i) for i in range(1, 6)])
    st_ = cut_stats(g, Bipartition.from_side1(6, {0, 1, 2}))
    assert (st_.crossing, st_.inside1, st_.inside2) == (3, 2, 0)


def test_cut_stats_json_keys():
    g = Graph.from_edges(2, [(0, 1)])
    j = cut_stats(g, Bipartition.from_side1(2, {0})).to_json()
    assert set(j) == {"crossing", "inside1", "inside2", "size1", "size2"}


def test_is_bisection():
    g = Graph.from_edges(6, [])
    assert is_bisection(g, Bipartition.from_side1(6, {0, 1, 2}))
    assert not is_bisection(g, Bipartition.from_side1(6, {0, 1, 2, 3}))
    g7 = Graph.from_edges(7, [])
    assert is_bisection(g7, Bipartition.from_side1(7, {0, 1, 2, 3}))


def test_bipartition_rejects_bad_labels():
    with pytest.raises(ValueError):
        Bipartition((1, 0, 2))


edges_strategy = st.integers(min_value=1, max_value=9).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.sets(
            st.tuples(
                st.integers(0, n - 1), st.integers(0, n - 1)
            ).filter(lambda e: e[0] != e[1]),
            max_size=n * (n - 1) // 2,
        ),
    )
)


@given(edges_strategy, st.integers(0, 1 << 30))
@settings(max_examples=200, deadline=None)
def test_cut_stats_invariants(spec, mask):
    n, raw = spec
    g = Graph.from_edges(n, {(min(u, v), max(u, v)) for u, v in raw})
    side = tuple(1 if (mask >> v) & 1 else 2 for v in range(n))
    part = Bipartition(side)
    st_ = cut_stats(g, part)
    assert st_.inside1 + st_.inside2 + st_.crossing == g.m
    assert st_.size1 + st_.size2 == g.n
    flipped = cut_stats(g, part.swapped())
    assert flipped.crossing == st_.crossing
    assert (flipped.inside1, flipped.inside2) == (st_.inside2, st_.inside1)
    assert (flipped.size1, flipped.size2) == (st_.size2, st_.size1)


def test_rebalance_moves_low_degree_only():
    # 8 vertices: a K4 on side 1 plus degree-1 pendants
    edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 5)]
    g = Graph.from_edges(8, edges)
    part = Bipartition.from_side1(8, {0, 1, 2, 3, 4})
    out = rebalance_low_degree(g, part, degree_cap=1)
    s1, s2 = out.sizes()
    assert abs(s1 - s2) <= 1
    # only vertex 4 (degree 1) was eligible to move from side 1
    assert out.side[4] == 2
    assert all(out.side[v] == 1 for v in (0, 1, 2, 3))


def test_rebalance_identity_when_balanced():
    g = Graph.from_edges(4, [(0, 1)])
    part = Bipartition.from_side1(4, {0, 1})
    assert rebalance_low_degree(g, part, 2) == part


def test_rebalance_sizes_five_three_to_four_four():
    # 8 vertices, sides (5, 3); one degree-1 move lands at (4, 4)
    edges = [(0, 1), (1, 2), (2, 3), (0, 4), (5, 6), (6, 7)]
    g = Graph.from_edges(8, edges)
    part = Bipartition.from_side1(8, {0, 1, 2, 3, 4})
    out = rebalance_low_degree(g, part, degree_cap=1)
    assert out.sizes() == (4, 4)


def test_rebalance_frozen_vertices_never_move():
    edges = [(0, 1), (2, 3)]
    g = Graph.from_edges(8, edges)
    part = Bipartition.from_side1(8, {0, 1, 2, 3, 4, 5})
    out = rebalance_low_degree(g, part, degree_cap=3, frozen=(0, 1, 2, 3))
    assert out.sizes() == (4, 4)
    assert all(out.side[v] == 1 for v in (0, 1, 2, 3))
    with pytest.raises(RebalanceError):
        rebalance_low_degree(
            g, part, degree_cap=3, frozen=(0, 1, 2, 3, 4, 5)
        )


def test_rebalance_errors_without_low_degree_vertices():
    g = Graph.from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
    part = Bipartition.from_side1(6, {0, 1, 2, 3})
    with pytest.raises(RebalanceError):
        rebalance_low_degree(g, part, degree_cap=2)


def test_rebalance_crossing_change_bounded_by_cap_per_move():
    import random

    rng = random.Random(4)
    for _ in range(40):
        n = rng.randint(4, 14)
        edges = {
            (min(u, v), max(u, v))
            for u in range(n)
            for v in range(u + 1, n)
            if rng.random() < 0.4
        }
        g = Graph.from_edges(n, sorted(edges))
        k = rng.randint(0, n)
        part = Bipartition.from_side1(n, set(range(k)))
        cap = g.max_degree()
        before = cut_stats(g, part)
        moved = abs(before.size1 - before.size2) // 2
        out = rebalance_low_degree(g, part, cap)
        after = cut_stats(g, out)
        assert abs(after.size1 - after.size2) <= 1
        assert abs(after.crossing - before.crossing) <= cap * moved
