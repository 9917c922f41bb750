import pytest

from graphbisect.generators import (
    GeneratorSpec,
    complete_bipartite,
    family1,
    family2,
    generate,
    petersen,
    random_max_degree,
    random_min_degree,
    random_regular,
    triangles,
)


def test_spec_parsing_roundtrip():
    spec = GeneratorSpec.parse("family1:delta=2,x=4,y=3")
    assert spec.family == "family1"
    assert spec.params == {"delta": 2, "x": 4, "y": 3}
    assert spec.to_string() == "family1:delta=2,x=4,y=3"
    assert GeneratorSpec.parse("petersen").params == {}


def test_spec_rejects_unknown_family():
    with pytest.raises(ValueError, match="unknown family"):
        GeneratorSpec.parse("mystery:n=4")


def test_triangles():
    g = triangles(2)
    assert (g.n, g.m) == (6, 6)


def test_family1_counts():
    g = family1(2, 1, 1)
    assert (g.n, g.m) == (6, 9)
    # m = delta(delta+1)/2 x + (delta+1)(delta+2)/2 y
    for delta, x, y in [(2, 4, 3), (4, 2, 1), (4, 0, 3)]:
        g = family1(delta, x, y)
        assert g.n == delta * x + (delta + 1) * y + 1
        assert g.m == delta * (delta + 1) // 2 * x + (delta + 1) * (delta + 2) // 2 * y
        assert g.n % 2 == 0
        assert g.min_degree() >= delta
        # the dominating vertex reaches everything
        assert g.degree(g.n - 1) == g.n - 1


def test_family1_requires_odd_y():
    with pytest.raises(ValueError, match="odd y"):
        family1(2, 1, 2)


def test_family2_counts():
    g = family2(2, 6)
    assert g.m == 9
    g = family2(2, 12)
    assert g.m == (2 + 1) * (12 - 2 - 1)
    with pytest.raises(ValueError, match="even"):
        family2(2, 9)
    with pytest.raises(ValueError):
        family2(4, 8)


def test_petersen_shape():
    g = petersen()
    assert (g.n, g.m) == (10, 15)
    assert all(d == 3 for d in g.degrees())


def test_random_min_degree_verified():
    for seed in range(5):
        g = random_min_degree(60, 100, delta=2, seed=seed)
        assert g.min_degree() >= 2
        assert g.m == 100
    g = random_min_degree(50, 130, delta=4, seed=1)
    assert g.min_degree() >= 4


def test_random_min_degree_rejects_small_m():
    with pytest.raises(ValueError):
        random_min_degree(50, 10, delta=2, seed=0)


def test_random_max_degree():
    g = random_max_degree(40, 3, seed=2)
    assert g.max_degree() <= 3


def test_random_regular():
    g = random_regular(12, 3, seed=3)
    assert all(d == 3 for d in g.degrees())
    with pytest.raises(ValueError):
        random_regular(7, 3, seed=0)


def test_generate_dispatch_and_determinism():
    a = generate(GeneratorSpec.parse("random_min_degree:n=30,m=50,delta=2,seed=7"))
    b = generate(GeneratorSpec.parse("random_min_degree:n=30,m=50,delta=2,seed=7"))
    assert a == b
    c = generate(GeneratorSpec.parse("complete_bipartite:a=2,b=4"))
    assert c == complete_bipartite(2, 4)
