import pytest

from ecsolver.graphs import (
    Graph,
    GraphSpecError,
    chromatic_number,
    coloring_number,
    enumerate_connected_graphs,
    enumerate_trees,
    is_connected,
    max_degree,
    parse_graph_spec,
    vertex_orbits,
    with_computed_symmetry,
)


def test_star_shape():
    g = parse_graph_spec("star:3")
    assert g.n == 4
    assert g.degree(0) == 3
    assert all(g.degree(v) == 1 for v in range(1, 4))


def test_path3_matches_worked_example():
    g = parse_graph_spec("path:3")
    assert g.n == 3
    assert g.edges() == [(0, 1), (1, 2)]


def test_biclique44():
    g = parse_graph_spec("biclique:4,4")
    assert g.n == 8
    assert g.edge_count() == 16


def test_grid_and_caterpillar_shapes():
    g = parse_graph_spec("grid:2,3")
    assert g.n == 6
    assert g.edge_count() == 7
    cat = parse_graph_spec("caterpillar:3,1,0,2")
    assert cat.n == 6
    assert cat.edge_count() == 5
    assert is_connected(cat)


@pytest.mark.parametrize(
    "spec",
    ["path:0", "nonsense", "star:-1", "cycle:2", "grid:x,y", "caterpillar:2,1"],
)
def test_bad_specs_rejected(spec):
    with pytest.raises(GraphSpecError):
        parse_graph_spec(spec)


def test_file_graph(tmp_path):
    p = tmp_path / "g.edges"
    p.write_text("# a triangle with a tail\n0 1\n1 2\n2 0\n2 3\n1 2\n")
    g = parse_graph_spec(f"file:{p}")
    assert g.n == 4
    assert g.edge_count() == 4  # duplicate edge collapsed


def test_file_graph_self_loop_rejected(tmp_path):
    p = tmp_path / "bad.edges"
    p.write_text("0 0\n")
    with pytest.raises(GraphSpecError):
        parse_graph_spec(f"file:{p}")


def test_max_degree():
    assert max_degree(parse_graph_spec("path:4")) == 2
    assert max_degree(parse_graph_spec("star:7")) == 7
    assert max_degree(parse_graph_spec("cycle:5")) == 2


def test_chromatic_number():
    assert chromatic_number(parse_graph_spec("complete:5")) == 5
    assert chromatic_number(parse_graph_spec("cycle:5")) == 3
    assert chromatic_number(parse_graph_spec("biclique:4,4")) == 2


def test_coloring_number():
    assert coloring_number(parse_graph_spec("biclique:3,3")) == 4
    assert coloring_number(parse_graph_spec("biclique:4,4")) == 5
    assert coloring_number(parse_graph_spec("path:4")) == 2
    assert coloring_number(parse_graph_spec("complete:1")) == 1


def test_invariant_chain_on_suite_graphs():
    for spec in ["path:5", "cycle:6", "complete:4", "star:5", "biclique:2,4", "grid:2,3"]:
        g = parse_graph_spec(spec)
        assert chromatic_number(g) <= coloring_number(g) <= max_degree(g) + 1


def test_enumerate_connected_counts():
    # counts cross-checked by brute force over labeled graphs (see below)
    assert len(enumerate_connected_graphs(1)) == 1
    assert len(enumerate_connected_graphs(2)) == 1
    assert len(enumerate_connected_graphs(3)) == 2
    assert len(enumerate_connected_graphs(4)) == 6
    assert len(enumerate_connected_graphs(5)) == 21


def _brute_connected_class_count(n: int) -> int:
    # independent oracle: enumerate all labeled graphs, dedup by the minimum
    # adjacency string over all permutations
    import itertools

    pairs = list(itertools.combinations(range(n), 2))
    classes = set()
    for mask in range(1 << len(pairs)):
        adj = [0] * n
        for i, (u, v) in enumerate(pairs):
            if mask >> i & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        g = Graph(n=n, adj=tuple(adj))
        if not is_connected(g):
            continue
        best = None
        for perm in itertools.permutations(range(n)):
            bits = tuple(
                (adj[perm[i]] >> perm[j]) & 1 for i in range(n) for j in range(i)
            )
            if best is None or bits < best:
                best = bits
        classes.add(best)
    return len(classes)


@pytest.mark.parametrize("n,expected", [(2, 1), (3, 2), (4, 6)])
def test_enumeration_against_bruteforce(n, expected):
    assert _brute_connected_class_count(n) == expected
    assert len(enumerate_connected_graphs(n)) == expected


def test_enumerated_graphs_connected_and_distinct():
    graphs = enumerate_connected_graphs(5)
    assert all(is_connected(g) for g in graphs)
    from ecsolver.graphs import _canonical_key

    keys = {_canonical_key(g.n, g.adj) for g in graphs}
    assert len(keys) == len(graphs)


def test_tree_counts():
    expected = {1: 1, 2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11}
    for n, count in expected.items():
        trees = enumerate_trees(n)
        assert len(trees) == count
        assert all(g.edge_count() == n - 1 and is_connected(g) for g in trees)


def test_vertex_orbits_families():
    star5 = parse_graph_spec("star:5")
    assert vertex_orbits(star5) == [[0], [1, 2, 3, 4, 5]]
    p4 = parse_graph_spec("path:4")
    assert vertex_orbits(p4) == [[0, 3], [1, 2]]
    knn = parse_graph_spec("biclique:3,3")
    assert vertex_orbits(knn) == [[0, 1, 2, 3, 4, 5]]
    kmn = parse_graph_spec("biclique:2,3")
    assert vertex_orbits(kmn) == [[0, 1], [2, 3, 4]]


def test_vertex_orbits_computed_and_discrete(tmp_path):
    p = tmp_path / "tail.edges"
    p.write_text("0 1\n1 2\n2 0\n2 3\n")
    g = parse_graph_spec(f"file:{p}")
    assert vertex_orbits(g) == [[0, 1], [2], [3]]

    # 12 asymmetric-ish vertices, above the search cutoff: discrete fallback
    edges = "\n".join(f"{i} {i + 1}" for i in range(11))
    big = tmp_path / "big.edges"
    big.write_text(edges + "\n0 2\n")
    bg = parse_graph_spec(f"file:{big}")
    assert bg.n == 12
    assert vertex_orbits(bg) == [[v] for v in range(12)]


def test_computed_symmetry_generators_validated():
    g = with_computed_symmetry(enumerate_connected_graphs(4)[0])
    for perm in g.rigid_autos:
        assert sorted(perm) == list(range(g.n))


def test_declared_symmetry_is_checked():
    with pytest.raises(GraphSpecError):
        Graph(n=3, adj=(0b010, 0b101, 0b010), swap_classes=((0, 1),))
