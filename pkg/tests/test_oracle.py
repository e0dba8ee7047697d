import pytest

from ecsolver.graphs import enumerate_connected_graphs, parse_graph_spec
from ecsolver.oracle import OracleBudgetExceeded, check_agreement, naive_value
from ecsolver.rules import variant_from_name


def test_known_values():
    a = variant_from_name("a")
    assert naive_value(parse_graph_spec("path:3"), 3, a) == "alice"
    assert naive_value(parse_graph_spec("complete:3"), 3, a) == "bob"
    assert naive_value(parse_graph_spec("complete:3"), 4, a) == "alice"
    assert naive_value(parse_graph_spec("path:3"), 3, variant_from_name("b-prime")) == "bob"
    assert naive_value(parse_graph_spec("cycle:5"), 3, variant_from_name("strong")) == "alice"


def test_budget_guard():
    with pytest.raises(OracleBudgetExceeded):
        naive_value(parse_graph_spec("path:4"), 3, variant_from_name("a"), budget=5)


def test_agreement_spot_checks():
    for spec, k, variant in [
        ("path:4", 3, "a"),
        ("path:4", 2, "b"),
        ("star:3", 4, "a"),
        ("star:3", 3, "game2"),
        ("star:4", 3, "greedy"),
        ("cycle:4", 3, "very-greedy"),
        ("cycle:5", 3, "strong"),
        ("path:4", 2, "single-round:free"),
        ("path:3", 3, "ordered:r1"),
        ("star:3", 3, "a-prime"),
    ]:
        g = parse_graph_spec(spec)
        cfg = variant_from_name(variant)
        assert check_agreement(g, k, cfg), (spec, k, variant)


def test_agreement_small_connected_sample():
    a = variant_from_name("a")
    for g in enumerate_connected_graphs(4):
        for k in (2, 3):
            assert check_agreement(g, k, a), (g.label, k)
