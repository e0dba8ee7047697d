import itertools
import random

import pytest

from ecsolver.graphs import parse_graph_spec
from ecsolver.rules import (
    GameState,
    Move,
    apply_move,
    initial_state,
    legal_moves,
    terminal_status,
    variant_from_name,
    ONGOING,
)
from ecsolver.statespace import (
    CanonicalizationPolicy,
    Canonicalizer,
    FULL_REDUCTION,
    NO_REDUCTION,
    canonicalize,
    decode,
    effective_policy,
    encode,
    enumerate_group,
    key_bit_width,
    permute_state,
)

A = variant_from_name("a")


def random_states(g, cfg, k, seed, games=30, per_game=12):
    """Sample reachable states by random play."""
    rng = random.Random(seed)
    out = []
    for _ in range(games):
        s = initial_state(g, k, cfg)
        out.append(s)
        for _ in range(per_game):
            if terminal_status(g, s, cfg).kind != ONGOING:
                break
            s = apply_move(g, s, rng.choice(legal_moves(g, s, cfg)), cfg)
            out.append(s)
    return out


def test_roundtrip_simple():
    g = parse_graph_spec("path:3")
    s = GameState(3, (2, 1, 2), 0b010, 1, False, 0, None)
    assert decode(encode(s, A), g, 3, A) == s


def test_roundtrip_random_states_all_variants():
    for spec, name, k in [
        ("path:4", "a", 3),
        ("star:3", "game2", 3),
        ("cycle:4", "ordered:r1", 3),
        ("path:3", "single-round:greedy", 2),
    ]:
        g = parse_graph_spec(spec)
        cfg = variant_from_name(name)
        for s in random_states(g, cfg, k, seed=13):
            assert decode(encode(s, cfg), g, k, cfg) == s


def test_uncolored_encodes_as_zero_digit():
    g = parse_graph_spec("path:3")
    s = initial_state(g, 3, A)
    # all-zero colors put nothing in the color plane
    t = decode(encode(s, A), g, 3, A)
    assert t.colors == (0, 0, 0)


def test_injective_on_reachable_p4():
    g = parse_graph_spec("path:4")
    seen = {}
    frontier = [initial_state(g, 3, A)]
    visited = {frontier[0]}
    while frontier:
        s = frontier.pop()
        key = encode(s, A)
        assert seen.setdefault(key, s) == s
        if terminal_status(g, s, A).kind != ONGOING:
            continue
        for m in legal_moves(g, s, A):
            t = apply_move(g, s, m, A)
            if t not in visited:
                visited.add(t)
                frontier.append(t)
    assert len(seen) == len(visited)
    assert len(visited) > 100


def test_malformed_keys_rejected():
    g = parse_graph_spec("path:3")
    huge = encode(GameState(3, (3, 1, 3), 0b011, 1, False, 0, None), A) + (1 << 40)
    with pytest.raises(ValueError):
        decode(huge, g, 3, A)
    with pytest.raises(ValueError):
        decode(-1, g, 3, A)


def test_key_width_bound_for_suite_scale():
    for n, k in [(8, 6), (8, 4), (7, 7), (6, 5)]:
        assert key_bit_width(n, k) <= 192


def test_relabel_example():
    g = parse_graph_spec("path:3")
    s = GameState(3, (2, 1, 2), 0b010, 1, False, 0, None)
    c = canonicalize(g, s, A, CanonicalizationPolicy(True, False))
    assert c.colors == (1, 2, 1)
    assert c.moved == s.moved


def test_equal_color_leaf_swaps_share_a_key():
    g = parse_graph_spec("star:4")
    base = GameState(3, (1, 3, 3, 2, 2), 0b00010, 0, False, 0, None)
    swapped = GameState(3, (1, 3, 3, 2, 2), 0b00100, 0, False, 0, None)
    # leaves 1,2 share color 3: swapping which of them moved is an automorphism
    pol = CanonicalizationPolicy(False, True)
    assert canonicalize(g, base, A, pol) == canonicalize(g, swapped, A, pol)


def full_vertex_group(g):
    gens = g.generators()
    group = enumerate_group(g.n, gens) if gens else [tuple(range(g.n))]
    assert group is not None
    return group


def color_perm_state(s, perm):
    # perm: dict over 1..k
    colors = tuple(perm[c] if c else 0 for c in s.colors)
    palette = 0
    for c in range(1, s.k + 1):
        if s.palette >> c & 1:
            palette |= 1 << perm[c]
    return s._replace(colors=colors, palette=palette)


def brute_canonical(g, s, cfg, policy):
    eff = effective_policy(policy, cfg)
    vgroup = full_vertex_group(g) if eff.orbit_reduce else [tuple(range(g.n))]
    best = None
    for vperm in vgroup:
        t = permute_state(s, vperm)
        if eff.color_relabel:
            for cperm in itertools.permutations(range(1, s.k + 1)):
                mapping = {c: cperm[c - 1] for c in range(1, s.k + 1)}
                u = color_perm_state(t, mapping)
                key = encode(u, cfg)
                if best is None or key < best[0]:
                    best = (key, u)
        else:
            key = encode(t, cfg)
            if best is None or key < best[0]:
                best = (key, t)
    return best[1]


@pytest.mark.parametrize(
    "spec,variant,k",
    [
        ("star:3", "a", 3),
        ("star:4", "a", 3),
        ("path:3", "a", 3),
        ("cycle:4", "a", 3),
        ("biclique:2,2", "a", 3),
        ("complete:3", "a", 3),
        ("star:3", "game2", 3),
        ("biclique:2,2", "game2", 3),
        ("star:3", "ordered:r1", 3),
        ("star:4", "greedy", 3),
        ("cycle:4", "very-greedy", 3),
    ],
)
def test_canonical_matches_bruteforce(spec, variant, k):
    g = parse_graph_spec(spec)
    cfg = variant_from_name(variant)
    for s in random_states(g, cfg, k, seed=hash((spec, variant)) & 0xFFFF, games=25):
        mine = canonicalize(g, s, cfg, FULL_REDUCTION)
        brute = brute_canonical(g, s, cfg, FULL_REDUCTION)
        assert mine == brute


@pytest.mark.parametrize("policy", [
    CanonicalizationPolicy(True, True),
    CanonicalizationPolicy(True, False),
    CanonicalizationPolicy(False, True),
    CanonicalizationPolicy(False, False),
])
def test_canonicalize_idempotent(policy):
    for spec, variant, k in [
        ("star:4", "a", 3),
        ("biclique:2,2", "game2", 3),
        ("cycle:5", "a", 3),
        ("path:4", "ordered:r1", 3),
    ]:
        g = parse_graph_spec(spec)
        cfg = variant_from_name(variant)
        for s in random_states(g, cfg, k, seed=99, games=15):
            c = canonicalize(g, s, cfg, policy)
            assert canonicalize(g, c, cfg, policy) == c


def test_canonicalize_constant_on_orbits():
    g = parse_graph_spec("star:4")
    cfg = variant_from_name("a")
    rng = random.Random(4)
    group = full_vertex_group(g)
    for s in random_states(g, cfg, 3, seed=21, games=15):
        c = canonicalize(g, s, cfg, FULL_REDUCTION)
        for _ in range(5):
            vperm = rng.choice(group)
            cperm = list(range(1, 4))
            rng.shuffle(cperm)
            mapping = {i + 1: cperm[i] for i in range(3)}
            moved_state = color_perm_state(permute_state(s, vperm), mapping)
            assert canonicalize(g, moved_state, cfg, FULL_REDUCTION) == c


def test_policy_forced_off_for_greedy_and_fixed_order():
    greedy = variant_from_name("greedy")
    eff = effective_policy(FULL_REDUCTION, greedy)
    assert not eff.color_relabel and eff.orbit_reduce
    fixed = variant_from_name("ordered:1,0,2", n=3)
    eff = effective_policy(FULL_REDUCTION, fixed)
    assert eff.color_relabel and not eff.orbit_reduce


def test_greedy_canonicalization_preserves_colors():
    g = parse_graph_spec("star:4")
    cfg = variant_from_name("greedy")
    for s in random_states(g, cfg, 3, seed=77, games=10):
        c = canonicalize(g, s, cfg, FULL_REDUCTION)
        assert sorted(c.colors) == sorted(s.colors)


def test_group_enumeration_cap():
    gens = [tuple(range(1, 9)) + (0,)]  # 9-cycle -> group of 9
    assert len(enumerate_group(9, gens)) == 9
    assert enumerate_group(9, gens, cap=5) is None


def test_no_reduction_is_identity():
    g = parse_graph_spec("star:4")
    cz = Canonicalizer(g, A, NO_REDUCTION)
    s = GameState(3, (1, 3, 3, 2, 2), 0b00110, 0, False, 0, None)
    assert cz(s) == s
