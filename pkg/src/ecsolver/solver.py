"""Reachable-arena exploration and exact safety-game solving.

The solver explores the forward closure of the canonicalized initial state,
then computes Bob's attractor backward: a state belongs to the attractor
when Bob (to move) has some successor inside it, or Alice (to move) has all
successors inside it; Bob-win terminals seed the set at rank 0.  A state's
rank is the fixpoint iteration at which it joined, an upper bound on Bob's
forced win distance in moves.  Everything outside the attractor is safe for
Alice: she owns a strategy that survives forever.

Exploration and the fixpoint are deterministic: moves are generated vertex-
then color-ascending, states are processed in insertion order, and ties in
best-move extraction break on that same move order.
"""

from __future__ import annotations

import time
from array import array
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graphs import Graph, max_degree
from .rules import (
    ALICE,
    ALICE_WINS_ROUND,
    BOB,
    BOB_WINS,
    ONGOING,
    GameState,
    Move,
    VariantConfig,
    _apply_unchecked,
    _palette_mask,
    initial_state,
    rule_color_mask,
    scan_position,
)
from .statespace import Canonicalizer, CanonicalizationPolicy, FULL_REDUCTION

DEFAULT_BUDGET = 200_000_000


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int, label: str = ""):
        super().__init__(f"state budget {budget} exceeded{' on ' + label if label else ''}")
        self.budget = budget


@dataclass
class Arena:
    graph: Graph
    k: int
    cfg: VariantConfig
    policy: CanonicalizationPolicy
    states: list[GameState]
    index: dict[GameState, int]
    term: bytearray  # ONGOING / BOB_WINS / ALICE_WINS_ROUND per state
    movers: bytearray
    succ_off: array
    succ_tgt: array
    succ_move: array  # vertex << 8 | color
    canon: Canonicalizer

    @property
    def n_states(self) -> int:
        return len(self.states)

    @property
    def n_edges(self) -> int:
        return len(self.succ_tgt)

    def successors(self, i: int):
        lo, hi = self.succ_off[i], self.succ_off[i + 1]
        return zip(self.succ_move[lo:hi], self.succ_tgt[lo:hi], range(lo, hi))

    def state_index(self, s: GameState) -> int | None:
        return self.index.get(self.canon(s))


@dataclass
class StatusTable:
    in_attr: bytearray
    rank: array
    best_edge: array  # edge id per state, -1 when terminal
    iterations: int
    attractor_size: int


def explore(
    g: Graph,
    k: int,
    cfg: VariantConfig,
    policy: CanonicalizationPolicy = FULL_REDUCTION,
    budget: int = DEFAULT_BUDGET,
) -> Arena:
    """Forward closure from the canonical initial state."""
    canon = Canonicalizer(g, cfg, policy)
    s0 = canon(initial_state(g, k, cfg))
    states = [s0]
    index: dict[GameState, int] = {s0: 0}
    term = bytearray()
    movers = bytearray()
    succ_off = array("q", [0])
    succ_tgt = array("i")
    succ_move = array("i")
    rules = (cfg.alice_rule, cfg.bob_rule)
    index_get = index.get

    i = 0
    while i < len(states):
        s = states[i]
        kind, _, pairs = scan_position(g, s, cfg)
        term.append(kind)
        movers.append(s.mover)
        if kind == ONGOING:
            rule = rules[s.mover]
            pal = _palette_mask(s, cfg) if rule == "palette" else 0
            for v, base in pairs:
                mask = rule_color_mask(base, rule, pal)
                while mask:
                    low = mask & -mask
                    mask ^= low
                    c = low.bit_length() - 1
                    child = canon(_apply_unchecked(s, (v, c), cfg))
                    j = index_get(child)
                    if j is None:
                        j = len(states)
                        if j >= budget:
                            raise BudgetExceeded(budget, g.label)
                        index[child] = j
                        states.append(child)
                    succ_tgt.append(j)
                    succ_move.append(v << 8 | c)
        succ_off.append(len(succ_tgt))
        i += 1
    return Arena(g, k, cfg, policy, states, index, term, movers, succ_off, succ_tgt, succ_move, canon)


def solve_attractor(arena: Arena, cfg: VariantConfig | None = None) -> StatusTable:
    """Backward fixpoint with predecessor counting, then best-move extraction."""
    n = arena.n_states
    term = arena.term
    movers = arena.movers
    off = np.frombuffer(arena.succ_off, dtype=np.int64)
    tgt = np.frombuffer(arena.succ_tgt, dtype=np.int32) if arena.n_edges else np.zeros(0, np.int32)

    outdeg = np.diff(off)
    # predecessor CSR: edges grouped by target, storing the source state
    indeg = np.bincount(tgt, minlength=n) if len(tgt) else np.zeros(n, np.int64)
    poff = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(indeg, out=poff[1:])
    if len(tgt):
        src = np.repeat(np.arange(n, dtype=np.int32), outdeg)
        order = np.argsort(tgt, kind="stable")
        pred = src[order]
    else:
        pred = np.zeros(0, np.int32)

    in_attr = bytearray(n)
    rank = array("i", [-1]) * n
    counter = outdeg.copy()

    queue: deque[int] = deque()
    for i in range(n):
        if term[i] == BOB_WINS:
            in_attr[i] = 1
            rank[i] = 0
            queue.append(i)
    while queue:
        x = queue.popleft()
        rx = rank[x]
        for e in range(poff[x], poff[x + 1]):
            p = int(pred[e])
            if in_attr[p]:
                continue
            if movers[p] == BOB:
                in_attr[p] = 1
                rank[p] = rx + 1
                queue.append(p)
            else:
                counter[p] -= 1
                if counter[p] == 0:
                    in_attr[p] = 1
                    rank[p] = rx + 1
                    queue.append(p)

    attractor_size = sum(in_attr)
    iterations = max((rank[i] for i in range(n) if in_attr[i]), default=0)
    best_edge = _extract_best(arena, in_attr, rank)
    return StatusTable(in_attr, rank, best_edge, iterations, attractor_size)


def _extract_best(arena: Arena, in_attr: bytearray, rank: array) -> array:
    """Per-state recommended edge.

    Safe Alice: first safe successor.  Attracted Bob: minimal-rank successor
    in the attractor.  Attracted Alice: maximal rank (stalling).  Safe Bob:
    the successor giving Alice the fewest safe replies, as a needling
    heuristic.  Ties always break on move order.
    """
    n = arena.n_states
    term = arena.term
    movers = arena.movers
    off = arena.succ_off
    tgt = arena.succ_tgt
    best = array("i", [-1]) * n

    safe_replies = array("i", [0]) * n
    for i in range(n):
        if term[i] == ONGOING and movers[i] == ALICE and not in_attr[i]:
            safe_replies[i] = sum(
                1 for e in range(off[i], off[i + 1]) if not in_attr[tgt[e]]
            )

    for i in range(n):
        if term[i] != ONGOING:
            continue
        lo, hi = off[i], off[i + 1]
        if not in_attr[i]:
            if movers[i] == ALICE:
                for e in range(lo, hi):
                    if not in_attr[tgt[e]]:
                        best[i] = e
                        break
            else:
                pick, pick_score = -1, None
                for e in range(lo, hi):
                    j = tgt[e]
                    score = safe_replies[j] if term[j] == ONGOING else 0
                    if pick_score is None or score < pick_score:
                        pick, pick_score = e, score
                best[i] = pick
        else:
            if movers[i] == BOB:
                pick, pick_rank = -1, None
                for e in range(lo, hi):
                    j = tgt[e]
                    if in_attr[j] and (pick_rank is None or rank[j] < pick_rank):
                        pick, pick_rank = e, rank[j]
                best[i] = pick
            else:
                pick, pick_rank = -1, None
                for e in range(lo, hi):
                    j = tgt[e]
                    if pick_rank is None or rank[j] > pick_rank:
                        pick, pick_rank = e, rank[j]
                best[i] = pick
    return best


def verify_statuses(arena: Arena, table: StatusTable) -> int:
    """Re-check the fixpoint conditions state by state; returns violations."""
    bad = 0
    in_attr, rank = table.in_attr, table.rank
    for i in range(arena.n_states):
        kind = arena.term[i]
        if kind == BOB_WINS:
            bad += not (in_attr[i] and rank[i] == 0)
            continue
        if kind == ALICE_WINS_ROUND:
            bad += bool(in_attr[i])
            continue
        succ = [arena.succ_tgt[e] for e in range(arena.succ_off[i], arena.succ_off[i + 1])]
        if not succ:
            bad += 1  # ongoing states must have moves
            continue
        inside = [bool(in_attr[j]) for j in succ]
        if arena.movers[i] == BOB:
            expected = any(inside)
        else:
            expected = all(inside)
        if bool(in_attr[i]) != expected:
            bad += 1
            continue
        if in_attr[i]:
            ranks = [rank[j] for j in succ if in_attr[j]]
            target = min(ranks) if arena.movers[i] == BOB else max(ranks)
            if rank[i] != target + 1:
                bad += 1
    return bad


def best_move(arena: Arena, table: StatusTable, s: GameState) -> Move:
    i = arena.state_index(s)
    if i is None:
        raise KeyError("state not in solved arena")
    e = table.best_edge[i]
    if e < 0:
        raise ValueError("no move recommendation at a terminal state")
    packed = arena.succ_move[e]
    return Move(packed >> 8, packed & 0xFF)


# --- playout certificates ----------------------------------------------------


def certify_alice_safe(
    arena: Arena, table: StatusTable, playouts: int = 100, seed: int = 0,
    min_rounds: int | None = None,
) -> int:
    """Engine-Alice versus random Bob; returns the least rounds survived.

    Raises AssertionError if any playout hits a Bob win within the bound.
    """
    import random

    n_vertices = arena.graph.n
    bound = min_rounds if min_rounds is not None else 3 * n_vertices
    rng = random.Random(seed)
    least = bound
    assert not table.in_attr[0], "initial state is not Alice-safe"
    for _ in range(playouts):
        i = 0
        rounds = 0
        while rounds < bound:
            if arena.term[i] == BOB_WINS:
                raise AssertionError("random Bob defeated the safe engine")
            if arena.term[i] == ALICE_WINS_ROUND:
                break
            lo, hi = arena.succ_off[i], arena.succ_off[i + 1]
            if arena.movers[i] == ALICE:
                e = table.best_edge[i]
            else:
                e = rng.randrange(lo, hi)
            source = arena.states[i]
            i = arena.succ_tgt[e]
            if bin(source.moved).count("1") == n_vertices - 1:
                rounds += 1
        least = min(least, rounds)
    return least


def certify_bob_win(
    arena: Arena, table: StatusTable, playouts: int = 100, seed: int = 0
) -> int:
    """Engine-Bob versus random Alice; returns the worst win length in moves.

    Raises AssertionError if any playout exceeds the recorded rank.
    """
    import random

    rng = random.Random(seed)
    assert table.in_attr[0], "initial state is not Bob-attracted"
    bound = table.rank[0]
    worst = 0
    for _ in range(playouts):
        i = 0
        moves = 0
        while arena.term[i] != BOB_WINS:
            if moves > bound:
                raise AssertionError("engine Bob failed to win within its rank")
            lo, hi = arena.succ_off[i], arena.succ_off[i + 1]
            if arena.movers[i] == BOB:
                e = table.best_edge[i]
            else:
                e = rng.randrange(lo, hi)
            i = arena.succ_tgt[e]
            moves += 1
        if moves > bound:
            raise AssertionError("engine Bob failed to win within its rank")
        worst = max(worst, moves)
    return worst


# --- top-level solving -------------------------------------------------------


@dataclass
class SolveStats:
    winner: str
    states: int
    edges: int
    attractor: int
    iterations: int
    ms: float
    initial_rank: int


def alice_wins(
    g: Graph,
    k: int,
    cfg: VariantConfig,
    policy: CanonicalizationPolicy = FULL_REDUCTION,
    budget: int = DEFAULT_BUDGET,
) -> tuple[str, SolveStats]:
    started = time.perf_counter()
    arena = explore(g, k, cfg, policy, budget)
    table = solve_attractor(arena)
    winner = "bob" if table.in_attr[0] else "alice"
    ms = (time.perf_counter() - started) * 1000
    stats = SolveStats(
        winner, arena.n_states, arena.n_edges, table.attractor_size,
        table.iterations, ms, table.rank[0],
    )
    return winner, stats


def solve(
    g: Graph,
    k: int,
    cfg: VariantConfig,
    policy: CanonicalizationPolicy = FULL_REDUCTION,
    budget: int = DEFAULT_BUDGET,
) -> tuple[Arena, StatusTable]:
    arena = explore(g, k, cfg, policy, budget)
    return arena, solve_attractor(arena)


@dataclass
class KRow:
    k: int
    winner: str  # "alice" | "bob" | "aborted"
    states: int = 0
    attractor: int = 0
    iterations: int = 0
    ms: float = 0.0


@dataclass
class SolveReport:
    graph_label: str
    variant: str
    rows: list[KRow] = field(default_factory=list)
    chi: int | None = None
    profile_warning: bool = False
    warnings: list[str] = field(default_factory=list)

    def to_json_dict(self, with_timing: bool = True) -> dict:
        rows = []
        for r in self.rows:
            row = {
                "k": r.k,
                "winner": r.winner,
                "states": r.states,
                "attractor": r.attractor,
                "iters": r.iterations,
            }
            if with_timing:
                row["ms"] = round(r.ms, 3)
            rows.append(row)
        return {
            "schema": 1,
            "graph": self.graph_label,
            "variant": self.variant,
            "rows": rows,
            "chi": self.chi,
            "warnings": self.warnings,
        }


def chi_sweep(
    g: Graph,
    cfg: VariantConfig,
    k_min: int = 1,
    k_max: int | None = None,
    policy: CanonicalizationPolicy = FULL_REDUCTION,
    budget: int = DEFAULT_BUDGET,
    stop_at_first_win: bool = True,
) -> SolveReport:
    """Solve k_min..k_max and report the least k where Alice wins.

    No vertex can be stuck with max_degree+2 colors, so that is the default
    sweep ceiling for every variant.  The minimum winning k is final as soon
    as it is seen, so the sweep stops there by default; a full sweep also
    flags win profiles that are not monotone in k.
    """
    if k_max is None:
        k_max = max_degree(g) + 2
    if k_min > k_max:
        raise ValueError("empty color range")
    report = SolveReport(g.label, cfg.display_name())
    for k in range(k_min, k_max + 1):
        try:
            winner, stats = alice_wins(g, k, cfg, policy, budget)
        except BudgetExceeded:
            report.rows.append(KRow(k, "aborted"))
            report.warnings.append(f"k={k} aborted: state budget exceeded")
            continue
        report.rows.append(
            KRow(k, winner, stats.states, stats.attractor, stats.iterations, stats.ms)
        )
        if winner == "alice":
            if report.chi is None:
                report.chi = k
            if stop_at_first_win:
                break
    wins = [r.winner == "alice" for r in report.rows if r.winner != "aborted"]
    if True in wins and False in wins[wins.index(True):]:
        report.profile_warning = True
        report.warnings.append("win profile is not monotone in k")
    return report
