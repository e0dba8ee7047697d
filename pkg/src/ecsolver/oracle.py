"""Deliberately naive reference solver for tiny instances.

No packing, no symmetry reduction, no predecessor counters: raw states in a
dict and a quadratic value iteration rescanning until nothing changes.  Move
generation is shared with the rules module (the rules are the single
specification under test); everything the main solver adds on top of the
rules -- encoding, canonicalization, the counted fixpoint -- is exercised by
comparing winners against this module.
"""

from __future__ import annotations

from .graphs import Graph
from .rules import (
    BOB,
    BOB_WINS,
    ONGOING,
    VariantConfig,
    _apply_unchecked,
    _moves_unchecked,
    initial_state,
    terminal_status,
)

ORACLE_BUDGET = 10_000_000


class OracleBudgetExceeded(RuntimeError):
    pass


def naive_value(g: Graph, k: int, cfg: VariantConfig, budget: int = ORACLE_BUDGET) -> str:
    """Winner ("alice" or "bob") by explicit enumeration and full rescans."""
    init = initial_state(g, k, cfg)
    states = [init]
    index = {init: 0}
    succs: list[list[int] | None] = []
    bob_moves: list[bool] = []

    i = 0
    while i < len(states):
        s = states[i]
        bob_moves.append(s.mover == BOB)
        status = terminal_status(g, s, cfg)
        if status.kind != ONGOING:
            succs.append(None if status.kind == BOB_WINS else [])
        else:
            row = []
            for m in _moves_unchecked(g, s, cfg):
                t = _apply_unchecked(s, m, cfg)
                j = index.get(t)
                if j is None:
                    j = len(states)
                    if j >= budget:
                        raise OracleBudgetExceeded(f"more than {budget} raw states")
                    index[t] = j
                    states.append(t)
                row.append(j)
            succs.append(row)
        i += 1

    total = len(states)
    won = bytearray(total)
    for i in range(total):
        if succs[i] is None:
            won[i] = 1
    undecided = [i for i in range(total) if not won[i] and succs[i]]
    changed = True
    while changed:
        changed = False
        still = []
        for i in undecided:
            row = succs[i]
            if bob_moves[i]:
                hit = any(won[j] for j in row)
            else:
                hit = all(won[j] for j in row)
            if hit:
                won[i] = 1
                changed = True
            else:
                still.append(i)
        undecided = still
    return "bob" if won[0] else "alice"


def check_agreement(g: Graph, k: int, cfg: VariantConfig, budget: int = ORACLE_BUDGET) -> bool:
    """True when the naive winner matches the main solver's winner."""
    from .solver import alice_wins

    return naive_value(g, k, cfg, budget) == alice_wins(g, k, cfg)[0]
