"""Exact move/terminal semantics for every coloring-game variant.

A game position is a :class:`GameState`; play proceeds in rounds in which
every vertex is chosen (colored or re-colored) exactly once.  A chosen
vertex must receive a color from ``1..k`` that differs from its current
color and from every neighbor color.  Bob wins when a chosen vertex cannot
be colored; in the eternal game Alice wins by surviving forever, in the
single-round game she wins once every vertex is properly colored.

Variant dimensions (see :class:`VariantConfig`):

* turn scheme -- global alternation starting with Alice (``a``) or Bob
  (``b``), or per-round restarts (``aprime``/``bprime``) where the starter
  moves first in every round.
* color rules -- ``free``; ``greedy`` (smallest legal color is forced);
  ``palette`` (Bob may only use colors already introduced, unless none is
  legal on his chosen vertex, in which case any fresh color is allowed).
* ``strong`` -- Bob must pick a re-colorable vertex while one exists; he
  wins only when the player to move has no colorable vertex at all.
* ``ordered`` -- vertices are chosen in a fixed per-round order (given up
  front, or frozen to whatever order round 1 used); players pick colors only.
* horizon -- ``eternal`` or ``single`` round.

All functions are pure; states are immutable and hashable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .graphs import Graph

ALICE = 0
BOB = 1
PLAYER_NAMES = ("alice", "bob")

ONGOING = 0
BOB_WINS = 1
ALICE_WINS_ROUND = 2


class IllegalMove(ValueError):
    """Raised when a move violates the current variant's rules."""


class Move(NamedTuple):
    vertex: int
    color: int


class GameState(NamedTuple):
    k: int
    colors: tuple[int, ...]
    moved: int
    mover: int
    round1: bool
    palette: int
    order: tuple[int, ...] | None  # per-vertex 1-based round-1 rank, 0 = unranked

    @property
    def n(self) -> int:
        return len(self.colors)


class TerminalStatus(NamedTuple):
    kind: int  # ONGOING / BOB_WINS / ALICE_WINS_ROUND
    reason: str | None = None
    vertex: int | None = None


_SCHEMES = ("a", "b", "aprime", "bprime")
_RULES = ("free", "greedy", "palette")


@dataclass(frozen=True)
class VariantConfig:
    scheme: str = "a"
    alice_rule: str = "free"
    bob_rule: str = "free"
    strong: bool = False
    ordered: tuple[int, ...] | str | None = None  # fixed permutation or "r1"
    horizon: str = "eternal"
    palette_mode: str = "introduced"  # "introduced" or "current"
    name: str = ""

    def __post_init__(self):
        if self.scheme not in _SCHEMES:
            raise ValueError(f"unknown scheme {self.scheme!r}")
        if self.alice_rule not in ("free", "greedy"):
            raise ValueError(f"bad alice rule {self.alice_rule!r}")
        if self.bob_rule not in _RULES:
            raise ValueError(f"bad bob rule {self.bob_rule!r}")
        if self.horizon not in ("eternal", "single"):
            raise ValueError(f"bad horizon {self.horizon!r}")
        if self.palette_mode not in ("introduced", "current"):
            raise ValueError(f"bad palette mode {self.palette_mode!r}")
        if self.ordered is not None and self.ordered != "r1":
            if sorted(self.ordered) != list(range(len(self.ordered))):
                raise ValueError("fixed order must be a permutation of all vertices")

    @property
    def starter(self) -> int:
        return ALICE if self.scheme in ("a", "aprime") else BOB

    @property
    def tracks_palette(self) -> bool:
        return self.bob_rule == "palette" and self.palette_mode == "introduced"

    @property
    def tracks_order(self) -> bool:
        return self.ordered == "r1"

    def display_name(self) -> str:
        return self.name or self.scheme


_BASE_VARIANTS = {
    "a": {},
    "b": {"scheme": "b"},
    "a-prime": {"scheme": "aprime"},
    "b-prime": {"scheme": "bprime"},
    "game2": {"bob_rule": "palette"},
    "greedy": {"bob_rule": "greedy"},
    "very-greedy": {"alice_rule": "greedy", "bob_rule": "greedy"},
    "strong": {"strong": True},
    "free": {},
}


def variant_from_name(name: str, n: int | None = None) -> VariantConfig:
    """Build a config from names like ``a``, ``game2``, ``single-round:greedy``,
    or ``ordered:r1`` / ``ordered:2,0,1``."""
    name = name.strip().lower()
    if name.startswith("single-round:"):
        base = variant_from_name(name.split(":", 1)[1], n)
        return VariantConfig(
            **{**_cfg_fields(base), "horizon": "single", "name": name}
        )
    if name.startswith("ordered:"):
        arg = name.split(":", 1)[1]
        if arg == "r1":
            ordered: tuple[int, ...] | str = "r1"
        else:
            perm = tuple(int(x) for x in arg.split(","))
            if n is not None and sorted(perm) != list(range(n)):
                raise ValueError(f"order {arg!r} is not a permutation of 0..{n - 1}")
            ordered = perm
        return VariantConfig(ordered=ordered, name=name)
    if name in _BASE_VARIANTS:
        return VariantConfig(**_BASE_VARIANTS[name], name=name)
    raise ValueError(f"unknown variant {name!r}")


def _cfg_fields(cfg: VariantConfig) -> dict:
    return {
        "scheme": cfg.scheme,
        "alice_rule": cfg.alice_rule,
        "bob_rule": cfg.bob_rule,
        "strong": cfg.strong,
        "ordered": cfg.ordered,
        "horizon": cfg.horizon,
        "palette_mode": cfg.palette_mode,
    }


VARIANT_NAMES = sorted(set(_BASE_VARIANTS) - {"free"}) + [
    "single-round:<base>",
    "ordered:<perm|r1>",
]


# --- state construction and transitions -------------------------------------


def initial_state(g: Graph, k: int, cfg: VariantConfig) -> GameState:
    if k < 1:
        raise ValueError("need at least one color")
    order = (0,) * g.n if cfg.tracks_order else None
    return GameState(
        k=k,
        colors=(0,) * g.n,
        moved=0,
        mover=cfg.starter,
        round1=True,
        palette=0,
        order=order,
    )


def available_vertices(s: GameState, cfg: VariantConfig) -> list[int]:
    """Vertices that may be chosen right now (a singleton under ordered play)."""
    n = len(s.colors)
    if cfg.ordered is None or (cfg.ordered == "r1" and s.round1):
        return [v for v in range(n) if not s.moved >> v & 1]
    pos = bin(s.moved).count("1") + 1
    if cfg.ordered == "r1":
        assert s.order is not None
        return [v for v in range(n) if s.order[v] == pos]
    return [cfg.ordered[pos - 1]]


def base_color_mask(g: Graph, s: GameState, v: int) -> int:
    """Colors in 1..k legal on v under the free rule, as a bitmask."""
    used = 0
    colors = s.colors
    row = g.adj[v]
    while row:
        low = row & -row
        used |= 1 << colors[low.bit_length() - 1]
        row ^= low
    mask = ((1 << (s.k + 1)) - 2) & ~used
    if colors[v]:
        mask &= ~(1 << colors[v])
    return mask


def _mask_colors(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _palette_mask(s: GameState, cfg: VariantConfig) -> int:
    if cfg.palette_mode == "introduced":
        return s.palette
    mask = 0
    for c in s.colors:
        if c:
            mask |= 1 << c
    return mask


def rule_color_mask(base: int, rule: str, palette_mask: int) -> int:
    """Restrict a free-rule color mask by the acting player's color rule."""
    if not base or rule == "free":
        return base
    if rule == "greedy":
        return base & -base
    inter = base & palette_mask
    return inter if inter else base


def legal_colors(
    g: Graph, s: GameState, v: int, cfg: VariantConfig, role: int | None = None
) -> list[int]:
    """Colors the acting player may put on v, ascending.

    Greedy restricts to the single smallest free-rule color; the palette
    rule intersects with the colors introduced so far but falls back to the
    fresh colors when the intersection is empty (Bob is then forced to
    introduce a new color).
    """
    if s.moved >> v & 1:
        raise IllegalMove(f"vertex {v} was already chosen this round")
    role = s.mover if role is None else role
    rule = cfg.alice_rule if role == ALICE else cfg.bob_rule
    base = base_color_mask(g, s, v)
    pal = _palette_mask(s, cfg) if rule == "palette" else 0
    return _mask_colors(rule_color_mask(base, rule, pal))


def scan_position(g: Graph, s: GameState, cfg: VariantConfig):
    """One pass per position: terminal decision plus free color masks.

    Returns ``(kind, detail, pairs)`` where pairs lists ``(vertex, base
    mask)`` for every available vertex and detail carries the Bob-win
    reason and stuck vertex.  A vertex is stuck when its free-rule mask is
    empty; greedy and palette rules restrict choice but never create
    stuckness.  A non-strong Bob wins as soon as any available vertex is
    stuck (he simply claims it); any player to move loses for Bob's
    benefit when every available vertex is stuck.
    """
    colors = s.colors
    if cfg.horizon == "single" and all(colors):
        return ALICE_WINS_ROUND, None, []
    full = (1 << (s.k + 1)) - 2
    adj = g.adj
    pairs = []
    stuck_first = None
    stuck_count = 0
    for v in available_vertices(s, cfg):
        used = 0
        row = adj[v]
        while row:
            low = row & -row
            used |= 1 << colors[low.bit_length() - 1]
            row ^= low
        base = full & ~used
        cv = colors[v]
        if cv:
            base &= ~(1 << cv)
        if not base:
            stuck_count += 1
            if stuck_first is None:
                stuck_first = v
        pairs.append((v, base))
    if stuck_first is not None:
        if s.mover == BOB and not cfg.strong:
            return BOB_WINS, ("bob_claims_stuck_vertex", stuck_first), pairs
        if stuck_count == len(pairs):
            return BOB_WINS, ("mover_has_no_move", stuck_first), pairs
    return ONGOING, None, pairs


def terminal_status(g: Graph, s: GameState, cfg: VariantConfig) -> TerminalStatus:
    """Decide whether the position is over (see :func:`scan_position`)."""
    kind, detail, _ = scan_position(g, s, cfg)
    if kind == BOB_WINS:
        return TerminalStatus(kind, detail[0], detail[1])
    return TerminalStatus(kind)


def legal_moves(g: Graph, s: GameState, cfg: VariantConfig) -> list[Move]:
    """All (vertex, color) moves for the player to move, vertex- then
    color-ascending.  Only valid on ongoing positions."""
    kind, _, pairs = scan_position(g, s, cfg)
    if kind != ONGOING:
        raise IllegalMove("no moves at a terminal position")
    return _moves_from_scan(s, cfg, pairs)


def _moves_unchecked(g: Graph, s: GameState, cfg: VariantConfig) -> list[Move]:
    _, _, pairs = scan_position(g, s, cfg)
    return _moves_from_scan(s, cfg, pairs)


def _moves_from_scan(s: GameState, cfg: VariantConfig, pairs) -> list[Move]:
    rule = cfg.alice_rule if s.mover == ALICE else cfg.bob_rule
    pal = _palette_mask(s, cfg) if rule == "palette" else 0
    out = []
    for v, base in pairs:
        mask = rule_color_mask(base, rule, pal)
        while mask:
            low = mask & -mask
            out.append(Move(v, low.bit_length() - 1))
            mask ^= low
    return out


def apply_move(g: Graph, s: GameState, m: Move, cfg: VariantConfig) -> GameState:
    v, c = m
    if not 0 <= v < s.n:
        raise IllegalMove(f"vertex {v} out of range")
    if v not in available_vertices(s, cfg):
        raise IllegalMove(f"vertex {v} is not available")
    if c not in legal_colors(g, s, v, cfg):
        raise IllegalMove(f"color {c} is not legal on vertex {v}")
    return _apply_unchecked(s, m, cfg)


def _apply_unchecked(s: GameState, m: Move, cfg: VariantConfig) -> GameState:
    v, c = m
    colors = list(s.colors)
    colors[v] = c
    moved = s.moved | (1 << v)
    palette = s.palette | (1 << c) if cfg.tracks_palette else 0
    order = s.order
    if order is not None and s.round1:
        ranks = list(order)
        ranks[v] = bin(s.moved).count("1") + 1
        order = tuple(ranks)
    round1 = s.round1
    if moved == (1 << s.n) - 1:
        moved = 0
        round1 = False
        mover = cfg.starter if cfg.scheme in ("aprime", "bprime") else 1 - s.mover
    else:
        mover = 1 - s.mover
    return GameState(s.k, tuple(colors), moved, mover, round1, palette, order)


def is_partial_proper(g: Graph, colors: tuple[int, ...]) -> bool:
    for v in range(g.n):
        if not colors[v]:
            continue
        row = g.adj[v]
        for u in range(v + 1, g.n):
            if row >> u & 1 and colors[u] == colors[v]:
                return False
    return True


def expected_mover(cfg: VariantConfig, n: int, moves_made: int) -> int:
    """Reference mover bookkeeping, independent of apply_move's running flip."""
    if cfg.scheme in ("a", "b"):
        return cfg.starter ^ (moves_made & 1)
    return cfg.starter ^ ((moves_made % n) & 1)
