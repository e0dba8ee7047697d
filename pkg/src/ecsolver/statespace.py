"""State packing and canonicalization under color and vertex symmetry.

``encode``/``decode`` pack a :class:`~ecsolver.rules.GameState` into one
unsigned integer (colors as base-(k+1) digits, then the moved set, mover,
round flag, palette bits when tracked, and round-1 order digits when
tracked; vertex 0 occupies the most significant end of each plane).

``Canonicalizer`` maps play-equivalent states to one representative.  Two
reductions compose:

* color relabeling -- first-occurrence renaming, exact for the full color
  symmetric group;
* orbit reduction -- minimization over the declared vertex symmetry, which
  we split into freely interchangeable classes (handled by sorting) and a
  small enumerated "rigid" group (reversals, rotations, side swaps).

When both are active the minimum is taken jointly: a greedy left-to-right
placement chooses, position by position, the smallest relabeled record,
branching only on genuinely ambiguous fresh-color ties.  The result is the
exact minimum key over the whole group generated by class swaps, declared
automorphisms, and color permutations, so equivalent states always merge
and the map is idempotent.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .graphs import Graph
from .rules import GameState, VariantConfig

GROUP_CAP = 10_000


@dataclass(frozen=True)
class CanonicalizationPolicy:
    color_relabel: bool = True
    orbit_reduce: bool = True


FULL_REDUCTION = CanonicalizationPolicy(True, True)
NO_REDUCTION = CanonicalizationPolicy(False, False)


def effective_policy(policy: CanonicalizationPolicy, cfg: VariantConfig) -> CanonicalizationPolicy:
    """Drop reductions the variant cannot support.

    Greedy rules pin color identities ("smallest" is label-sensitive), and
    the current-colors palette mode is likewise excluded from relabeling.
    A fixed vertex order lives in the config, so vertex permutations are
    unsound there; the order recorded in round 1 transforms with the state
    and stays reducible.
    """
    relabel = policy.color_relabel
    if cfg.alice_rule == "greedy" or cfg.bob_rule == "greedy":
        relabel = False
    if cfg.bob_rule == "palette" and cfg.palette_mode == "current":
        relabel = False
    orbit = policy.orbit_reduce
    if cfg.ordered is not None and cfg.ordered != "r1":
        orbit = False
    return CanonicalizationPolicy(relabel, orbit)


# --- packing -----------------------------------------------------------------


def encode(s: GameState, cfg: VariantConfig) -> int:
    n = len(s.colors)
    k = s.k
    key = 0
    for c in s.colors:
        key = key * (k + 1) + c
    for v in range(n):
        key = key << 1 | (s.moved >> v & 1)
    key = key << 1 | s.mover
    key = key << 1 | (1 if s.round1 else 0)
    if cfg.tracks_palette:
        key = key << k | (s.palette >> 1)
    if cfg.tracks_order:
        assert s.order is not None
        for rank in s.order:
            key = key * (n + 1) + rank
    return key


def decode(key: int, g: Graph, k: int, cfg: VariantConfig) -> GameState:
    if key < 0:
        raise ValueError("malformed key")
    n = g.n
    order = None
    if cfg.tracks_order:
        ranks = [0] * n
        for v in reversed(range(n)):
            key, ranks[v] = divmod(key, n + 1)
        order = tuple(ranks)
    palette = 0
    if cfg.tracks_palette:
        palette = (key & ((1 << k) - 1)) << 1
        key >>= k
    round1 = bool(key & 1)
    key >>= 1
    mover = key & 1
    key >>= 1
    moved = 0
    for v in reversed(range(n)):
        if key & 1:
            moved |= 1 << v
        key >>= 1
    colors = [0] * n
    for v in reversed(range(n)):
        key, colors[v] = divmod(key, k + 1)
    if key:
        raise ValueError("malformed key: leftover bits")
    if moved == (1 << n) - 1:
        raise ValueError("malformed key: full moved set")
    return GameState(k, tuple(colors), moved, mover, round1, palette, order)


def key_bit_width(n: int, k: int) -> int:
    """Width of the standard key fields (colors, moved, mover, round flag, palette)."""
    per_color = max(1, (k + 1 - 1).bit_length())
    return n * per_color + n + 2 + k


# --- vertex permutations ------------------------------------------------------


def permute_state(s: GameState, perm: tuple[int, ...]) -> GameState:
    """Relocate the state along a vertex permutation (old index -> new index)."""
    n = len(s.colors)
    colors = [0] * n
    moved = 0
    ranks = [0] * n if s.order is not None else None
    for v in range(n):
        w = perm[v]
        colors[w] = s.colors[v]
        if s.moved >> v & 1:
            moved |= 1 << w
        if ranks is not None:
            ranks[w] = s.order[v]
    return GameState(
        s.k, tuple(colors), moved, s.mover, s.round1, s.palette,
        tuple(ranks) if ranks is not None else None,
    )


def enumerate_group(n: int, gens, cap: int = GROUP_CAP) -> list[tuple[int, ...]] | None:
    """Close a generator set under composition; None when the cap is exceeded."""
    ident = tuple(range(n))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for q in gens:
                comp = tuple(q[p[v]] for v in range(n))
                if comp not in seen:
                    if len(seen) >= cap:
                        return None
                    seen.add(comp)
                    nxt.append(comp)
        frontier = nxt
    return sorted(seen)


# --- canonicalizer -------------------------------------------------------------


class Canonicalizer:
    """Per-instance canonical form for (graph, variant, policy)."""

    def __init__(self, g: Graph, cfg: VariantConfig, policy: CanonicalizationPolicy):
        self.cfg = cfg
        eff = effective_policy(policy, cfg)
        self.relabel_on = eff.color_relabel
        self.n = g.n
        self.track_palette = cfg.tracks_palette
        if eff.orbit_reduce:
            self.classes = [tuple(sorted(c)) for c in g.swap_classes]
            group = enumerate_group(g.n, g.rigid_autos) if g.rigid_autos else None
            if g.rigid_autos and group is None:
                # group too large to enumerate: fall back to hill descent over
                # the raw generators (sound, possibly non-minimal)
                self.rigid = [tuple(range(g.n))]
                self.hill_gens = list(g.rigid_autos)
            else:
                self.rigid = group or [tuple(range(g.n))]
                self.hill_gens = []
        else:
            self.classes = []
            self.rigid = [tuple(range(g.n))]
            self.hill_gens = []
        self.orbit_on = bool(self.classes) or len(self.rigid) > 1 or bool(self.hill_gens)
        self.class_of = [-1] * g.n
        for cid, cls in enumerate(self.classes):
            for v in cls:
                self.class_of[v] = cid
        self._rev_cache: dict[int, int] = {0: 0}

    # - public entry -

    def __call__(self, s: GameState) -> GameState:
        if not self.orbit_on:
            return self._relabel(s) if self.relabel_on else s
        best = None
        for perm in self.rigid:
            t = permute_state(s, perm) if perm is not self.rigid[0] else s
            if self.hill_gens:
                t = self._hill(t)
            cand = self._jointmin(t) if self.relabel_on else self._sort_classes(t)
            sig = self._signature(cand)
            if best is None or sig < best[0]:
                best = (sig, cand)
        return best[1]

    # - helpers -

    def _signature(self, s: GameState):
        # vertex 0 is most significant throughout, so compare the moved set
        # with its bits reversed
        rev = self._rev_cache.get(s.moved)
        if rev is None:
            rev = 0
            m = s.moved
            n1 = self.n - 1
            while m:
                low = m & -m
                rev |= 1 << (n1 - (low.bit_length() - 1))
                m ^= low
            self._rev_cache[s.moved] = rev
        return (s.colors, rev, s.order or ())

    def _relabel(self, s: GameState) -> GameState:
        mapping: dict[int, int] = {}
        colors = []
        for c in s.colors:
            if c == 0:
                colors.append(0)
                continue
            if c not in mapping:
                mapping[c] = len(mapping) + 1
            colors.append(mapping[c])
        palette = self._canonical_palette(s.palette, len(mapping))
        return GameState(s.k, tuple(colors), s.moved, s.mover, s.round1, palette, s.order)

    def _canonical_palette(self, palette: int, mapped: int) -> int:
        if not self.track_palette:
            return 0
        total = bin(palette).count("1")
        # introduced colors always cover the colors on the graph, so the
        # canonical palette is the first `total` colors
        assert total >= mapped
        return ((1 << total) - 1) << 1

    def _sort_classes(self, s: GameState) -> GameState:
        if not self.classes:
            return s
        colors = list(s.colors)
        moved = s.moved
        ranks = list(s.order) if s.order is not None else None
        for cls in self.classes:
            recs = sorted(
                (colors[v], moved >> v & 1, ranks[v] if ranks else 0) for v in cls
            )
            for v, (c, m, o) in zip(cls, recs):
                colors[v] = c
                moved = moved & ~(1 << v) | (m << v)
                if ranks:
                    ranks[v] = o
        return GameState(
            s.k, tuple(colors), moved, s.mover, s.round1, s.palette,
            tuple(ranks) if ranks is not None else None,
        )

    def _hill(self, s: GameState) -> GameState:
        sig = self._signature(self._sort_classes(s))
        improved = True
        while improved:
            improved = False
            for gen in self.hill_gens:
                t = self._sort_classes(permute_state(s, gen))
                tsig = self._signature(t)
                if tsig < sig:
                    s, sig = t, tsig
                    improved = True
        return s

    def _jointmin(self, s: GameState) -> GameState:
        """Exact minimum over class permutations and color relabelings.

        Scans positions most-significant first, placing at each class slot
        the smallest achievable (relabeled color, moved, rank) record.  The
        only free decisions are which fresh color to introduce when several
        tie; those branch, with structurally interchangeable colors collapsed
        first, and branches compared by their completed planes.
        """
        n = self.n
        recs = [
            (s.colors[v], s.moved >> v & 1, s.order[v] if s.order is not None else 0)
            for v in range(n)
        ]
        remaining: list[dict[tuple[int, int, int], int]] = []
        for cls in self.classes:
            counter: dict[tuple[int, int, int], int] = {}
            for v in cls:
                counter[recs[v]] = counter.get(recs[v], 0) + 1
            remaining.append(counter)
        rigid_colors = {
            recs[v][0] for v in range(n) if self.class_of[v] < 0 and recs[v][0]
        }
        class_of = self.class_of
        best: list | None = None

        def profile(color: int):
            prof = []
            for cid, counter in enumerate(remaining):
                for (c, m, o), cnt in counter.items():
                    if c == color and cnt > 0:
                        prof.append((cid, m, o, cnt))
            prof.sort()
            return tuple(prof)

        def place(p: int, mapping: dict[int, int], labels: list, moveds: list, orders: list):
            nonlocal best
            if p == n:
                cand = (tuple(labels), tuple(moveds), tuple(orders))
                if best is None or cand < best[0]:
                    best = [cand, dict(mapping)]
                return
            cid = class_of[p]
            if cid < 0:
                c, m, o = recs[p]
                fresh = c != 0 and c not in mapping
                if fresh:
                    mapping[c] = len(mapping) + 1
                labels.append(mapping[c] if c else 0)
                moveds.append(m)
                orders.append(o)
                place(p + 1, mapping, labels, moveds, orders)
                labels.pop(), moveds.pop(), orders.pop()
                if fresh:
                    del mapping[c]
                return
            counter = remaining[cid]
            # the color plane dominates: a known label (or uncolored) always
            # beats introducing a fresh one, and copies of one color are
            # interchangeable so the smallest (moved, rank) copy goes first
            best_known: tuple | None = None
            fresh_min: dict[int, tuple[int, int]] = {}
            for (c, m, o), cnt in counter.items():
                if cnt <= 0:
                    continue
                if c == 0 or c in mapping:
                    cand = (mapping[c] if c else 0, m, o, c)
                    if best_known is None or cand < best_known:
                        best_known = cand
                else:
                    cur = fresh_min.get(c)
                    if cur is None or (m, o) < cur:
                        fresh_min[c] = (m, o)
            if best_known is not None:
                choices = [(best_known[3], best_known[1], best_known[2])]
            else:
                # every remaining record introduces a color: branch over the
                # structurally distinct ones; a color that also sits on a
                # rigid vertex is never mergeable with another
                groups: dict[tuple, int] = {}
                for c in sorted(fresh_min):
                    sig = (profile(c), c if c in rigid_colors else -1)
                    groups.setdefault(sig, c)
                choices = [(c, *fresh_min[c]) for c in sorted(groups.values())]
            for c, m, o in choices:
                rec = (c, m, o)
                counter[rec] -= 1
                fresh = c != 0 and c not in mapping
                if fresh:
                    mapping[c] = len(mapping) + 1
                labels.append(mapping[c] if c else 0)
                moveds.append(m)
                orders.append(o)
                place(p + 1, mapping, labels, moveds, orders)
                labels.pop(), moveds.pop(), orders.pop()
                if fresh:
                    del mapping[c]
                counter[rec] += 1

        place(0, {}, [], [], [])
        assert best is not None
        (labels, moveds, orders), mapping = best
        moved = 0
        for v, m in enumerate(moveds):
            moved |= m << v
        palette = self._canonical_palette(s.palette, len(mapping))
        order = tuple(orders) if s.order is not None else None
        return GameState(s.k, labels, moved, s.mover, s.round1, palette, order)


@lru_cache(maxsize=256)
def _cached_canonicalizer(g: Graph, cfg: VariantConfig, policy: CanonicalizationPolicy):
    return Canonicalizer(g, cfg, policy)


def canonicalize(
    g: Graph,
    s: GameState,
    cfg: VariantConfig,
    policy: CanonicalizationPolicy = FULL_REDUCTION,
) -> GameState:
    """Canonical representative of the play-equivalence class of ``s``."""
    return _cached_canonicalizer(g, cfg, policy)(s)
