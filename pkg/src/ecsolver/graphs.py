"""Graph model, family constructors, and small exact invariants.

Graphs are undirected, simple, and capped at 32 vertices so a coloring fits
one machine word per digit plane.  Adjacency is stored as one neighbor
bitmask per vertex.  Family constructors attach symmetry metadata that the
state-space canonicalizer exploits:

* ``swap_classes`` -- vertex sets whose members are freely interchangeable
  (every transposition inside a class is an automorphism), e.g. the leaves
  of a star or one side of a complete bipartite graph.
* ``rigid_autos`` -- a few explicit automorphism permutations that are not
  class transpositions (path reversal, cycle rotation, side swap).

Both kinds are validated as adjacency-preserving on construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace

MAX_VERTICES = 32


class GraphSpecError(ValueError):
    """Raised for malformed graph specs, bad files, or out-of-range sizes."""


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _bits(mask: int):
    """Yield set bit positions of ``mask`` in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph with optional declared symmetry.

    ``orbits``, when present, is a partition of the vertices into
    automorphism orbits consistent with the declared generators.
    """

    n: int
    adj: tuple[int, ...]
    label: str = ""
    swap_classes: tuple[tuple[int, ...], ...] = ()
    rigid_autos: tuple[tuple[int, ...], ...] = ()
    orbits: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        if not (1 <= self.n <= MAX_VERTICES):
            raise GraphSpecError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise GraphSpecError("adjacency length differs from vertex count")
        full = (1 << self.n) - 1
        for v, mask in enumerate(self.adj):
            if mask & ~full:
                raise GraphSpecError(f"vertex {v} has neighbors outside range")
            if mask >> v & 1:
                raise GraphSpecError(f"self-loop at vertex {v}")
            for u in _bits(mask):
                if not self.adj[u] >> v & 1:
                    raise GraphSpecError(f"asymmetric edge {v}-{u}")
        seen = 0
        for cls in self.swap_classes:
            for v in cls:
                if seen >> v & 1:
                    raise GraphSpecError("overlapping swap classes")
                seen |= 1 << v
            # adjacent transpositions generate the class, so checking those
            # suffices for full interchangeability
            for a, b in zip(cls, cls[1:]):
                if not self._is_automorphism(_transposition(self.n, a, b)):
                    raise GraphSpecError(f"class swap {a}<->{b} not an automorphism")
        for perm in self.rigid_autos:
            if sorted(perm) != list(range(self.n)):
                raise GraphSpecError("generator is not a permutation")
            if not self._is_automorphism(perm):
                raise GraphSpecError("declared generator does not preserve adjacency")
        if self.orbits is not None:
            cover = sorted(v for orb in self.orbits for v in orb)
            if cover != list(range(self.n)):
                raise GraphSpecError("orbit partition must cover each vertex once")
            for perm in self.generators():
                for orb in self.orbits:
                    if frozenset(perm[v] for v in orb) != frozenset(orb):
                        raise GraphSpecError("orbit not preserved by generators")

    def _is_automorphism(self, perm: tuple[int, ...]) -> bool:
        for v in range(self.n):
            image = 0
            for u in _bits(self.adj[v]):
                image |= 1 << perm[u]
            if image != self.adj[perm[v]]:
                return False
        return True

    def generators(self) -> list[tuple[int, ...]]:
        """All declared automorphism generators (class swaps plus rigid)."""
        gens = [
            _transposition(self.n, a, b)
            for cls in self.swap_classes
            for a, b in zip(cls, cls[1:])
        ]
        gens.extend(self.rigid_autos)
        return gens

    def degree(self, v: int) -> int:
        return _popcount(self.adj[v])

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in _bits(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(_popcount(m) for m in self.adj) // 2


def _transposition(n: int, a: int, b: int) -> tuple[int, ...]:
    perm = list(range(n))
    perm[a], perm[b] = b, a
    return tuple(perm)


def _graph_from_edges(n: int, edges, label: str, **symmetry) -> Graph:
    adj = [0] * n
    for u, v in edges:
        if u == v:
            raise GraphSpecError(f"self-loop {u}-{v}")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n=n, adj=tuple(adj), label=label, **symmetry)


# --- family constructors ---------------------------------------------------


def path(n: int) -> Graph:
    if n < 1:
        raise GraphSpecError("path needs at least one vertex")
    reversal = tuple(n - 1 - v for v in range(n))
    autos = (reversal,) if n > 1 else ()
    orbits = tuple(tuple(sorted({v, n - 1 - v})) for v in range((n + 1) // 2))
    return _graph_from_edges(
        n, [(v, v + 1) for v in range(n - 1)], f"path:{n}",
        rigid_autos=autos, orbits=orbits,
    )


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphSpecError("cycle needs at least three vertices")
    rotation = tuple((v + 1) % n for v in range(n))
    reflection = tuple((n - v) % n for v in range(n))
    return _graph_from_edges(
        n, [(v, (v + 1) % n) for v in range(n)], f"cycle:{n}",
        rigid_autos=(rotation, reflection), orbits=(tuple(range(n)),),
    )


def complete(n: int) -> Graph:
    return _graph_from_edges(
        n, itertools.combinations(range(n), 2), f"complete:{n}",
        swap_classes=(tuple(range(n)),) if n > 1 else (),
        orbits=(tuple(range(n)),),
    )


def complete_minus_edge(n: int) -> Graph:
    if n < 2:
        raise GraphSpecError("complete-minus-edge needs at least two vertices")
    edges = [e for e in itertools.combinations(range(n), 2) if e != (0, 1)]
    classes = [(0, 1)]
    if n > 2:
        classes.append(tuple(range(2, n)))
    orbits = ((0, 1),) if n == 2 else ((0, 1), tuple(range(2, n)))
    return _graph_from_edges(
        n, edges, f"complete-minus-edge:{n}",
        swap_classes=tuple(c for c in classes if len(c) > 1), orbits=orbits,
    )


def star(leaves: int) -> Graph:
    if leaves < 1:
        raise GraphSpecError("star needs at least one leaf")
    n = leaves + 1
    leaf_ids = tuple(range(1, n))
    return _graph_from_edges(
        n, [(0, v) for v in leaf_ids], f"star:{leaves}",
        swap_classes=(leaf_ids,) if leaves > 1 else (),
        orbits=((0,), leaf_ids),
    )


def biclique(m: int, n: int) -> Graph:
    if m < 1 or n < 1:
        raise GraphSpecError("biclique sides must be nonempty")
    side_a = tuple(range(m))
    side_b = tuple(range(m, m + n))
    classes = tuple(c for c in (side_a, side_b) if len(c) > 1)
    autos = ()
    if m == n:
        swap = tuple(list(side_b) + list(side_a))
        autos = (swap,)
        orbits = (side_a + side_b,)
    else:
        orbits = (side_a, side_b)
    return _graph_from_edges(
        m + n, [(a, b) for a in side_a for b in side_b], f"biclique:{m},{n}",
        swap_classes=classes, rigid_autos=autos, orbits=orbits,
    )


def caterpillar(leaf_counts: list[int]) -> Graph:
    """Spine path with ``leaf_counts[i]`` pendant leaves on spine vertex i."""
    s = len(leaf_counts)
    if s < 1 or any(c < 0 for c in leaf_counts):
        raise GraphSpecError("caterpillar needs a spine and nonnegative leaf counts")
    n = s + sum(leaf_counts)
    edges = [(i, i + 1) for i in range(s - 1)]
    classes = []
    nxt = s
    groups = []
    for i, count in enumerate(leaf_counts):
        group = tuple(range(nxt, nxt + count))
        groups.append(group)
        edges.extend((i, leaf) for leaf in group)
        if count > 1:
            classes.append(group)
        nxt += count
    autos = ()
    if s > 1 and leaf_counts == leaf_counts[::-1]:
        # palindromic caterpillars admit spine reversal
        perm = [0] * n
        for i in range(s):
            perm[i] = s - 1 - i
        for i, group in enumerate(groups):
            target = groups[s - 1 - i]
            for a, b in zip(group, target):
                perm[a] = b
        autos = (tuple(perm),)
    label = "caterpillar:%d,%s" % (s, ",".join(map(str, leaf_counts)))
    g = _graph_from_edges(n, edges, label, swap_classes=tuple(classes), rigid_autos=autos)
    return replace(g, orbits=_orbits_from_generators(g))


def grid(rows: int, cols: int) -> Graph:
    if rows < 1 or cols < 1:
        raise GraphSpecError("grid needs positive dimensions")
    n = rows * cols

    def vid(r, c):
        return r * cols + c

    edges = []
    for r in range(rows):
        for c in range(cols):
            if r + 1 < rows:
                edges.append((vid(r, c), vid(r + 1, c)))
            if c + 1 < cols:
                edges.append((vid(r, c), vid(r, c + 1)))
    autos = []
    if cols > 1:
        autos.append(tuple(vid(r, cols - 1 - c) for r in range(rows) for c in range(cols)))
    if rows > 1:
        autos.append(tuple(vid(rows - 1 - r, c) for r in range(rows) for c in range(cols)))
    if rows == cols and rows > 1:
        autos.append(tuple(vid(c, r) for r in range(rows) for c in range(cols)))
    g = _graph_from_edges(n, edges, f"grid:{rows},{cols}", rigid_autos=tuple(autos))
    return replace(g, orbits=_orbits_from_generators(g))


def from_edge_file(pathname: str) -> Graph:
    try:
        with open(pathname, "r", encoding="utf-8") as handle:
            text = handle.read()
    except OSError as exc:
        raise GraphSpecError(f"cannot read graph file {pathname}: {exc}") from exc
    edges = []
    top = -1
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise GraphSpecError(f"{pathname}:{lineno}: expected 'u v'")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError as exc:
            raise GraphSpecError(f"{pathname}:{lineno}: non-integer vertex") from exc
        if u < 0 or v < 0:
            raise GraphSpecError(f"{pathname}:{lineno}: negative vertex id")
        if u == v:
            raise GraphSpecError(f"{pathname}:{lineno}: self-loop {u}")
        top = max(top, u, v)
        edges.append((u, v))
    n = top + 1
    if n < 1:
        raise GraphSpecError(f"{pathname}: no vertices")
    if n > MAX_VERTICES:
        raise GraphSpecError(f"{pathname}: {n} vertices exceeds {MAX_VERTICES}")
    # duplicate edges collapse naturally in the bitmask representation
    return _graph_from_edges(n, edges, f"file:{pathname}")


def parse_graph_spec(spec: str) -> Graph:
    """Parse the graph mini-language, e.g. ``path:4`` or ``biclique:3,3``."""
    spec = spec.strip()
    if ":" not in spec:
        raise GraphSpecError(f"malformed graph spec {spec!r} (expected family:args)")
    family, _, args = spec.partition(":")
    family = family.lower()
    if family == "file":
        return from_edge_file(args)
    try:
        nums = [int(a) for a in args.split(",")] if args else []
    except ValueError as exc:
        raise GraphSpecError(f"malformed graph spec {spec!r}") from exc
    try:
        if family == "path" and len(nums) == 1:
            g = path(nums[0])
        elif family == "cycle" and len(nums) == 1:
            g = cycle(nums[0])
        elif family == "complete" and len(nums) == 1:
            g = complete(nums[0])
        elif family == "complete-minus-edge" and len(nums) == 1:
            g = complete_minus_edge(nums[0])
        elif family == "star" and len(nums) == 1:
            g = star(nums[0])
        elif family == "biclique" and len(nums) == 2:
            g = biclique(nums[0], nums[1])
        elif family == "caterpillar" and len(nums) >= 2:
            spine = nums[0]
            if len(nums) != spine + 1:
                raise GraphSpecError(
                    f"caterpillar:{args} needs one leaf count per spine vertex"
                )
            g = caterpillar(nums[1:])
        elif family == "grid" and len(nums) == 2:
            g = grid(nums[0], nums[1])
        else:
            raise GraphSpecError(f"unknown graph spec {spec!r}")
    except (IndexError, TypeError) as exc:
        raise GraphSpecError(f"malformed graph spec {spec!r}") from exc
    return g


# --- invariants ------------------------------------------------------------


def max_degree(g: Graph) -> int:
    return max(_popcount(m) for m in g.adj)


def is_connected(g: Graph) -> bool:
    seen = 1
    frontier = 1
    while frontier:
        nxt = 0
        for v in _bits(frontier):
            nxt |= g.adj[v]
        frontier = nxt & ~seen
        seen |= nxt
    return seen == (1 << g.n) - 1


def coloring_number(g: Graph) -> int:
    """Degeneracy plus one, by repeated minimum-degree removal."""
    alive = (1 << g.n) - 1
    best = 0
    while alive:
        deg, pick = min(
            (_popcount(g.adj[v] & alive), v) for v in _bits(alive)
        )
        best = max(best, deg)
        alive &= ~(1 << pick)
    return best + 1


def chromatic_number(g: Graph) -> int:
    """Exact chromatic number by backtracking with a new-color symmetry break."""
    order = sorted(range(g.n), key=g.degree, reverse=True)
    colors = [0] * g.n

    def feasible(k: int, idx: int, used: int) -> bool:
        if idx == g.n:
            return True
        v = order[idx]
        taken = 0
        for u in _bits(g.adj[v]):
            taken |= 1 << colors[u]
        limit = min(k, used + 1)
        for c in range(1, limit + 1):
            if taken >> c & 1:
                continue
            colors[v] = c
            if feasible(k, idx + 1, max(used, c)):
                colors[v] = 0
                return True
            colors[v] = 0
        return False

    for k in range(1, g.n + 1):
        if feasible(k, 0, 0):
            return k
    return g.n


# --- isomorphism-free enumeration ------------------------------------------


def _canonical_key(n: int, adj: tuple[int, ...]) -> int:
    """Minimum adjacency bit string over all vertex orderings.

    Bits appear in the order (1,0), (2,0), (2,1), (3,0), ... so a partial
    vertex placement fixes a key prefix, which lets the search prune.
    """
    best: list[int] | None = None
    placed: list[int] = []
    prefix: list[int] = []

    def rec():
        nonlocal best
        depth = len(placed)
        if depth == n:
            if best is None or prefix < best:
                best = prefix[:]
            return
        for v in range(n):
            if v in placed:
                continue
            row = [(adj[v] >> u) & 1 for u in placed]
            prefix.extend(row)
            cut = best is not None and prefix > best[: len(prefix)]
            if not cut:
                placed.append(v)
                rec()
                placed.pop()
            del prefix[len(prefix) - len(row):]

    rec()
    assert best is not None
    key = 0
    for bit in best:
        key = key << 1 | bit
    return key


def enumerate_connected_graphs(n: int) -> list[Graph]:
    """One representative per isomorphism class of connected graphs on n vertices."""
    if not 1 <= n <= 7:
        raise GraphSpecError("connected-graph enumeration supports 1..7 vertices")
    level = [(1, (0,))]
    for m in range(2, n + 1):
        seen: dict[int, tuple[int, tuple[int, ...]]] = {}
        for _, adj in level:
            for mask in range(1, 1 << (m - 1)):
                new_adj = list(adj) + [mask]
                for u in _bits(mask):
                    new_adj[u] |= 1 << (m - 1)
                cand = tuple(new_adj)
                key = _canonical_key(m, cand)
                if key not in seen:
                    seen[key] = (m, cand)
        level = sorted(seen.values(), key=lambda item: _canonical_key(item[0], item[1]))
    out = []
    for i, (m, adj) in enumerate(level):
        out.append(Graph(n=m, adj=adj, label=f"conn{n}#{i}"))
    return out


def enumerate_trees(n: int) -> list[Graph]:
    """One representative per isomorphism class of trees on n vertices."""
    if not 1 <= n <= 10:
        raise GraphSpecError("tree enumeration supports 1..10 vertices")
    level = [(1, (0,))]
    for m in range(2, n + 1):
        seen: dict[int, tuple[int, tuple[int, ...]]] = {}
        for _, adj in level:
            for attach in range(m - 1):
                new_adj = list(adj) + [1 << attach]
                new_adj[attach] |= 1 << (m - 1)
                cand = tuple(new_adj)
                key = _canonical_key(m, cand)
                if key not in seen:
                    seen[key] = (m, cand)
        level = sorted(seen.values(), key=lambda item: _canonical_key(item[0], item[1]))
    return [Graph(n=m, adj=adj, label=f"tree{n}#{i}") for i, (m, adj) in enumerate(level)]


# --- automorphisms and orbits ----------------------------------------------


def _automorphism_mapping(g: Graph, src: int, dst: int) -> tuple[int, ...] | None:
    """Find one automorphism sending src to dst, or None."""
    degs = [g.degree(v) for v in range(g.n)]
    if degs[src] != degs[dst]:
        return None
    perm: list[int] = [-1] * g.n
    used = [False] * g.n

    def assign(v: int, w: int) -> bool:
        if degs[v] != degs[w]:
            return False
        for u in range(g.n):
            if perm[u] != -1 and (g.adj[v] >> u & 1) != (g.adj[w] >> perm[u] & 1):
                return False
        return True

    def rec(v: int) -> bool:
        if v == g.n:
            return True
        if perm[v] != -1:
            return rec(v + 1)
        for w in range(g.n):
            if used[w] or not assign(v, w):
                continue
            perm[v] = w
            used[w] = True
            if rec(v + 1):
                return True
            perm[v] = -1
            used[w] = False
        return False

    perm[src] = dst
    used[dst] = True
    if rec(0):
        return tuple(perm)
    return None


def _orbits_from_generators(g: Graph) -> tuple[tuple[int, ...], ...]:
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in g.generators():
        for v in range(g.n):
            a, b = find(v), find(perm[v])
            if a != b:
                parent[a] = b
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    return tuple(tuple(sorted(vs)) for vs in sorted(groups.values()))


def vertex_orbits(g: Graph) -> list[list[int]]:
    """Automorphism orbits: declared family data, small-graph search, or discrete."""
    if g.orbits is not None:
        return [sorted(o) for o in g.orbits]
    if g.swap_classes or g.rigid_autos:
        return [list(o) for o in _orbits_from_generators(g)]
    if g.n <= 10:
        enriched = with_computed_symmetry(g)
        return [list(o) for o in enriched.orbits or ()]
    return [[v] for v in range(g.n)]


def with_computed_symmetry(g: Graph) -> Graph:
    """Return a copy with searched automorphism witnesses attached (n <= 10).

    The witnesses generate a subgroup whose orbits equal the true orbits,
    which is all the canonicalizer needs for sound reduction.
    """
    if g.n > 10 or g.swap_classes or g.rigid_autos:
        return g
    gens: list[tuple[int, ...]] = []
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for src in range(g.n):
        for dst in range(src + 1, g.n):
            if find(src) == find(dst):
                continue
            perm = _automorphism_mapping(g, src, dst)
            if perm is not None:
                gens.append(perm)
                parent[find(src)] = find(dst)
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(find(v), []).append(v)
    orbits = tuple(tuple(sorted(vs)) for vs in sorted(groups.values()))
    return replace(g, rigid_autos=tuple(gens), orbits=orbits)
