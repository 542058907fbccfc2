"""Simple undirected graphs on bit-set adjacency rows.

Vertices are the integers ``0..n-1``.  A graph stores one Python int per
vertex; bit ``u`` of ``adj[v]`` is set iff ``uv`` is an edge.  Vertex sets
are plain int masks throughout the package.  Graphs are immutable after
construction and every operation here is pure, so values can be shared
freely across worker processes.

The default size cap is 64 vertices (one machine word per row on the
formats this library interoperates with).  Python ints are arbitrary
width, so constructors accept an explicit ``cap`` to lift the limit for
oversized intermediates such as matching gadgets or wide lemma sweeps.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

DEFAULT_VERTEX_CAP = 64

_SPLITMIX_GAMMA = 0x9E3779B97F4A7C15
_MASK64 = (1 << 64) - 1


class GraphError(Exception):
    """Base class for graph construction/usage errors."""


class GraphSizeError(GraphError):
    """Vertex count above the active cap."""


def _check_cap(n: int, cap: int | None) -> None:
    limit = DEFAULT_VERTEX_CAP if cap is None else cap
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    if n > limit:
        raise GraphSizeError(f"{n} vertices exceeds cap {limit}")


def bits(mask: int):
    """Yield the set bit positions of ``mask`` in increasing order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True, slots=True)
class Graph:
    """Immutable simple graph: ``n`` vertices, one adjacency bit-row each."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.adj) != self.n:
            raise GraphError("adjacency row count != n")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) pairs with u < v, lexicographically sorted."""
        out = []
        for v in range(self.n):
            higher = self.adj[v] >> (v + 1)
            for off in bits(higher):
                out.append((v, v + 1 + off))
        return out

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def validate(self) -> None:
        """Check symmetry, irreflexivity and row width; raise on violation."""
        full = self.full_mask
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            if row & ~full:
                raise GraphError(f"row {v} uses bits >= n")
            for u in bits(row):
                if not self.adj[u] >> v & 1:
                    raise GraphError(f"asymmetric pair ({v},{u})")


def from_rows(n: int, rows, cap: int | None = None) -> Graph:
    """Build and validate a graph from raw adjacency rows."""
    _check_cap(n, cap)
    g = Graph(n, tuple(rows))
    g.validate()
    return g


def from_edges(n: int, edges, cap: int | None = None) -> Graph:
    _check_cap(n, cap)
    rows = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n) or u == v:
            raise GraphError(f"bad edge ({u},{v}) for n={n}")
        rows[u] |= 1 << v
        rows[v] |= 1 << u
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------------------
# constructors


def empty(n: int, cap: int | None = None) -> Graph:
    _check_cap(n, cap)
    return Graph(n, (0,) * n)


def complete(n: int, cap: int | None = None) -> Graph:
    _check_cap(n, cap)
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def path(n: int, cap: int | None = None) -> Graph:
    _check_cap(n, cap)
    return from_edges(n, [(i, i + 1) for i in range(n - 1)], cap=cap)


def cycle(n: int, cap: int | None = None) -> Graph:
    if n < 3:
        raise GraphError("cycle needs n >= 3")
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return from_edges(n, edges, cap=cap)


def complete_bipartite(s: int, t: int, cap: int | None = None) -> Graph:
    _check_cap(s + t, cap)
    return from_edges(s + t, [(i, s + j) for i in range(s) for j in range(t)], cap=cap)


def star(leaves: int, cap: int | None = None) -> Graph:
    return complete_bipartite(1, leaves, cap=cap)


def petersen() -> Graph:
    """Outer 5-cycle, inner pentagram, spokes i -- i+5."""
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    return from_edges(10, edges)


def disjoint_union(g: Graph, h: Graph, cap: int | None = None) -> Graph:
    """Vertex-disjoint union; h's vertices are re-indexed after g's."""
    n = g.n + h.n
    _check_cap(n, cap)
    rows = list(g.adj) + [row << g.n for row in h.adj]
    return Graph(n, tuple(rows))


def join(g: Graph, h: Graph, cap: int | None = None) -> Graph:
    """Disjoint union plus all cross edges; empty operands are identities."""
    if g.n == 0:
        return h
    if h.n == 0:
        return g
    n = g.n + h.n
    _check_cap(n, cap)
    gmask = (1 << g.n) - 1
    hmask = ((1 << h.n) - 1) << g.n
    rows = [row | hmask for row in g.adj]
    rows += [(row << g.n) | gmask for row in h.adj]
    return Graph(n, tuple(rows))


def h_extremal(n: int, a: int, cap: int | None = None) -> Graph:
    """The extremal family: an (a-1)-clique joined to K_1 plus K_{n-a}.

    Layout: vertices 0..a-2 form the universal clique, vertex a-1 is the
    low-degree solo vertex, vertices a..n-1 form the big clique.
    """
    if a < 1 or n < a + 1:
        raise GraphError(f"h_extremal needs 1 <= a and n >= a+1, got n={n}, a={a}")
    _check_cap(n, cap)
    core = disjoint_union(complete(1), complete(n - a, cap=cap), cap=cap)
    return join(complete(a - 1), core, cap=cap)


def clique_join(s: int, parts, cap: int | None = None) -> Graph:
    """Join of K_s with a disjoint union of cliques of the given orders."""
    parts = list(parts)
    if s < 0 or not parts or any(p < 1 for p in parts):
        raise GraphError(f"clique_join needs s >= 0 and parts >= 1, got s={s}, parts={parts}")
    n = s + sum(parts)
    _check_cap(n, cap)
    acc = complete(parts[0], cap=cap)
    for p in parts[1:]:
        acc = disjoint_union(acc, complete(p), cap=cap)
    return join(complete(s), acc, cap=cap)


def l_graph(n: int, s: int, cap: int | None = None) -> Graph:
    """K_s joined to one big clique plus three isolated vertices."""
    if n < s + 4:
        raise GraphError(f"l_graph needs n >= s+4, got n={n}, s={s}")
    return clique_join(s, [n - s - 3, 1, 1, 1], cap=cap)


def complement(g: Graph, cap: int | None = None) -> Graph:
    full = g.full_mask
    return Graph(g.n, tuple((full ^ row) & ~(1 << v) for v, row in enumerate(g.adj)))


# ---------------------------------------------------------------------------
# structure and counting


def components(g: Graph) -> list[int]:
    """Connected components as vertex masks, ordered by least vertex."""
    return components_within(g, g.full_mask)


def components_within(g: Graph, region: int) -> list[int]:
    """Components of the subgraph induced on the ``region`` mask."""
    out = []
    seen = 0
    rest = region
    while rest:
        v = (rest & -rest).bit_length() - 1
        comp = 0
        frontier = 1 << v
        while frontier:
            comp |= frontier
            grow = 0
            for u in bits(frontier):
                grow |= g.adj[u]
            frontier = grow & region & ~comp
        out.append(comp)
        seen |= comp
        rest = region & ~seen
    return out


def is_connected(g: Graph) -> bool:
    return g.n == 0 or len(components(g)) == 1


def degree(g: Graph, v: int) -> int:
    return g.adj[v].bit_count()


def degree_sequence(g: Graph) -> list[int]:
    return [row.bit_count() for row in g.adj]


def min_degree(g: Graph) -> int:
    if g.n == 0:
        raise GraphError("min_degree of empty graph")
    return min(row.bit_count() for row in g.adj)


def degree_in_deleted(g: Graph, s_mask: int, v: int) -> int:
    """Degree of v in the graph with the vertex set ``s_mask`` deleted."""
    if s_mask >> v & 1:
        raise GraphError(f"vertex {v} lies in the deleted set")
    return (g.adj[v] & ~s_mask).bit_count()


def e_within(g: Graph, s_mask: int) -> int:
    total = 0
    for v in bits(s_mask):
        total += (g.adj[v] & s_mask).bit_count()
    return total // 2


def e_between(g: Graph, s_mask: int, t_mask: int) -> int:
    if s_mask & t_mask:
        raise GraphError("e_between needs disjoint sets")
    total = 0
    for v in bits(s_mask):
        total += (g.adj[v] & t_mask).bit_count()
    return total


def partition_classes(g: Graph, classes) -> tuple[int, ...]:
    """Validate an ordered vertex partition given as masks; return it as a tuple."""
    acc = 0
    out = []
    for c in classes:
        if c == 0:
            raise GraphError("empty partition class")
        if c & acc:
            raise GraphError("overlapping partition classes")
        if c & ~g.full_mask:
            raise GraphError("partition class uses bits >= n")
        acc |= c
        out.append(c)
    if acc != g.full_mask:
        raise GraphError("partition classes do not cover the vertex set")
    return tuple(out)


# ---------------------------------------------------------------------------
# pair slots (shared edge-index convention for sampling and enumeration)


def pair_slots(n: int) -> list[tuple[int, int]]:
    """All unordered pairs (i, j), i < j, in lexicographic order."""
    return list(combinations(range(n), 2))


# ---------------------------------------------------------------------------
# deterministic random graphs (splitmix64 stream)


def _mix64(z: int) -> int:
    z &= _MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
    return z ^ (z >> 31)


class SplitMix64:
    """The splitmix64 generator: state += gamma; output = mix(state)."""

    __slots__ = ("state",)

    def __init__(self, seed: int) -> None:
        self.state = seed & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _SPLITMIX_GAMMA) & _MASK64
        return _mix64(self.state)

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound) by rejection-free modulo (desk scale)."""
        return self.next_u64() % bound


def derive_seed(seed: int, index: int) -> int:
    """Independent sub-seed for stream ``index``; stable across worker splits."""
    return _mix64((seed & _MASK64) ^ _mix64(index + _SPLITMIX_GAMMA))


def random_graph(
    n: int,
    *,
    p: float | None = None,
    m: int | None = None,
    seed: int,
    cap: int | None = None,
) -> Graph:
    """Seed-deterministic random graph.

    Exactly one of ``p`` (independent edge probability) or ``m`` (exact edge
    count) must be given.  The splitmix64 stream is consumed one draw per
    pair slot in lexicographic order (``p`` mode) or through a partial
    Fisher-Yates shuffle of the slots (``m`` mode), so the result depends
    only on (n, parameters, seed).
    """
    _check_cap(n, cap)
    if (p is None) == (m is None):
        raise GraphError("give exactly one of p or m")
    slots = pair_slots(n)
    rng = SplitMix64(seed)
    rows = [0] * n
    if p is not None:
        if not 0.0 <= p <= 1.0:
            raise GraphError(f"p out of range: {p}")
        threshold = int(p * (1 << 64))
        for u, v in slots:
            if rng.next_u64() < threshold:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
    else:
        if not 0 <= m <= len(slots):
            raise GraphError(f"m out of range: {m}")
        idx = list(range(len(slots)))
        for i in range(m):
            j = i + rng.below(len(idx) - i)
            idx[i], idx[j] = idx[j], idx[i]
            u, v = slots[idx[i]]
            rows[u] |= 1 << v
            rows[v] |= 1 << u
    return Graph(n, tuple(rows))


# ---------------------------------------------------------------------------
# extremal-family recognizer


def recognize_h_extremal(g: Graph, a: int) -> bool:
    """True iff g is isomorphic to the extremal graph on its vertex count.

    Degree-profile candidate assignment (one vertex of degree a-1, a-1
    universal vertices, the rest of degree n-2) followed by full adjacency
    verification against the canonical construction.  Returns False on any
    mismatch; never raises for well-formed graphs.
    """
    n = g.n
    if a < 1 or n < a + 1:
        return False
    degs = sorted(degree_sequence(g))
    expected = sorted([a - 1] + [n - 1] * (a - 1) + [n - 2] * (n - a))
    if degs != expected:
        return False
    full = g.full_mask
    # n >= a+1 rules out n-1 colliding with a-1 or n-2, so the universal
    # vertices are exactly the degree-(n-1) ones counted by the multiset.
    cand_univ = mask_of(v for v in range(n) if g.adj[v] == full ^ (1 << v))
    if cand_univ.bit_count() != a - 1:
        return False
    for u in range(n):
        if cand_univ >> u & 1:
            continue
        if g.adj[u].bit_count() != a - 1:
            continue
        if g.adj[u] != cand_univ:
            continue
        rest = full & ~cand_univ & ~(1 << u)
        ok = True
        for w in bits(rest):
            if g.adj[w] != (full ^ (1 << w)) & ~(1 << u):
                ok = False
                break
        if ok:
            return True
    return False
