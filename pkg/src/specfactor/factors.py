"""Parity-factor deciders and deficiency evaluators.

An (a, b)-parity factor is a spanning subgraph F with
a <= d_F(v) <= b and d_F(v) == b (mod 2) at every vertex; the pair must
satisfy a <= b, a == b (mod 2).  Non-existence is characterized by some
disjoint pair (S, T) having negative deficiency

    eta(S, T) = b|S| - a|T| + sum_{x in T} d_{G-S}(x) - q(S, T),

where q counts the components C of G - S - T with a|V(C)| + e(V(C), T)
odd.  Three independent deciders are provided:

* ``decide_lovasz``   -- scans all 3^n (S, T) assignments for a negative
                         deficiency certificate (exact criterion search);
* ``decide_matching`` -- reduces to a perfect matching on a degree gadget
                         and runs the blossom algorithm;
* ``decide_enum``     -- enumerates edge subsets directly (tiny graphs, the
                         ground-truth oracle).

All deciders apply the parity pre-check first: when n*a is odd the pair
(empty, empty) always certifies non-existence, because an odd number of
odd-size components survives in G.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction

from .graphs import Graph, GraphError, bits, components_within, from_edges, min_degree
from .matching import max_matching


class CapacityError(GraphError):
    """Instance too large for the requested exhaustive decider."""


class GadgetInfeasible(GraphError):
    """Some vertex degree is below the factor floor; no factor can exist."""


LOVASZ_VERTEX_CAP = 14
ENUM_EDGE_CAP = 22


@dataclass(frozen=True)
class FactorSpec:
    """Uniform degree window [a, b] with the parity of b required at each vertex."""

    a: int
    b: int

    def __post_init__(self) -> None:
        if self.a < 1 or self.a > self.b or (self.b - self.a) % 2 != 0:
            raise GraphError(f"need 1 <= a <= b with a == b (mod 2), got ({self.a},{self.b})")


@dataclass(frozen=True)
class GeneralFactorSpec:
    """Per-vertex degree bounds g <= f, optionally with parity pinned to f."""

    g: tuple[int, ...]
    f: tuple[int, ...]
    parity: bool

    def __post_init__(self) -> None:
        if len(self.g) != len(self.f):
            raise GraphError("g and f must have equal length")
        for gv, fv in zip(self.g, self.f):
            if not 0 <= gv <= fv:
                raise GraphError(f"need 0 <= g(v) <= f(v), got ({gv},{fv})")
            if self.parity and (fv - gv) % 2 != 0:
                raise GraphError(f"parity spec needs g(v) == f(v) (mod 2), got ({gv},{fv})")

    @classmethod
    def uniform(cls, spec: FactorSpec, n: int, parity: bool = True) -> GeneralFactorSpec:
        return cls((spec.a,) * n, (spec.b,) * n, parity)


@dataclass(frozen=True)
class DeficiencyCertificate:
    """Disjoint (S, T) witnessing non-existence: eta <= -1."""

    s_mask: int
    t_mask: int
    eta: int
    q: int

    def to_json(self) -> dict:
        return {
            "S": list(bits(self.s_mask)),
            "T": list(bits(self.t_mask)),
            "eta": self.eta,
            "q": self.q,
        }


@dataclass(frozen=True)
class FactorResult:
    exists: bool
    method: str
    factor: frozenset[tuple[int, int]] | None = None
    certificate: DeficiencyCertificate | None = None

    def to_json(self) -> dict:
        out: dict = {"decision": "yes" if self.exists else "no", "method": self.method}
        if self.factor is not None:
            out["factor_edges"] = [list(e) for e in sorted(self.factor)]
        if self.certificate is not None:
            out["certificate"] = self.certificate.to_json()
        return out


# ---------------------------------------------------------------------------
# deficiency evaluators


def q_count(g: Graph, s_mask: int, t_mask: int, a: int) -> int:
    """Components C of G - S - T with a|V(C)| + e(V(C), T) odd."""
    if s_mask & t_mask:
        raise GraphError("S and T must be disjoint")
    region = g.full_mask & ~s_mask & ~t_mask
    count = 0
    for comp in components_within(g, region):
        cross = 0
        for v in bits(comp):
            cross += (g.adj[v] & t_mask).bit_count()
        if (a * comp.bit_count() + cross) % 2 == 1:
            count += 1
    return count


def eta_parity(g: Graph, s_mask: int, t_mask: int, spec: FactorSpec) -> int:
    """The uniform-window deficiency b|S| - a|T| + sum d_{G-S}(x) - q(S, T)."""
    if s_mask & t_mask:
        raise GraphError("S and T must be disjoint")
    deg_sum = 0
    for x in bits(t_mask):
        deg_sum += (g.adj[x] & ~s_mask).bit_count()
    return (
        spec.b * s_mask.bit_count()
        - spec.a * t_mask.bit_count()
        + deg_sum
        - q_count(g, s_mask, t_mask, spec.a)
    )


def eta_general(g: Graph, s_mask: int, t_mask: int, spec: GeneralFactorSpec) -> int:
    """Deficiency for per-vertex bounds.

    With the parity flag the component count q uses g(V(C)) + e(V(C), T);
    without it the count only covers components where g == f throughout
    (with f(V(C)) + e(V(C), T) odd), matching the non-parity criterion.
    """
    if s_mask & t_mask:
        raise GraphError("S and T must be disjoint")
    if len(spec.g) != g.n:
        raise GraphError("spec length != vertex count")
    f_s = sum(spec.f[v] for v in bits(s_mask))
    g_t = sum(spec.g[v] for v in bits(t_mask))
    deg_sum = 0
    for x in bits(t_mask):
        deg_sum += (g.adj[x] & ~s_mask).bit_count()
    region = g.full_mask & ~s_mask & ~t_mask
    q = 0
    for comp in components_within(g, region):
        verts = list(bits(comp))
        if not spec.parity and any(spec.g[v] != spec.f[v] for v in verts):
            continue
        weight = sum((spec.g[v] if spec.parity else spec.f[v]) for v in verts)
        cross = 0
        for v in verts:
            cross += (g.adj[v] & t_mask).bit_count()
        if (weight + cross) % 2 == 1:
            q += 1
    return f_s - g_t + deg_sum - q


# ---------------------------------------------------------------------------
# decider 1: exhaustive criterion scan


def _region_components(g: Graph, region: int, memo: dict) -> tuple[tuple[int, int], ...]:
    """Per-component (|C| mod 2, mask of outside vertices with odd edge count
    into C) for the subgraph induced on ``region``; memoized and independent
    of the factor window, so one table serves every spec."""
    cached = memo.get(region)
    if cached is not None:
        return cached
    full = g.full_mask
    info = []
    for comp in components_within(g, region):
        # parity of e(C, T) is then the popcount parity of odd_mask & T
        odd_mask = 0
        for u in bits(full & ~region):
            if (g.adj[u] & comp).bit_count() & 1:
                odd_mask |= 1 << u
        info.append((comp.bit_count() & 1, odd_mask))
    out = tuple(info)
    memo[region] = out
    return out


def _eta_via_memo(g: Graph, s_mask: int, t_mask: int, a: int, partial: int, memo: dict) -> tuple[int, int]:
    q = 0
    a_odd = a & 1
    for size_parity, odd_mask in _region_components(g, g.full_mask & ~s_mask & ~t_mask, memo):
        q += ((a_odd & size_parity) + (odd_mask & t_mask).bit_count()) & 1
    return partial - q, q


def decide_lovasz(
    g: Graph,
    spec: FactorSpec,
    cap: int = LOVASZ_VERTEX_CAP,
    region_memo: dict | None = None,
) -> FactorResult:
    """Scan all 3^n disjoint (S, T) assignments for a negative deficiency.

    Returns the lexicographically least certificate (ascending S mask, then
    ascending T mask) so failures reproduce byte for byte; returns yes when
    no assignment dips below zero.

    The scan exploits q(S, T) <= n - |S| - |T|: whole S branches (and
    individual T's) whose deficiency lower bound is already nonnegative are
    skipped, and the existence pass walks T in Gray-code order so the degree
    sums update incrementally.  When a certificate exists, a second pass in
    ascending (S, T) order locates the first one, so pruning never changes
    the reported certificate.  ``region_memo`` may be shared across calls on
    the same graph to reuse component tables between factor windows.
    """
    n = g.n
    if n > cap:
        raise CapacityError(f"criterion scan capped at {cap} vertices, got {n}")
    if n > LOVASZ_VERTEX_CAP:
        warnings.warn(f"criterion scan on {n} vertices walks 3^{n} assignments", stacklevel=2)
    if (n * spec.a) % 2 == 1:
        q0 = q_count(g, 0, 0, spec.a)
        return FactorResult(False, "lovasz", certificate=DeficiencyCertificate(0, 0, -q0, q0))
    full = g.full_mask
    a, b = spec.a, spec.b
    memo: dict = {} if region_memo is None else region_memo

    def exists_negative() -> bool:
        for s_mask in range(full + 1):
            comp_s = full & ~s_mask
            s_size = s_mask.bit_count()
            rest = n - s_size
            bs = b * s_size
            verts = list(bits(comp_s))
            deg = [(g.adj[x] & comp_s).bit_count() for x in verts]
            s_bound = bs - rest + sum(min(d - a + 1, 0) for d in deg)
            if s_bound >= 0:
                continue
            # T = empty first, then Gray-code toggles over comp_s.
            t_mask = 0
            t_size = 0
            deg_sum = 0
            partial = bs
            if partial - rest <= -1:
                eta, _ = _eta_via_memo(g, s_mask, 0, a, partial, memo)
                if eta <= -1:
                    return True
            for j in range(1, 1 << len(verts)):
                idx = (j & -j).bit_length() - 1
                bit = 1 << verts[idx]
                if t_mask & bit:
                    t_mask ^= bit
                    t_size -= 1
                    deg_sum -= deg[idx]
                else:
                    t_mask |= bit
                    t_size += 1
                    deg_sum += deg[idx]
                partial = bs - a * t_size + deg_sum
                if partial - (rest - t_size) <= -1:
                    eta, _ = _eta_via_memo(g, s_mask, t_mask, a, partial, memo)
                    if eta <= -1:
                        return True
        return False

    if not exists_negative():
        return FactorResult(True, "lovasz")
    for s_mask in range(full + 1):
        comp_s = full & ~s_mask
        s_size = s_mask.bit_count()
        rest = n - s_size
        bs = b * s_size
        deg = {}
        for x in bits(comp_s):
            deg[x] = (g.adj[x] & ~s_mask).bit_count()
        t_mask = 0
        while True:
            t_size = t_mask.bit_count()
            deg_sum = sum(deg[x] for x in bits(t_mask))
            partial = bs - a * t_size + deg_sum
            if partial - (rest - t_size) <= -1:
                eta, q = _eta_via_memo(g, s_mask, t_mask, a, partial, memo)
                if eta <= -1:
                    return FactorResult(
                        False,
                        "lovasz",
                        certificate=DeficiencyCertificate(s_mask, t_mask, eta, q),
                    )
            t_mask = (t_mask - comp_s) & comp_s
            if t_mask == 0:
                break
    raise RuntimeError("existence pass found a certificate the ordered pass missed")


# ---------------------------------------------------------------------------
# decider 2: gadget reduction + blossom matching


@dataclass(frozen=True)
class GadgetMap:
    """Auxiliary matching graph plus the bookkeeping to read a factor back.

    Per original vertex v of degree d: d edge-nodes (one per incident
    edge), max(d-b, 0) forced cores adjacent to all of v's edge-nodes, and
    min(d, b) - a flexible cores adjacent to v's edge-nodes and to each
    other.  Each original edge contributes one cross edge between the two
    dedicated edge-nodes.  A perfect matching of the gadget selects, per
    vertex, between a and b cross edges of the right parity.
    """

    graph: Graph
    cross_edges: tuple[tuple[int, int], ...]  # aligned with original edge list
    original_edges: tuple[tuple[int, int], ...]
    edge_node_ranges: tuple[tuple[int, int], ...]
    forced_ranges: tuple[tuple[int, int], ...]
    flexible_ranges: tuple[tuple[int, int], ...]


def build_gadget(g: Graph, spec: FactorSpec) -> GadgetMap:
    a, b = spec.a, spec.b
    degs = [row.bit_count() for row in g.adj]
    for v, d in enumerate(degs):
        if d < a:
            raise GadgetInfeasible(f"vertex {v} has degree {d} < a={a}")
    edges = g.edges()
    edge_node: dict[tuple[int, int], int] = {}
    edge_node_ranges = []
    forced_ranges = []
    flexible_ranges = []
    aux_edges: list[tuple[int, int]] = []
    nxt = 0
    for v in range(g.n):
        d = degs[v]
        en_start = nxt
        my_nodes = []
        for u in bits(g.adj[v]):
            node = nxt
            nxt += 1
            my_nodes.append(node)
            edge_node[(v, u)] = node
        edge_node_ranges.append((en_start, nxt))
        forced_start = nxt
        for _ in range(max(d - b, 0)):
            core = nxt
            nxt += 1
            aux_edges.extend((core, node) for node in my_nodes)
        forced_ranges.append((forced_start, nxt))
        flex_start = nxt
        flex_nodes = []
        for _ in range(min(d, b) - a):
            core = nxt
            nxt += 1
            aux_edges.extend((core, node) for node in my_nodes)
            flex_nodes.append(core)
        for i, x in enumerate(flex_nodes):
            for y in flex_nodes[i + 1:]:
                aux_edges.append((x, y))
        flexible_ranges.append((flex_start, nxt))
    cross = []
    for u, v in edges:
        cu = edge_node[(u, v)]
        cv = edge_node[(v, u)]
        aux_edges.append((cu, cv))
        cross.append((cu, cv))
    aux = from_edges(nxt, aux_edges, cap=max(nxt, 64))
    return GadgetMap(
        graph=aux,
        cross_edges=tuple(cross),
        original_edges=tuple(edges),
        edge_node_ranges=tuple(edge_node_ranges),
        forced_ranges=tuple(forced_ranges),
        flexible_ranges=tuple(flexible_ranges),
    )


def decide_matching(g: Graph, spec: FactorSpec) -> FactorResult:
    """Gadget reduction: a perfect matching of the gadget is a factor.

    Pre-checks: odd n*a can never support the required degree parities, and
    a vertex of degree < a makes the window unreachable; both return an
    immediate no (this decider does not produce deficiency certificates).
    """
    if (g.n * spec.a) % 2 == 1:
        return FactorResult(False, "matching")
    if g.n == 0:
        return FactorResult(True, "matching", factor=frozenset())
    if min_degree(g) < spec.a:
        return FactorResult(False, "matching")
    gadget = build_gadget(g, spec)
    matched = max_matching(gadget.graph)
    if 2 * len(matched) != gadget.graph.n:
        return FactorResult(False, "matching")
    chosen = []
    for edge, cross in zip(gadget.original_edges, gadget.cross_edges):
        cu, cv = cross
        if (min(cu, cv), max(cu, cv)) in matched:
            chosen.append(edge)
    factor = frozenset(chosen)
    if not validate_factor(g, factor, spec):
        raise RuntimeError("gadget produced an invalid factor; reduction bug")
    return FactorResult(True, "matching", factor=factor)


# ---------------------------------------------------------------------------
# decider 3: edge-subset enumeration (ground truth at toy scale)


def decide_enum(g: Graph, spec: FactorSpec, m_cap: int = ENUM_EDGE_CAP) -> FactorResult:
    """Try every edge subset in increasing bitmask order over the sorted
    edge list; degree counters are updated incrementally, so the whole scan
    is O(2^m) with a constant near two updates per subset."""
    m = g.edge_count()
    if m > m_cap:
        raise CapacityError(f"subset enumeration capped at {m_cap} edges, got {m}")
    if (g.n * spec.a) % 2 == 1:
        return FactorResult(False, "enum")
    a, b = spec.a, spec.b
    n = g.n
    target_parity = b & 1

    def ok(d: int) -> bool:
        return a <= d <= b and (d & 1) == target_parity

    degs = [0] * n
    bad = sum(0 if ok(0) else 1 for _ in range(n))
    if bad == 0:
        return FactorResult(True, "enum", factor=frozenset())
    edges = g.edges()
    for k in range(1, 1 << m):
        flips = k ^ (k - 1)
        while flips:
            low = flips & -flips
            i = low.bit_length() - 1
            flips ^= low
            delta = 1 if k >> i & 1 else -1
            for w in edges[i]:
                was_ok = ok(degs[w])
                degs[w] += delta
                now_ok = ok(degs[w])
                bad += (not now_ok) - (not was_ok)
        if bad == 0:
            chosen = frozenset(edges[i] for i in range(m) if k >> i & 1)
            return FactorResult(True, "enum", factor=chosen)
    return FactorResult(False, "enum")


# ---------------------------------------------------------------------------
# validation and the degree-condition hypothesis check


def validate_factor(g: Graph, factor, spec: FactorSpec) -> bool:
    """True iff the edge set is a subgraph of g meeting window and parity."""
    degs = [0] * g.n
    seen = set()
    for u, v in factor:
        lo, hi = (u, v) if u < v else (v, u)
        if (lo, hi) in seen:
            return False
        seen.add((lo, hi))
        if not (0 <= lo < g.n and 0 <= hi < g.n) or not g.adj[lo] >> hi & 1:
            return False
        degs[lo] += 1
        degs[hi] += 1
    parity = spec.b & 1
    return all(spec.a <= d <= spec.b and (d & 1) == parity for d in degs)


def liu_lu_check(g: Graph, spec: FactorSpec) -> bool:
    """Degree-condition hypothesis: connected, order floor, min-degree floor,
    and a max-degree floor over every non-adjacent vertex pair (all compared
    in exact rational arithmetic)."""
    a, b = spec.a, spec.b
    n = g.n
    if n == 0 or (n * a) % 2 == 1:
        return False
    if len(components_within(g, g.full_mask)) != 1:
        return False
    if Fraction(n) < Fraction(b * (a + b) * (a + b + 2), 2 * a):
        return False
    if Fraction(min_degree(g)) < a + Fraction(b - a, a):
        return False
    floor = Fraction(a * n, a + b)
    degs = [row.bit_count() for row in g.adj]
    for u in range(n):
        for v in range(u + 1, n):
            if not g.adj[u] >> v & 1 and max(degs[u], degs[v]) < floor:
                return False
    return True
