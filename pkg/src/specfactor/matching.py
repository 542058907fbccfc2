"""Maximum matching in general graphs by blossom contraction.

Array-based formulation: one alternating-tree BFS per initially exposed
vertex, with odd cycles (blossoms) contracted in place through a ``base``
array rather than an explicit contracted graph.  A vertex left exposed by
a failed search stays exposed in some maximum matching, so a single pass
over the vertices suffices.  A greedy warm start removes most augmenting
phases on the dense gadget graphs this package feeds in.

Deterministic: adjacency is scanned in ascending vertex order and roots
are tried in ascending order, so the returned matching is a pure function
of the input graph.
"""

from __future__ import annotations

from collections import deque

from .graphs import Graph, bits


def max_matching(g: Graph) -> frozenset[tuple[int, int]]:
    """A maximum-cardinality matching as a frozenset of (u, v), u < v."""
    n = g.n
    adj = [list(bits(g.adj[v])) for v in range(n)]
    match = [-1] * n
    for v in range(n):
        if match[v] == -1:
            for u in adj[v]:
                if match[u] == -1:
                    match[v] = u
                    match[u] = v
                    break
    parent = [-1] * n
    base = list(range(n))

    def lca(a: int, b: int) -> int:
        seen = [False] * n
        x = base[a]
        while True:
            seen[x] = True
            if match[x] == -1:
                break
            x = base[parent[match[x]]]
        y = base[b]
        while not seen[y]:
            y = base[parent[match[y]]]
        return y

    def mark_path(v: int, stem: int, child: int, in_blossom: list[bool]) -> None:
        while base[v] != stem:
            in_blossom[base[v]] = True
            in_blossom[base[match[v]]] = True
            parent[v] = child
            child = match[v]
            v = parent[match[v]]

    def find_augmenting(root: int) -> bool:
        used = [False] * n
        for i in range(n):
            parent[i] = -1
            base[i] = i
        used[root] = True
        queue = deque([root])
        while queue:
            v = queue.popleft()
            for to in adj[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and parent[match[to]] != -1):
                    stem = lca(v, to)
                    in_blossom = [False] * n
                    mark_path(v, stem, to, in_blossom)
                    mark_path(to, stem, v, in_blossom)
                    for i in range(n):
                        if in_blossom[base[i]]:
                            base[i] = stem
                            if not used[i]:
                                used[i] = True
                                queue.append(i)
                elif parent[to] == -1:
                    parent[to] = v
                    if match[to] == -1:
                        u = to
                        while u != -1:
                            pv = parent[u]
                            nxt = match[pv]
                            match[u] = pv
                            match[pv] = u
                            u = nxt
                        return True
                    used[match[to]] = True
                    queue.append(match[to])
        return False

    for v in range(n):
        if match[v] == -1:
            find_augmenting(v)
    return frozenset((v, match[v]) for v in range(n) if match[v] > v)


def is_perfect_matching(g: Graph, m: frozenset[tuple[int, int]]) -> bool:
    return 2 * len(m) == g.n
