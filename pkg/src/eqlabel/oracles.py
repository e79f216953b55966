"""Brute-force structural oracles.

Everything here is written for correctness at small scale and independence
from the constructive modules: no code is shared with the builders these
oracles check. Exponential searches are fine; callers keep instances small.
"""

from __future__ import annotations

from collections import deque
from typing import Optional

from .graphs import BipartiteGraph, Graph, connected_components


def chain_index(g: BipartiteGraph) -> int:
    """Length of the longest chain: distinct a_1..a_k on the left, distinct
    b_1..b_k on the right, with a_i ~ b_j and a_j !~ b_i for all i < j.
    Zero iff a side is empty.

    Exhaustive DFS over ordered pair sequences with incremental filtering.
    """
    if g.n_left == 0 or g.n_right == 0:
        return 0
    adj = [set(g.adj_left[a]) for a in range(g.n_left)]
    pairs = [(a, b) for a in range(g.n_left) for b in range(g.n_right)]
    best = 1

    def extend(depth: int, cands: list) -> None:
        nonlocal best
        if depth > best:
            best = depth
        if depth + len(cands) <= best:
            return
        for a, b in cands:
            nxt = [
                (a2, b2)
                for a2, b2 in cands
                if a2 != a and b2 != b and b2 in adj[a] and b not in adj[a2]
            ]
            extend(depth + 1, nxt)

    extend(0, pairs)
    return best


def is_equivalence_graph(g: BipartiteGraph) -> bool:
    """True iff every connected component is a complete bipartite graph."""
    for comp in connected_components(g):
        ls = [v for v in comp if g.side_of(v) == 0]
        rs = [v for v in comp if g.side_of(v) == 1]
        for u in ls:
            for w in rs:
                if not g.gid_adjacent(u, w):
                    return False
    return True


def _as_graph(g) -> Graph:
    if isinstance(g, Graph):
        return g
    edges = set()
    for a, b in g.edges:
        u, w = a, g.n_left + b
        edges.add((min(u, w), max(u, w)))
    return Graph(g.n, frozenset(edges))


def has_biclique(g: BipartiteGraph, s: int, t: int) -> bool:
    """True iff K_{s,t} occurs as a subgraph in either orientation."""
    from itertools import combinations

    def oriented(s_side: int, s_cnt: int, t_cnt: int) -> bool:
        if s_side == 0:
            verts = range(g.n_left)
            nbrs = g.adj_left
        else:
            verts = range(g.n_right)
            nbrs = g.adj_right
        cands = [v for v in verts if len(nbrs[v]) >= t_cnt]
        if len(cands) < s_cnt:
            return False
        for sub in combinations(cands, s_cnt):
            common = set(nbrs[sub[0]])
            for v in sub[1:]:
                common &= set(nbrs[v])
                if len(common) < t_cnt:
                    break
            else:
                if len(common) >= t_cnt:
                    return True
        return False

    if oriented(0, s, t):
        return True
    if s == t:
        return False
    return oriented(1, s, t)


# ---------------------------------------------------------------------------
# decomposition checking


def verify_decomposition(g: BipartiteGraph, dec) -> tuple:
    """Check the five structural clauses of a rooted bag decomposition
    against the graph, from scratch. Returns a tuple of violation strings,
    empty when the decomposition is valid.

    Clauses: (1) the bags partition the vertices and the first bag is a
    singleton root; (2) bags are single-sided and levels alternate sides;
    (3) every edge joins a bag to a strict ancestor bag; (4) each bag
    together with all its descendants induces a connected subgraph; (5) each
    non-root bag has a hook in its parent bag adjacent to the whole bag and
    non-adjacent to every vertex in its strict descendant bags.
    """
    bad = []
    bags = [tuple(b) for b in dec.bags]
    nb = len(bags)
    parent = tuple(dec.parent)
    hook = tuple(dec.hook)

    seen: dict = {}
    for bi, bag in enumerate(bags):
        if not bag:
            bad.append(f"bag {bi} empty")
        for v in bag:
            if v in seen:
                bad.append(f"vertex {v} in bags {seen[v]} and {bi}")
            seen[v] = bi
    if sorted(seen) != list(range(g.n)):
        bad.append("bags do not cover the vertex set")
    if bad:
        return tuple(bad)

    if len(parent) != nb or len(hook) != nb:
        return ("parent/hook length mismatch",)
    if parent[0] != -1 or len(bags[0]) != 1:
        bad.append("root bag must be the singleton with no parent")
    for bi in range(1, nb):
        if not 0 <= parent[bi] < bi:
            bad.append(f"bag {bi} parent {parent[bi]} not an earlier bag")
    if bad:
        return tuple(bad)

    depth = [0] * nb
    for bi in range(1, nb):
        depth[bi] = depth[parent[bi]] + 1
    for bi, bag in enumerate(bags):
        sides = {g.side_of(v) for v in bag}
        if len(sides) != 1:
            bad.append(f"bag {bi} mixes sides")
        elif sides != {(g.side_of(bags[0][0]) + depth[bi]) % 2}:
            bad.append(f"bag {bi} on the wrong side for its depth")

    bag_of = seen

    def is_ancestor(a: int, b: int) -> bool:
        while b != -1:
            if b == a:
                return True
            b = parent[b]
        return False

    for a, b in g.edges:
        u, w = a, g.n_left + b
        bu, bw = bag_of[u], bag_of[w]
        if bu == bw or not (is_ancestor(bu, bw) or is_ancestor(bw, bu)):
            bad.append(f"edge {u}-{w} not between a bag and its ancestor")

    children: list = [[] for _ in range(nb)]
    for bi in range(1, nb):
        children[parent[bi]].append(bi)

    def subtree(bi: int) -> list:
        out = []
        stack = [bi]
        while stack:
            x = stack.pop()
            out.append(x)
            stack.extend(children[x])
        return out

    for bi in range(nb):
        verts = [v for x in subtree(bi) for v in bags[x]]
        vset = set(verts)
        seen_c = {verts[0]}
        q = deque([verts[0]])
        while q:
            v = q.popleft()
            for w in g.gid_neighbors(v):
                if w in vset and w not in seen_c:
                    seen_c.add(w)
                    q.append(w)
        if seen_c != vset:
            bad.append(f"bag {bi} plus descendants is disconnected")

    for bi in range(1, nb):
        h = hook[bi]
        if h not in set(bags[parent[bi]]):
            bad.append(f"hook of bag {bi} not in its parent bag")
            continue
        for v in bags[bi]:
            if not g.gid_adjacent(h, v):
                bad.append(f"hook {h} misses vertex {v} of bag {bi}")
        for x in subtree(bi):
            if x == bi:
                continue
            for v in bags[x]:
                if g.gid_adjacent(h, v):
                    bad.append(
                        f"hook {h} of bag {bi} adjacent to descendant vertex {v}"
                    )
    return tuple(bad)


# ---------------------------------------------------------------------------
# edge asteroidal triples


def edge_asteroidal_triple(g) -> Optional[tuple]:
    """Find three edges such that every pair is joined by a path avoiding
    both endpoints' neighborhoods of the third edge, or None.

    Accepts a Graph or a BipartiteGraph (taken on global ids). Exact: for
    each candidate third edge the graph minus the removed vertex set is
    decomposed into components; a surviving pair is joined iff both edges
    are disjoint from the removed set and lie in one component.
    """
    gg = _as_graph(g)
    edges = sorted(gg.edges)
    m = len(edges)
    if m < 3:
        return None
    n = gg.n
    adj = [set(gg.adj[v]) for v in range(n)]

    alive = []
    ecomp = []
    for u3, w3 in edges:
        removed = adj[u3] | adj[w3] | {u3, w3}
        comp = [-1] * n
        c = 0
        for s in range(n):
            if s in removed or comp[s] != -1:
                continue
            comp[s] = c
            q = deque([s])
            while q:
                v = q.popleft()
                for w in adj[v]:
                    if w not in removed and comp[w] == -1:
                        comp[w] = c
                        q.append(w)
            c += 1
        al = []
        ec = []
        for u, w in edges:
            if u in removed or w in removed:
                al.append(False)
                ec.append(-1)
            else:
                al.append(True)
                ec.append(comp[u])
        alive.append(al)
        ecomp.append(ec)

    def ok(a: int, b: int, c: int) -> bool:
        return alive[c][a] and alive[c][b] and ecomp[c][a] == ecomp[c][b]

    # enumerate with c as the largest index; pairs (a, b) are drawn from one
    # component of the graph given c, which keeps dense instances cheap
    for c in range(2, m):
        groups: dict = {}
        for e in range(c):
            if alive[c][e]:
                groups.setdefault(ecomp[c][e], []).append(e)
        for grp in groups.values():
            for i in range(len(grp)):
                for j in range(i + 1, len(grp)):
                    a, b = grp[i], grp[j]
                    if ok(a, c, b) and ok(b, c, a):
                        return (edges[a], edges[b], edges[c])
    return None


def has_eat(g) -> bool:
    return edge_asteroidal_triple(g) is not None


# ---------------------------------------------------------------------------
# degeneracy


def _gid_adj(g):
    if isinstance(g, Graph):
        return g.n, [list(g.adj[v]) for v in range(g.n)]
    return g.n, [list(g.gid_neighbors(v)) for v in range(g.n)]


def degeneracy_with_residuals(g) -> tuple:
    """Min-degree elimination. Returns (k, order, residual) where order is
    the removal order (ties to the smallest id), residual[i] the degree of
    order[i] at its removal, and k = max residual. Empty graph gives 0."""
    n, adj = _gid_adj(g)
    deg = [len(a) for a in adj]
    dead = [False] * n
    nbrs = [set(a) for a in adj]
    order = []
    residual = []
    k = 0
    for _ in range(n):
        v = min((x for x in range(n) if not dead[x]), key=lambda x: (deg[x], x))
        order.append(v)
        residual.append(deg[v])
        k = max(k, deg[v])
        dead[v] = True
        for w in nbrs[v]:
            if not dead[w]:
                deg[w] -= 1
                nbrs[w].discard(v)
    return k, tuple(order), tuple(residual)


def degeneracy(g) -> tuple:
    """(degeneracy, elimination order) by repeated min-degree removal."""
    k, order, _ = degeneracy_with_residuals(g)
    return k, order
