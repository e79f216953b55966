"""Constant-cost adjacency protocols over an equality oracle.

A run is a sequence of events, each appending one bit to the transcript:

    ("bit", v, party, None, None)   party ("A"/"B") announces bit v
    ("eq",  v, None, op_a, op_b)    oracle call; v = [op_a == op_b]

The output is +1 for adjacent and -1 for non-adjacent. Two properties are
maintained throughout and are what the label compiler relies on: every
operand and announced bit is a function of one party's own input plus the
prior transcript, and the control flow (which event comes next, when the
run stops, what it outputs) is a function of the transcript alone.

The general bipartite protocol recurses on sub-instances. A sub-instance is
two disjoint vertex sets plus a flip flag; its adjacency is the base
adjacency XOR flip. Each fresh call starts from scratch: one bit for the
caller's side, one guarded equality on connected-component ids (the guard
sends a sentinel when the sides coincide, so the call also settles same-side
and cross-component pairs), then the bag-tree descent. Equivalence-graph
instances exit right after the component call, giving the two-event base
case. Chain index strictly decreases along every recursion, which bounds
both depth and cost by functions of the top-level chain index.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

from .graphs import BipartiteGraph
from .geometry import UdgRealization, signrank3_decompose, signrank_graph
from .gyarfas import (
    decompose_neighbors,
    edge_ancestors,
    max_back_degree,
    parity_vertices,
)

SENTINEL = ("s",)


class ProtocolError(RuntimeError):
    pass


@dataclass(frozen=True)
class Run:
    """One finished protocol run: output sign, events, recursion depth."""

    output: int
    events: tuple
    depth: int

    @property
    def cost(self) -> int:
        return len(self.events)

    @property
    def prefix(self) -> tuple:
        return tuple(e[1] for e in self.events)


class _Ctx:
    __slots__ = ("events", "limit")

    def __init__(self, limit: int):
        self.events: list = []
        self.limit = limit

    def bit(self, value, party: str) -> int:
        v = 1 if value else 0
        if len(self.events) >= self.limit:
            raise ProtocolError("event limit exceeded")
        self.events.append(("bit", v, party, None, None))
        return v

    def eq(self, op_a, op_b) -> int:
        v = 1 if op_a == op_b else 0
        if len(self.events) >= self.limit:
            raise ProtocolError("event limit exceeded")
        self.events.append(("eq", v, None, op_a, op_b))
        return v


class _Instance:
    """Memoized plan for one sub-instance: adjacency, components, and the
    lazily built per-component bag trees."""

    def __init__(self, solver: "_Solver", left: tuple, right: tuple, flip: bool):
        self.solver = solver
        self.left = left
        self.right = right
        self.flip = flip
        self.side = {v: 0 for v in left}
        self.side.update({v: 1 for v in right})
        base = solver.base_adjacent
        nbrs = {v: set() for v in left}
        nbrs.update({v: set() for v in right})
        for u in left:
            nu = nbrs[u]
            for w in right:
                if base(u, w) != flip:
                    nu.add(w)
                    nbrs[w].add(u)
        self.nbrs = nbrs

        comp_of: dict = {}
        comps: dict = {}
        for s in sorted(nbrs):
            if s in comp_of:
                continue
            comp = {s}
            stack = [s]
            while stack:
                v = stack.pop()
                for w in nbrs[v]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            m = min(comp)
            comps[m] = tuple(sorted(comp))
            for v in comp:
                comp_of[v] = m
        self.comp_of = comp_of
        self.comps = comps
        self.is_equivalence = all(
            len(self.nbrs[u]) == sum(1 for v in comps[m] if self.side[v] == 1)
            for m in comps
            for u in comps[m]
            if self.side[u] == 0
        )
        self._plans: dict = {}

    def adjacent(self, u, w) -> bool:
        return self.solver.base_adjacent(u, w) != self.flip

    def comp_token(self, v) -> tuple:
        return ("c", self.comp_of[v])

    def comp_plan(self, cmin) -> "_CompPlan":
        plan = self._plans.get(cmin)
        if plan is None:
            plan = _CompPlan(self, cmin)
            self._plans[cmin] = plan
        return plan


class _CompPlan:
    """Bag tree of one connected component, rooted at its smallest side-0
    vertex, plus the step-3 child instances and depth-1 parity plans."""

    def __init__(self, inst: _Instance, cmin):
        self.inst = inst
        verts = inst.comps[cmin]
        root = min(v for v in verts if inst.side[v] == 0)
        self.T = decompose_neighbors({v: inst.nbrs[v] for v in verts}, root)
        self.maxL = max_back_degree(self.T, inst.nbrs)
        self._eanc: dict = {}
        self._parity: dict = {}
        self._step3: dict = {}

    def edge_anc(self, b: int) -> tuple:
        out = self._eanc.get(b)
        if out is None:
            out = edge_ancestors(self.T, self.inst.nbrs, b)
            self._eanc[b] = out
        return out

    def parity_plan(self, b: int) -> "_ParityPlan":
        pp = self._parity.get(b)
        if pp is None:
            pp = _ParityPlan(self.inst, self.T, b)
            self._parity[b] = pp
        return pp

    def step3_instance(self, b: int) -> _Instance:
        inst = self._step3.get(b)
        if inst is None:
            verts = list(self.T.bags[b]) + list(parity_vertices(self.T, b))
            side = self.inst.side
            lo = tuple(sorted(v for v in verts if side[v] == 0))
            hi = tuple(sorted(v for v in verts if side[v] == 1))
            inst = self.inst.solver.instance(lo, hi, self.inst.flip)
            self._step3[b] = inst
        return inst


class _ParityPlan:
    """For a depth-1 bag B: the complement instance between B and the
    opposite-parity vertices below it, its components, and one bag tree per
    component rooted inside B."""

    def __init__(self, inst: _Instance, T, b_idx: int):
        self.inst = inst
        bverts = T.bags[b_idx]
        pverts = parity_vertices(T, b_idx)
        self.bset = frozenset(bverts)
        nbrs = {v: set() for v in bverts}
        nbrs.update({v: set() for v in pverts})
        for u in pverts:
            nu = nbrs[u]
            for w in bverts:
                if not inst.adjacent(u, w):
                    nu.add(w)
                    nbrs[w].add(u)
        self.bcnbrs = nbrs

        comp_of: dict = {}
        comps: dict = {}
        for s in sorted(nbrs):
            if s in comp_of:
                continue
            comp = {s}
            stack = [s]
            while stack:
                v = stack.pop()
                for w in nbrs[v]:
                    if w not in comp:
                        comp.add(w)
                        stack.append(w)
            m = min(comp)
            comps[m] = tuple(sorted(comp))
            for v in comp:
                comp_of[v] = m
        self.bccomp_of = comp_of
        self.bccomps = comps
        self._trees: dict = {}
        self._maxL: dict = {}
        self._eanc: dict = {}
        self._children: dict = {}

    def bccomp_token(self, v) -> tuple:
        return ("b", self.bccomp_of[v])

    def tree(self, cmin):
        t = self._trees.get(cmin)
        if t is None:
            verts = self.bccomps[cmin]
            root = min(v for v in verts if v in self.bset)
            t = decompose_neighbors({v: self.bcnbrs[v] for v in verts}, root)
            self._trees[cmin] = t
        return t

    def max_back(self, cmin) -> int:
        l = self._maxL.get(cmin)
        if l is None:
            l = max_back_degree(self.tree(cmin), self.bcnbrs)
            self._maxL[cmin] = l
        return l

    def edge_anc(self, cmin, b: int) -> tuple:
        key = (cmin, b)
        out = self._eanc.get(key)
        if out is None:
            out = edge_ancestors(self.tree(cmin), self.bcnbrs, b)
            self._eanc[key] = out
        return out

    def child_instance(self, cmin, b: int) -> _Instance:
        key = (cmin, b)
        inst = self._children.get(key)
        if inst is None:
            verts = self.tree(cmin).subtree_vertices(b)
            side = self.inst.side
            lo = tuple(v for v in verts if side[v] == 0)
            hi = tuple(v for v in verts if side[v] == 1)
            inst = self.inst.solver.instance(lo, hi, not self.inst.flip)
            self._children[key] = inst
        return inst


class _Solver:
    """Shared machinery: instance memo plus the recursive fresh call."""

    def __init__(self, base_adjacent, event_limit: int = 4096):
        self.base_adjacent = base_adjacent
        self.event_limit = event_limit
        self._instances: dict = {}

    def instance(self, left: tuple, right: tuple, flip: bool) -> _Instance:
        key = (left, right, flip)
        inst = self._instances.get(key)
        if inst is None:
            inst = _Instance(self, left, right, flip)
            self._instances[key] = inst
        return inst

    def run_pair(self, inst: _Instance, ax, by) -> Run:
        ctx = _Ctx(self.event_limit)
        out, depth = self.fresh(inst, ax, by, ctx, 1)
        return Run(out, tuple(ctx.events), depth)

    def fresh(self, inst: _Instance, ax, by, ctx: _Ctx, depth: int) -> tuple:
        """One protocol instance from the top. ax is real-Alice's vertex,
        by real-Bob's; internal roles swap so the bag tree is always rooted
        on side 0, with every event attributed to the real party."""
        sa = inst.side[ax]
        sb = inst.side[by]
        ctx.bit(sa, "A")
        op_a = inst.comp_token(ax)
        op_b = inst.comp_token(by) if sb != sa else SENTINEL
        if not ctx.eq(op_a, op_b):
            return -1, depth
        if inst.is_equivalence:
            # same component of an equivalence instance: a complete pair
            return 1, depth
        plan = inst.comp_plan(inst.comp_of[ax])
        if sa == 0:
            px, py, p_a, p_b = ax, by, "A", "B"
        else:
            px, py, p_a, p_b = by, ax, "B", "A"

        def eq_xy(op_x, op_y):
            # operands in real (Alice, Bob) order
            if p_a == "A":
                return ctx.eq(op_x, op_y)
            return ctx.eq(op_y, op_x)

        T = plan.T
        bx = T.bag_of[px]
        bb = T.bag_of[py]

        # step 1: the root vertex is adjacent exactly to the depth-1 bags
        if ctx.bit(bx == 0, p_a):
            return (1 if ctx.bit(T.depth[bb] == 1, p_b) else -1), depth

        if ctx.bit(T.depth[bb] == 1, p_b):
            # step 2: the peer's bag B sits at depth 1. An edge needs B to
            # be the depth-1 ancestor of x's bag.
            anc1 = T.ancestor_at_depth(bx, 1)
            if not eq_xy(("g", anc1), ("g", bb)):
                return -1, depth
            pp = plan.parity_plan(bb)
            # complement trick: different complement components mean the
            # complement has no edge here, i.e. the instance has one
            if not eq_xy(pp.bccomp_token(px), pp.bccomp_token(py)):
                return 1, depth
            cmin = pp.bccomp_of[px]
            Y = pp.tree(cmin)
            if ctx.bit(py == Y.root, p_b):
                v = ctx.bit(Y.depth[Y.bag_of[px]] == 1, p_a)
                return (-1 if v else 1), depth
            L = pp.max_back(cmin)
            x_anc = pp.edge_anc(cmin, Y.bag_of[px])
            oy = ("y", Y.bag_of[py])
            for k in range(L):
                ox = ("y", x_anc[k]) if k < len(x_anc) else SENTINEL
                if eq_xy(ox, oy):
                    child = pp.child_instance(cmin, x_anc[k])
                    r, d = self.fresh(child, ax, by, ctx, depth + 1)
                    return -r, d
            y_anc = pp.edge_anc(cmin, Y.bag_of[py])
            ox = ("y", Y.bag_of[px])
            for k in range(L):
                oy = ("y", y_anc[k]) if k < len(y_anc) else SENTINEL
                if eq_xy(ox, oy):
                    child = pp.child_instance(cmin, Y.bag_of[px])
                    r, d = self.fresh(child, ax, by, ctx, depth + 1)
                    return -r, d
            # bags not joined by any edge: complement-non-adjacent pair
            return 1, depth

        # step 3: the peer's bag is at odd depth >= 3; an edge needs one
        # bag to be an edge-holding ancestor of the other
        L = plan.maxL
        x_anc = plan.edge_anc(bx)
        oy = ("g", bb)
        for k in range(L):
            ox = ("g", x_anc[k]) if k < len(x_anc) else SENTINEL
            if eq_xy(ox, oy):
                child = plan.step3_instance(x_anc[k])
                r, d = self.fresh(child, ax, by, ctx, depth + 1)
                return r, d
        y_anc = plan.edge_anc(bb)
        ox = ("g", bx)
        for k in range(L):
            oy = ("g", y_anc[k]) if k < len(y_anc) else SENTINEL
            if eq_xy(ox, oy):
                child = plan.step3_instance(bx)
                r, d = self.fresh(child, ax, by, ctx, depth + 1)
                return r, d
        return -1, depth


# ---------------------------------------------------------------------------
# public protocols


class BipartiteProtocol:
    """Adjacency protocol for a bipartite graph over its global vertex ids.
    Any ordered pair is answerable; same-side pairs cost two events."""

    def __init__(self, g: BipartiteGraph, event_limit: int = 4096):
        self.graph = g
        self._solver = _Solver(g.gid_adjacent, event_limit)
        self._top = self._solver.instance(
            tuple(range(g.n_left)), tuple(range(g.n_left, g.n)), False
        )

    @property
    def n(self) -> int:
        return self.graph.n

    def run(self, u: int, w: int) -> Run:
        if not (0 <= u < self.n and 0 <= w < self.n):
            raise ValueError("vertex out of range")
        return self._solver.run_pair(self._top, u, w)

    def truth(self, u: int, w: int) -> int:
        return 1 if self.graph.gid_adjacent(u, w) else -1


UDG_OFFSETS = tuple(
    (dx, dy) for dx in range(-2, 3) for dy in range(-2, 3) if (dx, dy) != (0, 0)
)


class UnitDiskProtocol:
    """Adjacency protocol for a unit-disk realization over its point ids.

    Same grid cell answers in one equality call. Otherwise the 24 candidate
    cell offsets are scanned in lexicographic order, two coordinate
    equalities each; a full match hands the pair to the general protocol on
    the complement of the two-cell bipartite piece, whose answer is negated."""

    def __init__(self, r: UdgRealization, event_limit: int = 4096):
        self.realization = r
        self._solver = _Solver(r.adjacent, event_limit)
        cells: dict = {}
        for i in range(r.n):
            cells.setdefault(r.cell(i), []).append(i)
        self.cells = {c: tuple(v) for c, v in cells.items()}

    @property
    def n(self) -> int:
        return self.realization.n

    def run(self, i: int, j: int) -> Run:
        if not (0 <= i < self.n and 0 <= j < self.n):
            raise ValueError("point out of range")
        ctx = _Ctx(self._solver.event_limit)
        ca = self.realization.cell(i)
        cb = self.realization.cell(j)
        if ctx.eq(("cell",) + ca, ("cell",) + cb):
            return Run(1, tuple(ctx.events), 1)
        for dx, dy in UDG_OFFSETS:
            vx = ctx.eq(("cx", ca[0] + dx), ("cx", cb[0]))
            vy = ctx.eq(("cy", ca[1] + dy), ("cy", cb[1]))
            if vx and vy:
                xs = self.cells[ca]
                ys = self.cells[cb]
                inst = self._solver.instance(xs, ys, True)
                r, d = self._solver.fresh(inst, i, j, ctx, 2)
                return Run(-r, tuple(ctx.events), d)
        # cells more than two apart on an axis: farther than the radius
        return Run(-1, tuple(ctx.events), 1)

    def truth(self, i: int, j: int) -> int:
        return 1 if self.realization.adjacent(i, j) else -1


class SignRankProtocol:
    """Adjacency protocol for a rank-3 sign factorization: u and w are
    adjacent when their inner product is positive. Three announced bits
    select the mixed piece (one for u's class, two for w's normal pattern),
    then the general protocol runs on that piece."""

    def __init__(self, a_vectors, b_vectors, event_limit: int = 4096):
        self.decomposition = signrank3_decompose(a_vectors, b_vectors)
        self.graph = signrank_graph(a_vectors, b_vectors)
        self.n_u = len(a_vectors)
        self.n_w = len(b_vectors)
        self._solver = _Solver(self.graph.gid_adjacent, event_limit)

    def run(self, u: int, w: int) -> Run:
        if not (0 <= u < self.n_u and 0 <= w < self.n_w):
            raise ValueError("index out of range")
        d = self.decomposition
        cls = d.u_class[u]
        pat = d.w_pattern[w]
        ctx = _Ctx(self._solver.event_limit)
        ctx.bit(cls, "A")
        ctx.bit((pat >> 1) & 1, "B")
        ctx.bit(pat & 1, "B")
        _, uids, wids = d.pieces[(cls, pat)]
        inst = self._solver.instance(
            tuple(uids), tuple(self.n_u + wi for wi in wids), False
        )
        r, dep = self._solver.fresh(inst, u, self.n_u + w, ctx, 2)
        return Run(r, tuple(ctx.events), dep)

    def truth(self, u: int, w: int) -> int:
        return 1 if self.graph.has_edge(u, w) else -1
