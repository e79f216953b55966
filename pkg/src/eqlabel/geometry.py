"""Exact rational geometry: point-halfspace scenes, the sign-rank-3 reduction
pipeline, unit-disk realizations with their grid partition, and the
incidence-degeneracy checks.

Everything is computed over fractions.Fraction; there is no epsilon anywhere.
A halfspace is a pair (normal, threshold) and a point p lies in it when
<normal, p> > threshold. Scenes enforce globally that no point lies on a
halfspace boundary, so the strict and closed readings coincide.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .graphs import BipartiteGraph, Graph
from . import oracles


def _frac_vec(v) -> tuple:
    return tuple(Fraction(x) for x in v)


def dot(a: Sequence, b: Sequence) -> Fraction:
    return sum((x * y for x, y in zip(a, b)), Fraction(0))


class DegenerateSceneError(ValueError):
    """A point lies exactly on a halfspace boundary."""


@dataclass(frozen=True)
class Scene:
    """Points and halfspaces in Q^dim. Membership is <w, p> > t."""

    dim: int
    points: tuple
    halfspaces: tuple  # tuples (normal, threshold)

    @staticmethod
    def make(dim: int, points, halfspaces) -> "Scene":
        if dim not in (1, 2, 3, 4):
            raise ValueError("dim must be 1..4")
        pts = tuple(_frac_vec(p) for p in points)
        hs = tuple((_frac_vec(w), Fraction(t)) for w, t in halfspaces)
        for p in pts:
            if len(p) != dim:
                raise ValueError("point dimension mismatch")
        for w, _ in hs:
            if len(w) != dim:
                raise ValueError("normal dimension mismatch")
        for pi, p in enumerate(pts):
            for hi, (w, t) in enumerate(hs):
                if dot(w, p) == t:
                    raise DegenerateSceneError(
                        f"point {pi} on boundary of halfspace {hi}"
                    )
        return Scene(dim, pts, hs)

    def contains(self, hi: int, pi: int) -> bool:
        w, t = self.halfspaces[hi]
        return dot(w, self.points[pi]) > t


def incidence_graph(scene: Scene) -> BipartiteGraph:
    """Bipartite graph: left = points, right = halfspaces, edge on membership."""
    edges = set()
    for pi, p in enumerate(scene.points):
        for hi, (w, t) in enumerate(scene.halfspaces):
            if dot(w, p) > t:
                edges.add((pi, hi))
    return BipartiteGraph(len(scene.points), len(scene.halfspaces), frozenset(edges))


# ---------------------------------------------------------------------------
# sign-rank pipeline


def sign_matrix(a_vectors, b_vectors):
    """Matrix of signs of <a(u), b(w)> as +1/-1. Zero products are an error."""
    a_vectors = [_frac_vec(a) for a in a_vectors]
    b_vectors = [_frac_vec(b) for b in b_vectors]
    out = []
    for a in a_vectors:
        row = []
        for b in b_vectors:
            s = dot(a, b)
            if s == 0:
                raise ValueError("zero inner product")
            row.append(1 if s > 0 else -1)
        out.append(row)
    return out


def signrank_graph(a_vectors, b_vectors) -> BipartiteGraph:
    """Bipartite graph with an edge where the inner product is positive."""
    m = sign_matrix(a_vectors, b_vectors)
    edges = {
        (u, w)
        for u, row in enumerate(m)
        for w, s in enumerate(row)
        if s > 0
    }
    return BipartiteGraph(len(a_vectors), len(b_vectors), frozenset(edges))


def perturb_last_coordinate(a_vectors, b_vectors):
    """Replace zero last coordinates of the a-side by a small positive
    rational that provably preserves the sign of every inner product.

    For a vector a with a_d = 0, every <a, b(w)> is unaffected by the last
    coordinate, so any eps with eps * max|b_d| < min_w |<a, b(w)>| keeps all
    signs. Vectors whose products are all zero cannot be repaired and raise.
    """
    a_vectors = [list(_frac_vec(a)) for a in a_vectors]
    b_vectors = [_frac_vec(b) for b in b_vectors]
    d = len(a_vectors[0]) if a_vectors else 0
    maxb = max((abs(b[d - 1]) for b in b_vectors), default=Fraction(0))
    for a in a_vectors:
        if a[d - 1] != 0:
            continue
        mags = [abs(dot(a, b)) for b in b_vectors]
        if any(m == 0 for m in mags) or not mags:
            raise ValueError("cannot perturb: zero inner product present")
        eps = min(mags) / (2 * (1 + maxb))
        a[d - 1] = eps
    return [tuple(a) for a in a_vectors], b_vectors


def signrank_split(a_vectors, b_vectors):
    """Split a rank-d sign factorization into two point-halfspace scenes in
    dimension d-1, one per sign of the last a-coordinate.

    Returns (scene_pos, u_pos, scene_neg, u_neg) where u_pos/u_neg are the
    original a-side indices carried by each scene, in order. The b-side keeps
    its full index order in both scenes. Membership in scene k equals the
    sign test <a(u), b(w)> > 0 for u in that class.
    """
    a_vectors = [_frac_vec(a) for a in a_vectors]
    b_vectors = [_frac_vec(b) for b in b_vectors]
    if not a_vectors or not b_vectors:
        raise ValueError("empty factorization")
    d = len(a_vectors[0])
    if d < 2:
        raise ValueError("need dimension at least 2")
    for u, a in enumerate(a_vectors):
        if a[d - 1] == 0:
            raise ValueError(
                f"a({u}) has zero last coordinate; perturb_last_coordinate first"
            )
    u_pos = [u for u, a in enumerate(a_vectors) if a[d - 1] > 0]
    u_neg = [u for u, a in enumerate(a_vectors) if a[d - 1] < 0]

    def reduced(u):
        a = a_vectors[u]
        s = abs(a[d - 1])
        return tuple(c / s for c in a[: d - 1])

    hs_pos = [(b[: d - 1], -b[d - 1]) for b in b_vectors]
    hs_neg = [(b[: d - 1], b[d - 1]) for b in b_vectors]
    scene_pos = Scene.make(d - 1, [reduced(u) for u in u_pos], hs_pos)
    scene_neg = Scene.make(d - 1, [reduced(u) for u in u_neg], hs_neg)
    return scene_pos, tuple(u_pos), scene_neg, tuple(u_neg)


def normal_sign_pattern(w) -> int:
    """Bit i set iff coordinate i of the normal is >= 0."""
    p = 0
    for i, c in enumerate(w):
        if c >= 0:
            p |= 1 << i
    return p


def positive_partition(scene: Scene) -> dict:
    """Group halfspaces by the sign pattern of their normals.

    Within a group all pairwise normal dot products are >= 0. Returns
    {pattern: (Scene, halfspace index tuple)} with all points kept.
    """
    groups = {}
    for hi, (w, t) in enumerate(scene.halfspaces):
        groups.setdefault(normal_sign_pattern(w), []).append(hi)
    out = {}
    for pat in sorted(groups):
        his = tuple(groups[pat])
        sub = Scene.make(scene.dim, scene.points, [scene.halfspaces[h] for h in his])
        out[pat] = (sub, his)
    return out


def positive_complement(scene: Scene) -> Scene:
    """Mirror scene realizing the bipartite complement of the incidences:
    points are negated, thresholds are negated, normals are kept. Requires
    the no-boundary invariant, under which p' in h' iff p not in h."""
    pts = [tuple(-c for c in p) for p in scene.points]
    hs = [(w, -t) for w, t in scene.halfspaces]
    return Scene.make(scene.dim, pts, hs)


@dataclass(frozen=True)
class SignRank3Decomposition:
    """Mixed piece decomposition of a rank-3 sign factorization.

    The a-side splits in two by the sign of the last coordinate, the b-side
    in four by the sign pattern of the reduced normal. A piece is keyed
    (u_class, w_pattern) with u_class in {0: positive last coord, 1: negative}
    and holds the dim-2 scene realizing exactly that block of the matrix.
    """

    a_vectors: tuple
    b_vectors: tuple
    u_class: tuple  # per u: 0 or 1
    w_pattern: tuple  # per w: 0..3
    pieces: dict  # (u_class, w_pattern) -> (Scene, u_ids, w_ids)

    def piece_graph(self, key) -> BipartiteGraph:
        scene, _, _ = self.pieces[key]
        return incidence_graph(scene)


def signrank3_decompose(a_vectors, b_vectors) -> SignRank3Decomposition:
    """Split + positive partition in one step: at most 8 pieces, each a
    positive point-halfplane scene, together tiling the full sign matrix."""
    a_vectors = tuple(_frac_vec(a) for a in a_vectors)
    b_vectors = tuple(_frac_vec(b) for b in b_vectors)
    if any(len(a) != 3 for a in a_vectors) or any(len(b) != 3 for b in b_vectors):
        raise ValueError("vectors must have dimension 3")
    scene_pos, u_pos, scene_neg, u_neg = signrank_split(a_vectors, b_vectors)
    uclass = [0] * len(a_vectors)
    for u in u_neg:
        uclass[u] = 1
    wpat = [normal_sign_pattern(b[:2]) for b in b_vectors]

    pieces = {}
    for cls, (scene, uids) in ((0, (scene_pos, u_pos)), (1, (scene_neg, u_neg))):
        bypat = {}
        for w, p in enumerate(wpat):
            bypat.setdefault(p, []).append(w)
        for p in sorted(bypat):
            wids = tuple(bypat[p])
            sub = Scene.make(
                2, scene.points, [scene.halfspaces[w] for w in wids]
            )
            pieces[(cls, p)] = (sub, tuple(uids), wids)
    return SignRank3Decomposition(
        a_vectors, b_vectors, tuple(uclass), tuple(wpat), pieces
    )


# ---------------------------------------------------------------------------
# unit disk realizations


@dataclass(frozen=True)
class UdgRealization:
    """Points in Q^2 with adjacency = Euclidean distance strictly below the
    radius. Pairs at distance exactly the radius are rejected up front."""

    points: tuple
    radius: Fraction

    @staticmethod
    def make(points, radius=2) -> "UdgRealization":
        pts = tuple(_frac_vec(p) for p in points)
        r = Fraction(radius)
        if r <= 0:
            raise ValueError("radius must be positive")
        r2 = r * r
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if _dist2(pts[i], pts[j]) == r2:
                    raise DegenerateSceneError(
                        f"points {i},{j} at distance exactly the radius"
                    )
        return UdgRealization(pts, r)

    @property
    def n(self) -> int:
        return len(self.points)

    def adjacent(self, i: int, j: int) -> bool:
        if i == j:
            return True
        return _dist2(self.points[i], self.points[j]) < self.radius * self.radius

    def cell(self, i: int) -> tuple:
        """Grid cell of side radius/2 containing point i."""
        s = self.radius / 2
        x, y = self.points[i]
        return (math.floor(x / s), math.floor(y / s))


def _dist2(p, q) -> Fraction:
    return (p[0] - q[0]) ** 2 + (p[1] - q[1]) ** 2


def unit_disk_graph(r: UdgRealization) -> Graph:
    edges = set()
    for i in range(r.n):
        for j in range(i + 1, r.n):
            if r.adjacent(i, j):
                edges.add((i, j))
    return Graph(r.n, frozenset(edges))


def udg_grid_partition(r: UdgRealization) -> dict:
    """Cell -> sorted tuple of point ids. Two points in one cell are always
    adjacent (cell diameter r/sqrt(2) < r); adjacent points sit within grid
    offset -2..2 in each axis."""
    cells = {}
    for i in range(r.n):
        cells.setdefault(r.cell(i), []).append(i)
    return {c: tuple(sorted(v)) for c, v in sorted(cells.items())}


UDG_OFFSETS = tuple(
    (a, b)
    for a in range(-2, 3)
    for b in range(-2, 3)
    if (a, b) != (0, 0)
)


def udg_to_signrank4(r: UdgRealization):
    """Rank-4 sign lift: sigma(v) = (-1, 2x, 2y, -x^2-y^2) and
    psi(v) = (x^2+y^2-r^2, x, y, 1) satisfy
    <sigma(a), psi(b)> = r^2 - dist(a,b)^2, so the sign encodes adjacency."""
    r2 = r.radius * r.radius
    sigma = []
    psi = []
    for (x, y) in r.points:
        sigma.append((Fraction(-1), 2 * x, 2 * y, -(x * x) - y * y))
        psi.append((x * x + y * y - r2, x, y, Fraction(1)))
    return sigma, psi


# ---------------------------------------------------------------------------
# incidence degeneracy bounds


def in_convex_position(points, dim: int) -> bool:
    """True iff no point lies in the convex hull of the others. Exact; uses
    Caratheodory subsets of size dim+1."""
    pts = [_frac_vec(p) for p in points]
    n = len(pts)
    for i in range(n):
        others = [pts[j] for j in range(n) if j != i]
        if _in_hull(pts[i], others, dim):
            return False
    return True


def _in_hull(p, qs, dim: int) -> bool:
    if not qs:
        return False
    k = dim + 1
    if len(qs) <= k:
        subsets = [tuple(range(len(qs)))]
    else:
        subsets = itertools.combinations(range(len(qs)), k)
    for sub in subsets:
        if _in_simplex(p, [qs[i] for i in sub], dim):
            return True
    return False


def _in_simplex(p, verts, dim: int) -> bool:
    """Solve sum(l_i * v_i) = p, sum(l_i) = 1, l_i >= 0 exactly."""
    k = len(verts)
    rows = dim + 1
    # augmented matrix of the linear system
    mat = [[verts[j][r] for j in range(k)] + [p[r]] for r in range(dim)]
    mat.append([Fraction(1)] * k + [Fraction(1)])
    # gaussian elimination
    pivots = []
    rr = 0
    for c in range(k):
        piv = next((i for i in range(rr, rows) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[rr], mat[piv] = mat[piv], mat[rr]
        pv = mat[rr][c]
        mat[rr] = [x / pv for x in mat[rr]]
        for i in range(rows):
            if i != rr and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[rr])]
        pivots.append(c)
        rr += 1
        if rr == rows:
            break
    # inconsistent?
    for i in range(rr, rows):
        if mat[i][k] != 0:
            return False
    # free variables set to 0; read off pivot values
    sol = [Fraction(0)] * k
    for i, c in enumerate(pivots):
        sol[c] = mat[i][k]
    # verify (guards the free-variable choice) and check nonnegativity
    if any(s < 0 for s in sol):
        return False
    for r in range(dim):
        if sum(sol[j] * verts[j][r] for j in range(k)) != p[r]:
            return False
    if sum(sol) != 1:
        return False
    return True


@dataclass(frozen=True)
class DegeneracyReport:
    ok: bool
    dim: int
    s: int
    bound: int
    degeneracy: int
    order: tuple
    edges: int
    convex_position: bool
    caratheodory_checked: bool
    caratheodory_degree: int
    caratheodory_bound: int
    notes: tuple


def verify_incidence_degeneracy(scene: Scene, s: int) -> DegeneracyReport:
    """Check the forbidden-biclique degeneracy bounds on a scene's incidence
    graph: K_{s,s}-free in dim 1 gives degeneracy <= s-1; K_{2,s}-free in
    dims 2 and 3 gives 3(s-1) and 5(s-1). When the points are not in convex
    position (dims >= 2), the first point eliminated by the min-degree peel
    must have residual degree <= (dim+1)(s-1)."""
    g = incidence_graph(scene)
    d = scene.dim
    notes = []
    if d == 1:
        if oracles.has_biclique(g, s, s):
            raise ValueError(f"scene contains K_{{{s},{s}}}")
        bound = s - 1
    elif d in (2, 3):
        if oracles.has_biclique(g, 2, s):
            raise ValueError(f"scene contains K_{{2,{s}}}")
        bound = (3 if d == 2 else 5) * (s - 1)
    else:
        raise ValueError("degeneracy bounds cover dims 1..3")
    k, order, residual = oracles.degeneracy_with_residuals(g)
    ok = k <= bound
    convex = True
    car_checked = False
    car_deg = -1
    car_bound = (d + 1) * (s - 1)
    if d >= 2 and len(scene.points) >= d + 2:
        convex = in_convex_position(scene.points, d)
        if not convex:
            car_checked = True
            first_point = next(
                i for i, v in enumerate(order) if v < len(scene.points)
            )
            car_deg = residual[first_point]
            if car_deg > car_bound:
                ok = False
                notes.append("caratheodory degree bound violated")
    if k > bound:
        notes.append("degeneracy bound violated")
    return DegeneracyReport(
        ok, d, s, bound, k, tuple(order), g.m, convex,
        car_checked, car_deg, car_bound, tuple(notes),
    )


# ---------------------------------------------------------------------------
# point-box and point-line incidences


def point_box_incidence(points, boxes) -> BipartiteGraph:
    """Boxes are ((x1, x2), (y1, y2)), membership half-open:
    x1 <= x < x2 and y1 <= y < y2."""
    pts = [_frac_vec(p) for p in points]
    bxs = [((Fraction(b[0][0]), Fraction(b[0][1])),
            (Fraction(b[1][0]), Fraction(b[1][1]))) for b in boxes]
    edges = set()
    for pi, (x, y) in enumerate(pts):
        for bi, ((x1, x2), (y1, y2)) in enumerate(bxs):
            if x1 <= x < x2 and y1 <= y < y2:
                edges.add((pi, bi))
    return BipartiteGraph(len(pts), len(bxs), frozenset(edges))


def point_line_incidence(points, lines) -> BipartiteGraph:
    """Lines are (a, b, c) meaning ax + by = c with (a, b) != (0, 0)."""
    pts = [_frac_vec(p) for p in points]
    lns = [_frac_vec(l) for l in lines]
    for a, b, c in lns:
        if a == 0 and b == 0:
            raise ValueError("degenerate line")
    edges = set()
    for pi, (x, y) in enumerate(pts):
        for li, (a, b, c) in enumerate(lns):
            if a * x + b * y == c:
                edges.add((pi, li))
    return BipartiteGraph(len(pts), len(lns), frozenset(edges))


# ---------------------------------------------------------------------------
# text formats


def _fmt_q(x: Fraction) -> str:
    return str(Fraction(x))


def format_scene(scene: Scene) -> str:
    out = [f"scene {scene.dim} {len(scene.points)} {len(scene.halfspaces)}"]
    for p in scene.points:
        out.append("p " + " ".join(_fmt_q(c) for c in p))
    for w, t in scene.halfspaces:
        out.append("h " + " ".join(_fmt_q(c) for c in w) + " " + _fmt_q(t))
    return "\n".join(out) + "\n"


def parse_scene(text: str) -> Scene:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("scene "):
        raise ValueError("bad scene header")
    _, d, np_, nh = lines[0].split()
    d, np_, nh = int(d), int(np_), int(nh)
    pts, hs = [], []
    for ln in lines[1:]:
        parts = ln.split()
        if parts[0] == "p":
            if len(parts) != d + 1:
                raise ValueError(f"bad point line: {ln!r}")
            pts.append(tuple(Fraction(x) for x in parts[1:]))
        elif parts[0] == "h":
            if len(parts) != d + 2:
                raise ValueError(f"bad halfspace line: {ln!r}")
            hs.append((tuple(Fraction(x) for x in parts[1:-1]), Fraction(parts[-1])))
        else:
            raise ValueError(f"unknown scene line: {ln!r}")
    if len(pts) != np_ or len(hs) != nh:
        raise ValueError("scene count mismatch")
    return Scene.make(d, pts, hs)


def format_udg(r: UdgRealization) -> str:
    out = [f"udg {r.n} {_fmt_q(r.radius)}"]
    for x, y in r.points:
        out.append(f"p {_fmt_q(x)} {_fmt_q(y)}")
    return "\n".join(out) + "\n"


def parse_udg(text: str) -> UdgRealization:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("udg "):
        raise ValueError("bad udg header")
    _, n, r = lines[0].split()
    pts = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 3 or parts[0] != "p":
            raise ValueError(f"bad point line: {ln!r}")
        pts.append((Fraction(parts[1]), Fraction(parts[2])))
    if len(pts) != int(n):
        raise ValueError("udg count mismatch")
    return UdgRealization.make(pts, Fraction(r))


def format_signrank3(a_vectors, b_vectors) -> str:
    out = [f"signrank3 {len(a_vectors)} {len(b_vectors)}"]
    for a in a_vectors:
        out.append("a " + " ".join(_fmt_q(Fraction(c)) for c in a))
    for b in b_vectors:
        out.append("b " + " ".join(_fmt_q(Fraction(c)) for c in b))
    return "\n".join(out) + "\n"


def parse_signrank3(text: str):
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("signrank3 "):
        raise ValueError("bad signrank3 header")
    _, nu, nw = lines[0].split()
    avs, bvs = [], []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != 4 or parts[0] not in ("a", "b"):
            raise ValueError(f"bad vector line: {ln!r}")
        vec = tuple(Fraction(x) for x in parts[1:])
        (avs if parts[0] == "a" else bvs).append(vec)
    if len(avs) != int(nu) or len(bvs) != int(nw):
        raise ValueError("signrank3 count mismatch")
    return avs, bvs
