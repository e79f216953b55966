from fractions import Fraction

import pytest

from eqlabel import generators as gen
from eqlabel.geometry import (
    DegenerateSceneError,
    Scene,
    UdgRealization,
    dot,
    format_scene,
    format_signrank3,
    format_udg,
    in_convex_position,
    incidence_graph,
    parse_scene,
    parse_signrank3,
    parse_udg,
    perturb_last_coordinate,
    point_box_incidence,
    point_line_incidence,
    positive_complement,
    positive_partition,
    sign_matrix,
    signrank3_decompose,
    signrank_graph,
    signrank_split,
    udg_grid_partition,
    udg_to_signrank4,
    unit_disk_graph,
    verify_incidence_degeneracy,
)
from eqlabel.graphs import bipartite_complement
from eqlabel.oracles import has_biclique


# scenes -------------------------------------------------------------------


def test_scene_rejects_boundary_points():
    with pytest.raises(DegenerateSceneError):
        Scene.make(1, [(1,)], [((1,), 1)])  # <w,p> == t exactly
    sc = Scene.make(1, [(2,)], [((1,), 1)])
    assert sc.contains(0, 0)


def test_incidence_graph_membership():
    # one halfplane x > 0, points on both sides
    sc = Scene.make(2, [(1, 1), (-1, 0), (2, -3)], [((1, 0), 0)])
    g = incidence_graph(sc)
    assert g.has_edge(0, 0) and g.has_edge(2, 0)
    assert not g.has_edge(1, 0)


def test_positive_complement_realizes_bc():
    sc = gen.random_halfspace_scene(2, 10, 5, seed=21)
    cc = positive_complement(sc)
    assert incidence_graph(cc) == bipartite_complement(incidence_graph(sc))


def test_positive_partition_groups_by_pattern():
    sc = Scene.make(
        2,
        [(0, 0)],
        [((1, 1), -1), ((1, 2), -1), ((-1, 1), -1), ((1, -1), -1)],
    )
    parts = positive_partition(sc)
    sizes = {pat: len(his) for pat, (sub, his) in parts.items()}
    assert sum(sizes.values()) == 4
    assert sizes[3] == 2  # both-positive normals share a group
    for pat, (sub, his) in parts.items():
        for i, (w1, _) in enumerate(sub.halfspaces):
            for (w2, _) in sub.halfspaces[i:]:
                assert dot(w1, w2) >= 0


# sign-rank ----------------------------------------------------------------


def test_sign_matrix_and_graph():
    a = [(1, 0, 1), (0, 1, -2)]
    b = [(1, 1, 1), (0, 3, 1)]
    m = sign_matrix(a, b)
    assert m == ((1, 1), (-1, 1)) or m == [[1, 1], [-1, 1]]
    g = signrank_graph(a, b)
    assert g.has_edge(0, 0) and g.has_edge(0, 1) and g.has_edge(1, 1)
    assert not g.has_edge(1, 0)


def test_sign_matrix_rejects_zero_products():
    with pytest.raises(ValueError):
        sign_matrix([(1, 0, 0)], [(0, 0, 1)])


def test_perturb_preserves_signs():
    a = [(1, 2, 0), (0, 1, 3)]
    b = [(1, 1, 1), (-3, 1, 5)]
    before = sign_matrix(a, b)
    a2, b2 = perturb_last_coordinate(a, b)
    assert all(v[2] != 0 for v in a2)
    assert sign_matrix(a2, b2) == before


def test_signrank_split_classes_and_membership():
    a, b = gen.random_signrank3(8, 8, seed=13)
    sp, up, sn, un = signrank_split(a, b)
    assert sorted(up + un) == list(range(8))
    g = signrank_graph(a, b)
    for scene, uids in ((sp, up), (sn, un)):
        for row, u in enumerate(uids):
            for w in range(8):
                assert scene.contains(w, row) == g.has_edge(u, w)


def test_signrank3_pieces_tile_matrix():
    a, b = gen.random_signrank3(10, 9, seed=4)
    dec = signrank3_decompose(a, b)
    g = signrank_graph(a, b)
    seen = set()
    for key, (scene, uids, wids) in dec.pieces.items():
        pg = dec.piece_graph(key)
        for r, u in enumerate(uids):
            for c, w in enumerate(wids):
                assert (u, w) not in seen
                seen.add((u, w))
                assert pg.has_edge(r, c) == g.has_edge(u, w)
    assert len(seen) == 10 * 9
    assert len(dec.pieces) <= 8


# unit disk realizations -----------------------------------------------------


def test_udg_rejects_exact_radius():
    with pytest.raises(DegenerateSceneError):
        UdgRealization.make([(0, 0), (2, 0)], radius=2)


def test_udg_adjacency_and_cells():
    r = UdgRealization.make([(0, 0), (1, 0), (Fraction(7, 2), 0)], radius=2)
    assert r.adjacent(0, 1) and not r.adjacent(0, 2)
    assert r.adjacent(2, 2)  # reflexive by convention
    assert r.cell(0) == (0, 0) and r.cell(1) == (1, 0) and r.cell(2) == (3, 0)
    g = unit_disk_graph(r)
    assert g.has_edge(0, 1) and not g.has_edge(0, 2)


def test_udg_grid_partition_same_cell_adjacent():
    r = gen.random_udg(40, box=8, radius=2, seed=17)
    cells = udg_grid_partition(r)
    assert sorted(v for vs in cells.values() for v in vs) == list(range(40))
    for vs in cells.values():
        for i in vs:
            for j in vs:
                assert r.adjacent(i, j)


def test_udg_sign_lift_identity():
    r = gen.random_udg(25, box=6, radius=2, seed=3)
    sigma, psi = udg_to_signrank4(r)
    r2 = r.radius * r.radius
    for i in range(r.n):
        for j in range(r.n):
            d2 = sum((r.points[i][k] - r.points[j][k]) ** 2 for k in (0, 1))
            assert dot(sigma[i], psi[j]) == r2 - d2


# convexity and degeneracy ---------------------------------------------------


def test_in_convex_position():
    square = [(0, 0), (1, 0), (0, 1), (1, 1)]
    assert in_convex_position(square, 2)
    assert not in_convex_position(square + [(Fraction(1, 2), Fraction(1, 2))], 2)
    # collinear middle point is in the hull of its neighbors
    assert not in_convex_position([(0, 0), (1, 0), (2, 0)], 2)


def test_degeneracy_report_bounds():
    for dim, bound in ((1, 2), (2, 6), (3, 10)):
        sc = gen.random_halfspace_scene(dim, 14, 7, seed=31 + dim, s=3)
        rep = verify_incidence_degeneracy(sc, 3)
        assert rep.ok
        assert rep.bound == bound
        assert rep.degeneracy <= bound


def test_degeneracy_report_caratheodory_branch():
    # interior point forces the non-convex-position branch
    sc = gen.random_halfspace_scene(2, 12, 6, seed=2, s=3, interior=True)
    rep = verify_incidence_degeneracy(sc, 3)
    if not rep.convex_position:
        assert rep.caratheodory_checked
        assert rep.caratheodory_degree <= rep.caratheodory_bound == 6


def test_degeneracy_rejects_biclique():
    sc = Scene.make(1, [(1,), (2,), (3,)], [((1,), 0), ((2,), 1), ((1,), -5)])
    with pytest.raises(ValueError):
        verify_incidence_degeneracy(sc, 3)


# point-box and point-line ---------------------------------------------------


def test_point_box_half_open():
    pts = [(0, 0), (2, 2), (1, 1)]
    boxes = [((0, 2), (0, 2))]
    g = point_box_incidence(pts, boxes)
    assert g.has_edge(0, 0) and g.has_edge(2, 0)
    assert not g.has_edge(1, 0)  # upper corner excluded


def test_point_line_incidence():
    pts = [(0, 0), (1, 1), (2, 2), (1, 0)]
    lines = [(1, -1, 0)]  # x - y = 0
    g = point_line_incidence(pts, lines)
    assert g.has_edge(0, 0) and g.has_edge(1, 0) and g.has_edge(2, 0)
    assert not g.has_edge(3, 0)


# text formats ---------------------------------------------------------------


def test_scene_round_trip():
    sc = gen.random_halfspace_scene(2, 8, 4, seed=5)
    assert parse_scene(format_scene(sc)) == sc


def test_udg_round_trip():
    r = gen.random_udg(12, box=5, radius=2, seed=8)
    assert parse_udg(format_udg(r)) == r


def test_signrank3_round_trip():
    a, b = gen.random_signrank3(5, 6, seed=10)
    a2, b2 = parse_signrank3(format_signrank3(a, b))
    assert tuple(a2) == tuple(a) and tuple(b2) == tuple(b)
