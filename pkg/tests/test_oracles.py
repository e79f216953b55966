import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from eqlabel import generators as gen
from eqlabel.graphs import BipartiteGraph, Graph, bipartite_complement
from eqlabel.oracles import (
    chain_index,
    degeneracy,
    degeneracy_with_residuals,
    edge_asteroidal_triple,
    has_biclique,
    has_eat,
    is_equivalence_graph,
)


def small_bipartite(max_side=4):
    @st.composite
    def build(draw):
        nl = draw(st.integers(1, max_side))
        nr = draw(st.integers(1, max_side))
        pairs = [(i, j) for i in range(nl) for j in range(nr)]
        chosen = draw(st.sets(st.sampled_from(pairs)) if pairs else st.just(set()))
        return BipartiteGraph.from_edges(nl, nr, chosen)

    return build()


# chain index ------------------------------------------------------------


def test_chain_index_frozen_values():
    assert chain_index(gen.path_graph(4)) == 2
    assert chain_index(gen.path_graph(5)) == 2
    assert chain_index(gen.cycle_graph(6)) == 2
    assert chain_index(gen.cycle_graph(10)) == 3
    assert chain_index(gen.biclique(3, 3)) == 1
    for k in range(2, 7):
        assert chain_index(gen.half_graph(k)) == k


def test_chain_index_edgeless_and_single_edge():
    # a 1-chain carries no constraints, so only an empty side gives 0
    assert chain_index(BipartiteGraph(2, 2, frozenset())) == 1
    assert chain_index(BipartiteGraph(2, 0, frozenset())) == 0
    assert chain_index(gen.path_graph(2)) == 1


@given(small_bipartite())
@settings(max_examples=60, deadline=None)
def test_chain_index_complement_invariant(g):
    assert chain_index(bipartite_complement(g)) == chain_index(g)


def test_equivalence_predicate():
    assert is_equivalence_graph(gen.biclique(3, 3))
    assert is_equivalence_graph(gen.random_equivalence(6, 6, 2, seed=0))
    assert not is_equivalence_graph(gen.path_graph(4))
    # chains place no constraint on a_i, b_i pairs, so multi-block
    # equivalence graphs may still hold a 2-chain; the implication only
    # runs from low chain-index to equivalence
    assert chain_index(gen.random_equivalence(6, 6, 2, seed=0)) == 2


@given(small_bipartite())
@settings(max_examples=60, deadline=None)
def test_low_chain_index_forces_equivalence(g):
    if chain_index(g) <= 1:
        assert is_equivalence_graph(g)


# bicliques ---------------------------------------------------------------


def test_has_biclique():
    assert has_biclique(gen.biclique(2, 3), 2, 3)
    assert has_biclique(gen.biclique(2, 3), 3, 2)  # either orientation
    assert not has_biclique(gen.biclique(2, 3), 3, 3)
    assert not has_biclique(gen.path_graph(6), 2, 2)
    assert has_biclique(gen.cycle_graph(4), 2, 2)


# edge asteroidal triples -------------------------------------------------


def test_eat_frozen_instances():
    assert has_eat(gen.subdivided_star(3, 3))
    assert has_eat(gen.cycle_graph(10))
    assert not has_eat(gen.path_graph(6))
    assert not has_eat(gen.cycle_graph(6))
    assert not has_eat(gen.biclique(3, 3))


def test_eat_returns_edge_triple():
    g = gen.subdivided_star(3, 3)
    t = edge_asteroidal_triple(g)
    assert t is not None and len(t) == 3
    for u, v in t:
        assert g.has_edge(u, v)
    assert edge_asteroidal_triple(gen.path_graph(6)) is None


def test_equivalence_graphs_are_eat_free():
    for seed in range(5):
        g = gen.random_equivalence(5, 5, 2, seed=seed)
        assert not has_eat(g)


# degeneracy --------------------------------------------------------------


def test_degeneracy_frozen_values():
    assert degeneracy(gen.path_graph(6))[0] == 1
    assert degeneracy(gen.cycle_graph(6))[0] == 2
    assert degeneracy(gen.biclique(3, 3))[0] == 3
    assert degeneracy(gen.subdivided_star(3, 4))[0] == 1


def test_degeneracy_order_and_residuals():
    g = gen.cycle_graph(6)
    k, order, residual = degeneracy_with_residuals(g)
    assert k == 2
    assert sorted(order) == list(range(g.n))
    assert max(residual) == k
    # every vertex sees at most k later neighbors in elimination order
    pos = {v: i for i, v in enumerate(order)}
    adj = {v: set() for v in range(g.n)}
    for i in range(g.n_left):
        for j in g.adj_left[i]:
            adj[i].add(g.n_left + j)
            adj[g.n_left + j].add(i)
    for v in range(g.n):
        later = sum(1 for u in adj[v] if pos[u] > pos[v])
        assert later <= k


def test_degeneracy_empty_graph():
    assert degeneracy(Graph(3, frozenset()))[0] == 0
