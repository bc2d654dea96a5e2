from __future__ import annotations

import random
from itertools import combinations

import networkx as nx
import pytest
from hypothesis import given, strategies as st

from c4flag.catalog import CATALOG, COCHERRY, C4, K4
from c4flag.graphs import (
    SizeCapError, SmallGraph, are_isomorphic, automorphism_count, blow_up, canonical_form,
    canonical_key, chromatic_number, count_induced, count_subgraphs, density, enumerate_graphs,
    has_color_critical_edge, is_complete_multipartite, is_subgraph_of_blowup,
)

from conftest import random_graph


def graphs(max_n=6):
    return st.integers(0, max_n).flatmap(
        lambda n: st.integers(0, (1 << (n * (n - 1) // 2)) - 1).map(
            lambda m: SmallGraph.from_edge_mask(n, m)))


def shuffled(g: SmallGraph, rng: random.Random) -> SmallGraph:
    order = list(range(g.n))
    rng.shuffle(order)
    return g.relabel(order)


def to_nx(g: SmallGraph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


# -- construction ----------------------------------------------------------

def test_rejects_loops_and_oversize():
    with pytest.raises(ValueError):
        SmallGraph.from_edges(3, [(1, 1)])
    with pytest.raises(SizeCapError):
        SmallGraph.empty(13)
    with pytest.raises(ValueError):
        SmallGraph(2, (2, 0))


# -- isomorphism and canonical form ----------------------------------------

def test_isomorphism_examples(rng):
    assert are_isomorphic(C4, shuffled(C4, rng))
    assert not are_isomorphic(CATALOG[8], CATALOG[5])
    for u, v in K4.edges():
        assert are_isomorphic(CATALOG[9], K4.remove_edge(u, v))


def test_canonical_form_of_relabelled_paw(rng):
    paw = CATALOG[6]
    a, b = shuffled(paw, rng), shuffled(paw, rng)
    assert canonical_form(a) == canonical_form(b)


def test_canonical_form_of_empty_graph():
    assert canonical_form(SmallGraph.empty(4)) == SmallGraph.empty(4)


@given(graphs(6), st.randoms(use_true_random=False))
def test_canonical_form_is_class_constant_and_idempotent(g, r):
    h = shuffled(g, r)
    cg = canonical_form(g)
    assert are_isomorphic(cg, g)
    assert cg == canonical_form(h)
    assert canonical_form(cg) == cg


@given(graphs(6), graphs(6))
def test_isomorphism_agrees_with_networkx(g, h):
    expect = nx.is_isomorphic(to_nx(g), to_nx(h))
    assert are_isomorphic(g, h) == expect
    assert (canonical_key(g) == canonical_key(h)) == expect


def test_canonical_form_on_twelve_vertices(rng):
    for _ in range(5):
        g = random_graph(rng, 12, 0.4)
        assert canonical_form(shuffled(g, rng)) == canonical_form(g)


def test_automorphism_counts():
    assert automorphism_count(C4) == 8
    assert automorphism_count(K4) == 24
    assert automorphism_count(SmallGraph.path(4)) == 2


# -- enumeration -------------------------------------------------------------

@pytest.mark.parametrize("k,count", [(0, 1), (1, 1), (2, 2), (3, 4), (4, 11), (5, 34), (6, 156)])
def test_enumeration_counts(k, count):
    assert len(enumerate_graphs(k)) == count


def test_enumeration_k5_by_exhaustive_canonicalisation():
    keys = {canonical_key(SmallGraph.from_edge_mask(5, m)) for m in range(1 << 10)}
    assert len(keys) == 34
    assert {canonical_key(g) for g in enumerate_graphs(5)} == keys


def test_enumeration_k7_matches_atlas():
    assert len(enumerate_graphs(7)) == 1044


def test_enumeration_range():
    with pytest.raises(SizeCapError):
        enumerate_graphs(8)


# -- counting ----------------------------------------------------------------

def test_subgraph_counts():
    assert count_subgraphs(C4, K4) == 3
    assert count_subgraphs(C4, CATALOG[8]) == 1
    assert count_subgraphs(C4, CATALOG[9]) == 1
    octahedron = SmallGraph.complete_multipartite([2, 2, 2])
    assert count_subgraphs(C4, octahedron) == 15
    with pytest.raises(ValueError):
        count_subgraphs(K4, SmallGraph.complete(3))


def test_octahedron_count_by_subset_brute_force():
    g = SmallGraph.complete_multipartite([2, 2, 2])
    total = 0
    for s in combinations(range(6), 4):
        total += count_subgraphs(C4, g.induced(s))
    assert total == 15


def test_induced_counts():
    assert count_induced(COCHERRY, K4) == 0
    assert count_induced(CATALOG[8], SmallGraph.complete_multipartite([2, 2])) == 1
    assert count_induced(COCHERRY, SmallGraph.path(4)) == 2


def test_densities():
    from fractions import Fraction
    assert density(C4, SmallGraph.complete_multipartite([2, 2, 2])) == 1
    assert density(SmallGraph.complete(2), SmallGraph.empty(5)) == 0
    assert density(C4, K4) == 3
    assert density(COCHERRY, SmallGraph.path(4), induced=True) == Fraction(1, 2)


def test_subgraph_count_matches_networkx_monomorphisms(rng):
    from networkx.algorithms.isomorphism import GraphMatcher
    for _ in range(20):
        g = random_graph(rng, rng.randint(4, 7))
        for h in (C4, CATALOG[6], CATALOG[7], SmallGraph.cycle(5)):
            if h.n > g.n:
                continue
            gm = GraphMatcher(to_nx(g), to_nx(h))
            inj = sum(1 for _ in gm.subgraph_monomorphisms_iter())
            assert count_subgraphs(h, g) == inj // automorphism_count(h)


@given(graphs(6), st.randoms(use_true_random=False))
def test_counts_invariant_under_relabelling(g, r):
    for h in (C4, COCHERRY, CATALOG[6]):
        if h.n > g.n:
            continue
        hh = shuffled(h, r)
        gg = shuffled(g, r)
        assert count_subgraphs(hh, gg) == count_subgraphs(h, g)
        assert count_induced(hh, gg) == count_induced(h, g)


@given(graphs(7).filter(lambda g: g.n >= 4))
def test_catalog_completeness_and_total_probability(g):
    from math import comb
    induced = [count_induced(f, g) for f in CATALOG]
    assert sum(induced) == comb(g.n, 4)
    assert count_subgraphs(C4, g) == induced[8] + induced[9] + 3 * induced[10]


# -- colouring ---------------------------------------------------------------

def test_chromatic_numbers():
    assert chromatic_number(K4) == 4
    assert chromatic_number(SmallGraph.cycle(5)) == 3
    assert chromatic_number(CATALOG[9]) == 3
    assert chromatic_number(SmallGraph.empty(3)) == 1


@given(graphs(7))
def test_chromatic_number_agrees_with_brute_force(g):
    def colourable(k):
        from itertools import product
        return any(all(c[u] != c[v] for u, v in g.edges()) for c in product(range(k), repeat=g.n))
    chi = chromatic_number(g)
    if g.n:
        assert colourable(chi)
        assert chi == 1 or not colourable(chi - 1)


def test_colour_critical_edges():
    assert has_color_critical_edge(K4) is not None
    assert has_color_critical_edge(SmallGraph.cycle(5)) is not None
    k4_triangle = K4.disjoint_union(SmallGraph.complete(3))
    e = has_color_critical_edge(k4_triangle)
    assert e is not None and max(e) < 4
    assert has_color_critical_edge(SmallGraph.cycle(4).disjoint_union(SmallGraph.cycle(4))) is None
    with pytest.raises(ValueError):
        has_color_critical_edge(SmallGraph.empty(3))


# -- blow-ups and multipartite recognition -----------------------------------

def test_blow_up():
    assert are_isomorphic(blow_up(SmallGraph.complete(2), 2), SmallGraph.complete_multipartite([2, 2]))
    assert is_subgraph_of_blowup(K4, K4, 2)
    assert not is_subgraph_of_blowup(SmallGraph.complete(5), K4, 2)
    with pytest.raises(SizeCapError):
        blow_up(K4, 4)


def test_complete_multipartite_recognition():
    parts = is_complete_multipartite(SmallGraph.complete_multipartite([2, 2, 2]))
    assert sorted(len(p) for p in parts) == [2, 2, 2]
    assert is_complete_multipartite(SmallGraph.path(4)) is None
    assert is_complete_multipartite(SmallGraph.empty(5)) == [(0, 1, 2, 3, 4)]


@given(graphs(6))
def test_recognition_matches_cocherry_freeness(g):
    free = g.n < 3 or count_induced(COCHERRY, g) == 0
    assert (is_complete_multipartite(g) is not None) == free
