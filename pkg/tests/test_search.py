from __future__ import annotations

import random

import pytest

from spexgraph.constructions import build_graph, star
from spexgraph.detectors import (
    has_k_edge_disjoint_cycles,
    has_k_edge_disjoint_triangles,
    has_repeated_cycle_length,
    max_fan,
)
from spexgraph.enumeration import enumerate_graphs
from spexgraph.errors import BadParams, OrderTooLargeForEnumeration, UnknownPredicate
from spexgraph.graph import from_graph6, is_connected, is_isomorphic, relabel
from spexgraph.predicates import PREDICATE_NAMES, fan_free, gamma_free, parse_predicate
from spexgraph.search import (
    HillClimbConfig,
    SearchMode,
    spex,
    spex_exhaustive,
    spex_hillclimb,
    turan_number,
    witness_edges,
)
from spexgraph.spectral import spectral_radius


# predicates ------------------------------------------------------------------------

def test_parse_predicates():
    assert parse_predicate("gamma-3-free").k == 3
    assert parse_predicate("no-2-edge-disjoint-cycles").kind == "cycles"
    assert parse_predicate("matching-le-2-degree-le-3").d == 3
    assert gamma_free(4) == "gamma-4-free" and fan_free(2) == "fan-2-free"
    assert len(PREDICATE_NAMES) == 4
    for bad in ("gamma-0-free", "gamma-k-free", "cycles", ""):
        with pytest.raises(UnknownPredicate):
            parse_predicate(bad)


def test_predicates_agree_with_detectors():
    preds = {
        "no-repeated-cycle-length": lambda g: has_repeated_cycle_length(g) is None,
        "no-2-edge-disjoint-cycles": lambda g: has_k_edge_disjoint_cycles(g, 2) is None,
        "gamma-2-free": lambda g: has_k_edge_disjoint_triangles(g, 2) is None,
        "fan-2-free": lambda g: max_fan(g)[0] < 2,
    }
    for g in enumerate_graphs(6):
        for name, ref in preds.items():
            p = parse_predicate(name)
            assert p(g) == ref(g)
            w = p.violation(g)
            assert (w is None) == ref(g)
            if w is not None:
                assert w.validate(g)


def test_witness_edges_cover_the_certificate():
    w = parse_predicate("fan-2-free").violation(build_graph("fan", k=2))
    assert witness_edges(w) == {(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)}


# exhaustive search -----------------------------------------------------------------

def test_spex_no_two_edge_disjoint_cycles_n6():
    res = spex(6, "no-2-edge-disjoint-cycles", SearchMode.EXHAUSTIVE)
    assert res.objective >= spectral_radius(build_graph("k4-star", n=6)).rho - 1e-9
    assert has_k_edge_disjoint_cycles(res.best, 2) is None
    assert is_connected(res.best)


def test_spex_is_reproducible():
    a = spex(5, "no-repeated-cycle-length").to_dict()
    b = spex(5, "no-repeated-cycle-length").to_dict()
    assert a == b


@pytest.mark.parametrize("name", ["no-repeated-cycle-length", "gamma-2-free", "fan-2-free"])
def test_spex_exhaustive_is_true_argmax(name):
    pred = parse_predicate(name)
    n = 6
    best = max(spectral_radius(g).rho for g in enumerate_graphs(n, connected_only=True) if pred(g))
    res = spex_exhaustive(n, name)
    assert abs(res.objective - best) <= 1e-9
    assert res.best_graph6 == res.to_dict()["best"]


def test_spex_visits_every_class_member():
    pred = parse_predicate("gamma-2-free")
    members = sum(1 for g in enumerate_graphs(7, connected_only=True) if pred(g))
    assert spex_exhaustive(7, "gamma-2-free").visited == members


def test_spex_result_is_canonical_and_relabel_invariant():
    res = spex_exhaustive(6, "fan-2-free")
    g = from_graph6(res.best_graph6)
    rng = random.Random(0)
    perm = list(range(g.n))
    rng.shuffle(perm)
    assert is_isomorphic(relabel(g, perm), res.best)


def test_spex_limits():
    with pytest.raises(OrderTooLargeForEnumeration):
        spex(11, "gamma-2-free")
    with pytest.raises(UnknownPredicate):
        spex(5, "gamma-x-free")


# hill climbing ---------------------------------------------------------------------

def test_hillclimb_reaches_construction_n20_k2():
    res = spex(20, "gamma-2-free", mode="HILLCLIMB", seed=0)
    ref = spectral_radius(build_graph("bipartite-embed", n=20, embed=star(2))).rho
    assert res.objective >= ref - 1e-8
    assert has_k_edge_disjoint_triangles(res.best, 2) is None


@pytest.mark.parametrize("name,n", [
    ("gamma-3-free", 12), ("fan-2-free", 11), ("no-2-edge-disjoint-cycles", 12),
    ("no-repeated-cycle-length", 10),
])
def test_hillclimb_results_satisfy_predicate(name, n):
    res = spex_hillclimb(n, name, seed=3, cfg=HillClimbConfig(restarts=3))
    assert parse_predicate(name).violation(res.best) is None
    assert is_connected(res.best)
    assert res.mode is SearchMode.HILLCLIMB and res.restarts == 3


def test_hillclimb_small_exact_cases():
    # at small order the climb should find the exhaustive optimum
    for name in ("no-2-edge-disjoint-cycles", "gamma-2-free"):
        ex = spex_exhaustive(8, name)
        hc = spex_hillclimb(8, name, seed=1, cfg=HillClimbConfig(restarts=10))
        assert abs(hc.objective - ex.objective) <= 1e-9


def test_hillclimb_seed_determinism():
    cfg = HillClimbConfig(restarts=4)
    a = spex_hillclimb(14, "gamma-3-free", seed=7, cfg=cfg).to_dict()
    b = spex_hillclimb(14, "gamma-3-free", seed=7, cfg=cfg).to_dict()
    assert a == b


def test_hillclimb_budget_flag():
    res = spex_hillclimb(16, "gamma-2-free", seed=0, cfg=HillClimbConfig(restarts=20, budget=300))
    assert res.budget_exhausted and res.visited <= 300
    assert has_k_edge_disjoint_triangles(res.best, 2) is None
    with pytest.raises(BadParams):
        spex_hillclimb(16, "gamma-2-free", cfg=HillClimbConfig(restarts=0))


# Turan numbers -------------------------------------------------------------------

@pytest.mark.parametrize("n,pred,want", [
    (6, "gamma-1-free", 9), (6, "gamma-2-free", 10), (3, "gamma-1-free", 2),
])
def test_turan_examples(n, pred, want):
    assert turan_number(n, pred).max_edges == want


def test_turan_extremal_graphs_are_members():
    res = turan_number(7, "gamma-2-free")
    pred = parse_predicate("gamma-2-free")
    assert res.extremal == sorted(res.extremal)
    for g6 in res.extremal:
        g = from_graph6(g6)
        assert g.m == res.max_edges and pred(g)


def test_turan_mantel_extremal_is_balanced_bipartite():
    res = turan_number(6, "gamma-1-free")
    assert len(res.extremal) == 1
    assert is_isomorphic(from_graph6(res.extremal[0]), build_graph("complete-bipartite", a=3, b=3))
