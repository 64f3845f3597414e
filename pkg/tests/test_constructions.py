from __future__ import annotations

import math

import pytest

from spexgraph.constructions import (
    Family,
    FamilySpec,
    build,
    build_graph,
    complete,
    cycle,
    family_catalog,
    star,
)
from spexgraph.detectors import cycle_census, has_k_edge_disjoint_cycles, triangle_packing
from spexgraph.errors import BadParams, EmbedTooLarge
from spexgraph.graph import Graph, is_isomorphic
from spexgraph.spectral import char_poly, is_equitable, max_real_root, quotient, spectral_radius


def test_spec_examples():
    g = build_graph("k4-star", n=17)
    assert (g.n, g.m) == (17, 19) and g.degrees().count(16) == 1
    sp = build_graph("star-plus", n=26)
    assert (sp.n, sp.m) == (26, 26)
    assert cycle_census(sp).counts_by_length == {3: 1}
    emb = build_graph("bipartite-embed", n=10, embed=star(3))
    assert emb.m == 27 and triangle_packing(emb)[0] == 2
    f3 = build_graph("fan", k=3)
    assert (f3.n, f3.m) == (7, 9)


def test_catalog():
    cat = family_catalog()
    assert len(cat) == 11 == len(Family)
    by = {c.family: c for c in cat}
    assert by[Family.STAR_PLUS].constraint == "n >= 3"
    assert by[Family.K33_STAR].constraint == "n >= 6"
    assert all(c.definition and c.citation for c in cat)


@pytest.mark.parametrize("n", [5, 10, 50])
def test_s_n1_is_star(n):
    g = build_graph("s-nk", n=n, k=1)
    assert is_isomorphic(g, star(n))
    assert abs(spectral_radius(g).rho - math.sqrt(n - 1)) <= 1e-9


@pytest.mark.parametrize("n", range(6, 30))
def test_k33_star_size(n):
    g = build_graph("k33-star", n=n)
    assert g.m == n + 3
    assert has_k_edge_disjoint_cycles(g, 2) is None


@pytest.mark.parametrize("n,k", [(8, 2), (10, 3), (11, 4), (16, 5), (21, 6)])
def test_bipartite_embed_size(n, k):
    g = build_graph("bipartite-embed", n=n, embed=star(k))
    assert g.m == n * n // 4 + k - 1
    assert triangle_packing(g)[0] == k - 1


@pytest.mark.parametrize("n", range(6, 15))
def test_y_graph_degrees(n):
    d = build_graph("y-graph", n=n).degrees()
    assert d.count(1) == 4 and d.count(3) == 2 and d.count(2) == n - 6


def test_simple_families():
    assert build_graph("complete", n=5) == complete(5)
    assert build_graph("complete-bipartite", a=2, b=3).m == 6
    assert is_isomorphic(build_graph("c4-star", n=4), cycle(4))
    s = build_graph("subdivided-kab", n=8)
    assert (s.n, s.m) == (8, 3 * 4 + 1)


QUOTIENT_FAMILIES = [
    FamilySpec.of("k33-star", n=12),
    FamilySpec.of("k33-star", n=6),
    FamilySpec.of("bipartite-embed", n=12, embed=complete(3)),
    FamilySpec.of("bipartite-embed", n=11, embed=star(4)),
    FamilySpec.of("bipartite-embed", n=11, embed=star(4), side="ceil"),
    FamilySpec.of("s-nk", n=9, k=3),
    FamilySpec.of("star-plus", n=9),
    FamilySpec.of("k4-star", n=9),
    FamilySpec.of("c4-star", n=9),
    FamilySpec.of("fan", k=4),
    FamilySpec.of("y-graph", n=9),
    FamilySpec.of("y-graph", n=10),
    FamilySpec.of("subdivided-kab", n=9),
    FamilySpec.of("complete-bipartite", a=3, b=5),
]


@pytest.mark.parametrize("spec", QUOTIENT_FAMILIES, ids=lambda s: s.family.cli_name)
def test_natural_partition_is_equitable_with_rho_root(spec):
    b = build(spec)
    b.partition.check_cover(b.graph.n)
    assert is_equitable(b.graph, b.partition)
    root = max_real_root(char_poly(quotient(b.graph, b.partition)))
    assert abs(root - spectral_radius(b.graph).rho) <= 1e-8


def test_parameter_errors():
    with pytest.raises(BadParams):
        build_graph("star-plus", n=2)
    with pytest.raises(BadParams):
        build_graph("k4-star", n=3)
    with pytest.raises(BadParams):
        build_graph("k33-star", n=5)
    with pytest.raises(BadParams):
        build_graph("k33-star")
    with pytest.raises(BadParams):
        build_graph("fan", k=2, n=6)
    with pytest.raises(BadParams):
        build_graph("no-such-family", n=4)
    with pytest.raises(EmbedTooLarge):
        build_graph("bipartite-embed", n=7, embed=star(4))
    with pytest.raises(BadParams):
        build_graph("bipartite-embed", n=7)


def test_labelling_is_stable():
    # fixed labels keep graph6 fixtures reproducible
    assert build_graph("star-plus", n=5) == Graph.from_edges(5, [(0, 1), (0, 2), (0, 3), (0, 4), (1, 2)])
    assert build_graph("k4-star", n=6).edges() == [(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (1, 2), (1, 3), (2, 3)]


def test_spec_to_dict():
    d = FamilySpec.of("bipartite-embed", n=10, embed=star(3)).to_dict()
    assert d == {"family": "BIPARTITE_EMBED", "params": {"n": 10}, "embed": "Bo", "side": "floor"}
