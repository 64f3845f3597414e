"""Builders for the named extremal families, each with its natural partition.

Labelling conventions (fixed so graph6 fixtures stay stable):

* ``STAR_PLUS(n)``: centre 0, leaves ``1..n-1``, extra edge ``1-2``.
* ``S_NK(n, k)``: clique on ``0..k-1`` joined to independent ``k..n-1``.
* ``COMPLETE(n)``: ``0..n-1``.
* ``COMPLETE_BIPARTITE(a, b)``: sides ``0..a-1`` and ``a..a+b-1``.
* ``FAN(k)``: hub 0, triangles ``0-(2i+1)-(2i+2)``; order ``2k+1``.
* ``K4_STAR``, ``C4_STAR``, ``K33_STAR`` ``(n)``: the small graph first
  (``C4`` is the cycle ``0-1-2-3``, ``K33`` has sides ``0,1,2`` and ``3,4,5``),
  coalesced at vertex 0 with a star whose leaves follow.
* ``Y_GRAPH(n)``: path ``0..n-5``, pendants ``n-4, n-3`` on 0 and
  ``n-2, n-1`` on ``n-5``.
* ``BIPARTITE_EMBED(n, embed)``: the embedding side is ``0..t-1`` with the
  copy of ``embed`` on ``0..|embed|-1``; the other side is ``t..n-1``.
  By default ``t = floor(n/2)``; ``side="ceil"`` embeds in the larger side.
* ``SUBDIVIDED_KAB(n)``: ``K_{a,b}`` with ``a = floor((n-1)/2)``, sides
  ``0..a-1`` and ``a..a+b-1``; edge ``0-a`` carries the new vertex ``n-1``.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence

from . import canon
from .errors import BadParams, EmbedTooLarge
from .graph import Graph, coalesce, subdivide_edge
from .spectral import Partition


class Family(str, enum.Enum):
    STAR_PLUS = "STAR_PLUS"
    S_NK = "S_NK"
    COMPLETE = "COMPLETE"
    COMPLETE_BIPARTITE = "COMPLETE_BIPARTITE"
    FAN = "FAN"
    K4_STAR = "K4_STAR"
    C4_STAR = "C4_STAR"
    K33_STAR = "K33_STAR"
    Y_GRAPH = "Y_GRAPH"
    BIPARTITE_EMBED = "BIPARTITE_EMBED"
    SUBDIVIDED_KAB = "SUBDIVIDED_KAB"

    @property
    def cli_name(self) -> str:
        return self.value.lower().replace("_", "-")

    @classmethod
    def parse(cls, name: str) -> "Family":
        key = name.strip().upper().replace("-", "_")
        try:
            return cls[key]
        except KeyError:
            raise BadParams(f"unknown family {name!r}") from None


@dataclass
class FamilySpec:
    family: Family
    params: Dict[str, int] = field(default_factory=dict)
    embed: Optional[Graph] = None
    side: str = "floor"

    @classmethod
    def of(cls, family, embed: Optional[Graph] = None, side: str = "floor", **params) -> "FamilySpec":
        fam = family if isinstance(family, Family) else Family.parse(family)
        return cls(fam, {k: int(v) for k, v in params.items() if v is not None}, embed, side)

    def to_dict(self) -> dict:
        from .graph import to_graph6

        out = {"family": self.family.value, "params": dict(sorted(self.params.items()))}
        if self.embed is not None:
            out["embed"] = to_graph6(self.embed)
            out["side"] = self.side
        return out


@dataclass(frozen=True)
class BuiltGraph:
    graph: Graph
    partition: Partition
    family: FamilySpec


@dataclass(frozen=True)
class CatalogEntry:
    family: Family
    params: tuple
    constraint: str
    definition: str
    citation: str


_CATALOG = [
    CatalogEntry(Family.STAR_PLUS, ("n",), "n >= 3",
                 "star K_{1,n-1} plus one edge between two leaves",
                 "unique extremal graph without two cycles of equal length"),
    CatalogEntry(Family.S_NK, ("n", "k"), "1 <= k <= n",
                 "K_k joined to n-k isolated vertices",
                 "S_{n,k}; S_{n,1} is the star with spectral radius sqrt(n-1)"),
    CatalogEntry(Family.COMPLETE, ("n",), "n >= 1", "complete graph K_n", "K_n"),
    CatalogEntry(Family.COMPLETE_BIPARTITE, ("a", "b"), "a >= 1, b >= 1",
                 "complete bipartite graph K_{a,b}", "K_{a,b}"),
    CatalogEntry(Family.FAN, ("k",), "k >= 1; order 2k+1",
                 "k triangles sharing one vertex", "fan F_k"),
    CatalogEntry(Family.K4_STAR, ("n",), "n >= 4",
                 "K_4 coalesced at one vertex with the centre of K_{1,n-4}",
                 "spectral extremal graph without two edge-disjoint cycles"),
    CatalogEntry(Family.C4_STAR, ("n",), "n >= 4",
                 "C_4 coalesced at one vertex with the centre of K_{1,n-4}",
                 "comparison graph in the spectral chain against K_{1,n-2}^+"),
    CatalogEntry(Family.K33_STAR, ("n",), "n >= 6",
                 "K_{3,3} coalesced at one vertex with the centre of K_{1,n-6}",
                 "edge-extremal graph without two edge-disjoint cycles (m = n+3)"),
    CatalogEntry(Family.Y_GRAPH, ("n",), "n >= 6",
                 "path on n-4 vertices with two pendant vertices at each end",
                 "exceptional tree of the subdivision monotonicity lemma"),
    CatalogEntry(Family.BIPARTITE_EMBED, ("n",), "1 <= |embed| <= floor(n/2)",
                 "K_{ceil(n/2),floor(n/2)} with a copy of embed inside one side",
                 "Turan and spectral extremal graphs for k edge-disjoint triangles"),
    CatalogEntry(Family.SUBDIVIDED_KAB, ("n",), "n >= 3",
                 "K_{floor((n-1)/2),ceil((n-1)/2)} with one edge subdivided",
                 "subdivided complete bipartite graph"),
]


def family_catalog() -> List[CatalogEntry]:
    """One entry per family, with parameter ranges and a short definition."""
    return list(_CATALOG)


def _need(spec: FamilySpec, name: str) -> int:
    if name not in spec.params:
        raise BadParams(f"{spec.family.cli_name} needs parameter {name}")
    return spec.params[name]


def _check(ok: bool, msg: str) -> None:
    if not ok:
        raise BadParams(msg)


def star(n: int) -> Graph:
    return Graph.from_edges(n, [(0, i) for i in range(1, n)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, itertools.combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def cycle(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def _cells(*groups: Sequence[int]) -> Partition:
    return Partition.of([g for g in groups if len(g)])


def _coalesced_star(core: Graph, n: int) -> Graph:
    return coalesce(core, 0, star(n - core.n + 1), 0)


def build(spec: FamilySpec) -> BuiltGraph:
    """Graph of ``spec`` together with its natural equitable partition."""
    f = spec.family
    if f is Family.STAR_PLUS:
        n = _need(spec, "n")
        _check(n >= 3, "star-plus needs n >= 3")
        g = Graph.from_edges(n, [(0, i) for i in range(1, n)] + [(1, 2)])
        part = _cells([0], [1, 2], range(3, n))
    elif f is Family.S_NK:
        n, k = _need(spec, "n"), _need(spec, "k")
        _check(1 <= k <= n, "s-nk needs 1 <= k <= n")
        edges = list(itertools.combinations(range(k), 2))
        edges += [(i, j) for i in range(k) for j in range(k, n)]
        g = Graph.from_edges(n, edges)
        part = _cells(range(k), range(k, n))
    elif f is Family.COMPLETE:
        n = _need(spec, "n")
        _check(n >= 1, "complete needs n >= 1")
        g = complete(n)
        part = _cells(range(n))
    elif f is Family.COMPLETE_BIPARTITE:
        a, b = _need(spec, "a"), _need(spec, "b")
        _check(a >= 1 and b >= 1, "complete-bipartite needs a, b >= 1")
        g = complete_bipartite(a, b)
        part = _cells(range(a), range(a, a + b))
    elif f is Family.FAN:
        k = _need(spec, "k")
        _check(k >= 1, "fan needs k >= 1")
        if "n" in spec.params and spec.params["n"] != 2 * k + 1:
            raise BadParams("fan order is forced to 2k+1")
        edges = [(0, i) for i in range(1, 2 * k + 1)]
        edges += [(2 * i + 1, 2 * i + 2) for i in range(k)]
        g = Graph.from_edges(2 * k + 1, edges)
        part = _cells([0], range(1, 2 * k + 1))
    elif f is Family.K4_STAR:
        n = _need(spec, "n")
        _check(n >= 4, "k4-star needs n >= 4")
        g = _coalesced_star(complete(4), n)
        part = _cells([0], [1, 2, 3], range(4, n))
    elif f is Family.C4_STAR:
        n = _need(spec, "n")
        _check(n >= 4, "c4-star needs n >= 4")
        g = _coalesced_star(cycle(4), n)
        part = _cells([0], [1, 3], [2], range(4, n))
    elif f is Family.K33_STAR:
        n = _need(spec, "n")
        _check(n >= 6, "k33-star needs n >= 6")
        g = _coalesced_star(complete_bipartite(3, 3), n)
        part = _cells(range(6, n), [0], [1, 2], [3, 4, 5])
    elif f is Family.Y_GRAPH:
        n = _need(spec, "n")
        _check(n >= 6, "y-graph needs n >= 6")
        L = n - 4
        edges = [(i, i + 1) for i in range(L - 1)]
        edges += [(0, L), (0, L + 1), (L - 1, L + 2), (L - 1, L + 3)]
        g = Graph.from_edges(n, edges)
        pairs = [sorted({i, L - 1 - i}) for i in range((L + 1) // 2)]
        part = _cells(range(L, n), *pairs)
    elif f is Family.BIPARTITE_EMBED:
        n = _need(spec, "n")
        H = spec.embed
        _check(H is not None, "bipartite-embed needs an embedded graph")
        _check(n >= 2, "bipartite-embed needs n >= 2")
        _check(spec.side in ("floor", "ceil"), "side must be 'floor' or 'ceil'")
        t = n // 2 if spec.side == "floor" else n - n // 2
        if H.n > t:
            raise EmbedTooLarge(f"embedded graph has {H.n} vertices, side has {t}")
        edges = [(i, j) for i in range(t) for j in range(t, n)] + H.edges()
        g = Graph.from_edges(n, edges)
        init = [list(range(t, n)), list(range(H.n)), list(range(H.n, t))]
        part = Partition.of(canon.equitable_cells(g.adj, [c for c in init if c]))
    elif f is Family.SUBDIVIDED_KAB:
        n = _need(spec, "n")
        _check(n >= 3, "subdivided-kab needs n >= 3")
        a = (n - 1) // 2
        b = n - 1 - a
        g = subdivide_edge(complete_bipartite(a, b), 0, a)
        init = [[0], [a], [n - 1], list(range(1, a)), list(range(a + 1, a + b))]
        part = Partition.of(canon.equitable_cells(g.adj, [c for c in init if c]))
    else:  # pragma: no cover
        raise BadParams(f"unhandled family {f}")
    part.check_cover(g.n)
    return BuiltGraph(g, part, spec)


def build_graph(family, embed: Optional[Graph] = None, **params) -> Graph:
    """Shorthand: ``build_graph("k4-star", n=17)``."""
    return build(FamilySpec.of(family, embed=embed, **params)).graph
