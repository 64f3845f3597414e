"""Exhaustive and hill-climbing searches for spectral and edge extremal graphs."""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .enumeration import MAX_ENUM_ORDER, enumerate_graphs
from .errors import BadParams, OrderTooLargeForEnumeration
from .graph import Graph, bits, canonical_form, is_connected, to_graph6
from .detectors import Witness
from .predicates import Predicate, parse_predicate
from .spectral import COMPARE_TOL, SpectrumResult, adjacency_matrix, rho_fast, spectral_radius

TIE_TOL = 1e-9


class SearchMode(str, enum.Enum):
    EXHAUSTIVE = "EXHAUSTIVE"
    HILLCLIMB = "HILLCLIMB"


@dataclass
class SearchResult:
    best: Graph
    best_graph6: str
    objective: float
    mode: SearchMode
    certificate: SpectrumResult
    visited: int
    predicate: str
    budget_exhausted: bool = False
    restarts: int = 0

    def to_dict(self) -> dict:
        return {
            "best": self.best_graph6,
            "n": self.best.n,
            "m": self.best.m,
            "objective": float(f"{self.objective:.12g}"),
            "mode": self.mode.value,
            "predicate": self.predicate,
            "certificate": self.certificate.to_dict(),
            "visited": self.visited,
            "budgetExhausted": self.budget_exhausted,
            "restarts": self.restarts,
        }


def _check_enum_order(n: int) -> None:
    if n > MAX_ENUM_ORDER:
        raise OrderTooLargeForEnumeration(
            f"exhaustive search supports n <= {MAX_ENUM_ORDER}; use HILLCLIMB or ingestion"
        )
    if n < 1:
        raise BadParams("n must be positive")


def _pick(cands: List[Tuple[float, Graph]]) -> Tuple[float, Graph, str]:
    """Largest objective; near-ties go to the smallest canonical graph6."""
    top = max(v for v, _ in cands)
    tied = [(canonical_form(g), v, g) for v, g in cands if v >= top - TIE_TOL]
    tied.sort(key=lambda t: t[0])
    code, v, g = tied[0]
    return v, g, code


def spex_exhaustive(n: int, predicate: str, workers: int = 1) -> SearchResult:
    """Connected graph of maximum spectral radius among those satisfying ``predicate``."""
    _check_enum_order(n)
    parse_predicate(predicate)
    best_val = -1.0
    cands: List[Tuple[float, Graph]] = []
    visited = 0
    for g in enumerate_graphs(n, connected_only=True, prune=predicate, workers=workers):
        visited += 1
        r = rho_fast(g)
        if r > best_val + TIE_TOL:
            best_val = r
            cands = [(c, h) for c, h in cands if c >= r - TIE_TOL]
        if r >= best_val - TIE_TOL:
            cands.append((r, g))
    if not cands:
        raise BadParams(f"no connected graph of order {n} satisfies {predicate}")
    _, g, code = _pick(cands)
    cert = spectral_radius(g)
    return SearchResult(g, code, cert.rho, SearchMode.EXHAUSTIVE, cert, visited, predicate)


# hill climbing --------------------------------------------------------------------

@dataclass
class HillClimbConfig:
    restarts: int = 20
    budget: int = 200_000
    swap_candidates: Optional[int] = None


class _Climber:
    """One seeded local search; ``evals`` counts predicate evaluations."""

    def __init__(self, n: int, pred: Predicate, rng: random.Random, cfg: HillClimbConfig, evals: List[int]):
        self.n = n
        self.pred = pred
        self.rng = rng
        self.cfg = cfg
        self.evals = evals
        self.triangle_only = pred.kind in ("gamma", "fan")

    def ok(self, adj: List[int], added: Sequence[Tuple[int, int]] = ()) -> bool:
        return self.blocker(adj, added) is None

    def blocker(self, adj: List[int], added: Sequence[Tuple[int, int]] = ()):
        """``None`` if ``adj`` satisfies the predicate, else the edges of a violation.

        ``_ALL`` when no certificate is available.
        """
        if self.triangle_only and added and not any(adj[u] & adj[v] for u, v in added):
            # no new triangle: the triangle set only shrank, so the property persists
            return None
        if self.evals[0] >= self.cfg.budget:
            raise _OutOfBudget
        self.evals[0] += 1
        G = Graph.trusted(tuple(adj))
        if self.pred.kind == "bounded":
            return None if self.pred(G) else _ALL
        wit = self.pred.violation(G)
        return None if wit is None else witness_edges(wit)

    def start(self) -> List[int]:
        n, rng = self.n, self.rng
        order = list(range(n))
        rng.shuffle(order)
        adj = [0] * n
        for i in range(1, n):
            a, j = order[i], rng.randrange(i)
            # every tree is a member except under the bounded predicate
            tries = [j] + [t for t in range(i) if t != j] if self.pred.kind == "bounded" else [j]
            for t in tries:
                b = order[t]
                adj[a] |= 1 << b
                adj[b] |= 1 << a
                if len(tries) == 1 or self.ok(adj):
                    break
                adj[a] &= ~(1 << b)
                adj[b] &= ~(1 << a)
            else:
                raise _NoStart
        non = [(u, v) for u in range(n) for v in range(u + 1, n) if not adj[u] >> v & 1]
        rng.shuffle(non)
        for u, v in non:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            if not self.ok(adj):
                adj[u] &= ~(1 << v)
                adj[v] &= ~(1 << u)
        return adj

    @staticmethod
    def spectrum(adj: List[int]) -> Tuple[float, np.ndarray]:
        A = adjacency_matrix(Graph.trusted(tuple(adj)))
        w, V = np.linalg.eigh(A)
        x = np.abs(V[:, -1])
        return float(w[-1]), x

    def improve(self, adj: List[int], rho: float, x: np.ndarray) -> Optional[List[int]]:
        n, rng = self.n, self.rng
        # single-edge additions always raise rho on a connected graph
        non = [(u, v) for u in range(n) for v in range(u + 1, n) if not adj[u] >> v & 1]
        rng.shuffle(non)
        blocked = {}
        for u, v in non:
            new = list(adj)
            new[u] |= 1 << v
            new[v] |= 1 << u
            why = self.blocker(new, [(u, v)])
            if why is None:
                return new
            blocked[(u, v)] = why
        # rotations: move v's private neighbours onto u when x_u >= x_v
        pairs = [(u, v) for u in range(n) for v in range(n) if u != v and x[u] >= x[v]]
        rng.shuffle(pairs)
        for u, v in pairs:
            moved = adj[v] & ~adj[u] & ~(1 << u)
            if not moved:
                continue
            new = list(adj)
            for w in bits(moved):
                new[v] &= ~(1 << w)
                new[w] &= ~(1 << v)
                new[u] |= 1 << w
                new[w] |= 1 << u
            if not is_connected(Graph.trusted(tuple(new))):
                continue
            # x_u > x_v already forces a larger Rayleigh quotient; ties need a solve
            if x[u] - x[v] <= 1e-12 and self.spectrum(new)[0] <= rho + 1e-12:
                continue
            if self.ok(new, [(u, w) for w in bits(moved)]):
                return new
        # swaps ranked by the first-order change in rho; a positive change
        # raises the Rayleigh quotient of x, hence rho itself.  Adding cd alone
        # produced a violation; it survives in G - ab + cd unless ab is one of
        # its edges, so only those ab are worth testing.
        edges = [(u, v) for u in range(n) for v in bits(adj[u]) if v > u]
        cands = []
        for c, d in non:
            why = blocked[(c, d)]
            for a, b in (edges if why is _ALL else why):
                if (a, b) == (c, d):
                    continue
                gain = x[c] * x[d] - x[a] * x[b]
                if gain > 1e-12:
                    cands.append((-gain, a, b, c, d))
        cands.sort()
        for _, a, b, c, d in cands[: self.cfg.swap_candidates]:
            new = list(adj)
            new[a] &= ~(1 << b)
            new[b] &= ~(1 << a)
            new[c] |= 1 << d
            new[d] |= 1 << c
            if not is_connected(Graph.trusted(tuple(new))):
                continue
            if self.ok(new, [(c, d)]):
                return new
        return None

    def run(self, best: List) -> None:
        adj = self.start()
        while True:
            rho, x = self.spectrum(adj)
            best.append((rho, tuple(adj)))
            nxt = self.improve(adj, rho, x)
            if nxt is None:
                return
            adj = nxt


class _OutOfBudget(Exception):
    pass


class _NoStart(Exception):
    """The random vertex order admits no spanning tree inside the class."""


_ALL = object()  # "no certificate available"


def witness_edges(wit: Witness) -> FrozenSet[Tuple[int, int]]:
    """Edge set of a violation certificate, as sorted pairs."""
    out = set()
    for cyc in wit.cycles:
        out.update(zip(cyc, cyc[1:] + cyc[:1]))
    for a, b, c in wit.packing:
        out.update(((a, b), (a, c), (b, c)))
    if wit.fan_center is not None:
        z = wit.fan_center
        for u, v in wit.matching_edges:
            out.update(((z, u), (z, v), (u, v)))
    return frozenset((min(e), max(e)) for e in out)


def spex_hillclimb(n: int, predicate: str, seed: int = 0, cfg: Optional[HillClimbConfig] = None) -> SearchResult:
    """Best connected graph found by seeded local search under ``predicate``.

    Each restart grows a random spanning tree greedily, then applies
    first-improvement moves: edge additions, rotations toward larger Perron
    entries, and edge swaps.  Eigenvalues during the climb come from a dense
    solver; the returned certificate is recomputed by power iteration.
    """
    cfg = cfg or HillClimbConfig()
    if n < 2:
        raise BadParams("hill climbing needs n >= 2")
    if cfg.restarts < 1 or cfg.budget < 1:
        raise BadParams("restarts and budget must be positive")
    pred = parse_predicate(predicate)
    rng = random.Random(seed)
    evals = [0]
    seen: List[Tuple[float, tuple]] = []
    exhausted = False
    done = 0
    for _ in range(cfg.restarts):
        climber = _Climber(n, pred, rng, cfg, evals)
        try:
            climber.run(seen)
        except _OutOfBudget:
            exhausted = True
            break
        except _NoStart:
            pass
        done += 1
    if not seen:
        if exhausted:
            raise BadParams("budget too small to build a starting graph")
        raise BadParams(f"no restart built a connected start graph under {predicate} on {n} vertices")
    top = max(r for r, _ in seen)
    cands = {adj: r for r, adj in seen if r >= top - TIE_TOL}
    val, g, code = _pick([(r, Graph.trusted(adj)) for adj, r in cands.items()])
    if not pred(g):  # pragma: no cover - every accepted state was checked
        raise AssertionError("hill climb produced a graph violating its predicate")
    cert = spectral_radius(g)
    return SearchResult(g, code, cert.rho, SearchMode.HILLCLIMB, cert, evals[0], predicate,
                        budget_exhausted=exhausted, restarts=done)


def spex(n: int, predicate: str, mode=SearchMode.EXHAUSTIVE, seed: int = 0,
         budget: Optional[int] = None, restarts: int = 20, workers: int = 1) -> SearchResult:
    mode = SearchMode(mode)
    if mode is SearchMode.EXHAUSTIVE:
        return spex_exhaustive(n, predicate, workers)
    cfg = HillClimbConfig(restarts=restarts)
    if budget is not None:
        cfg.budget = budget
    return spex_hillclimb(n, predicate, seed, cfg)


# Turan numbers ---------------------------------------------------------------------

@dataclass
class TuranResult:
    n: int
    predicate: str
    max_edges: int
    extremal: List[str] = field(default_factory=list)
    visited: int = 0

    def to_dict(self) -> dict:
        return {"n": self.n, "predicate": self.predicate, "maxEdges": self.max_edges,
                "extremal": list(self.extremal), "visited": self.visited}


def turan_number(n: int, predicate: str, workers: int = 1) -> TuranResult:
    """Maximum size of a graph of order ``n`` satisfying ``predicate``, with all extremal graphs."""
    _check_enum_order(n)
    parse_predicate(predicate)
    best = -1
    ext: List[Graph] = []
    visited = 0
    for g in enumerate_graphs(n, prune=predicate, workers=workers):
        visited += 1
        if g.m > best:
            best, ext = g.m, [g]
        elif g.m == best:
            ext.append(g)
    return TuranResult(n, predicate, best, sorted(canonical_form(g) for g in ext), visited)


__all__ = [
    "SearchMode",
    "SearchResult",
    "HillClimbConfig",
    "spex",
    "spex_exhaustive",
    "spex_hillclimb",
    "turan_number",
    "TuranResult",
    "to_graph6",
    "COMPARE_TOL",
]
