"""Isomorph-free generation of small graphs and graph6 ingestion.

Generation is by vertex addition with canonical deletion: a child ``H`` of
parent ``G`` (``H = G + v``) is kept only when ``v`` can play the role of
the canonically deleted vertex of ``H``.  That vertex is chosen among the
vertices minimising (degree, sorted neighbour degrees), with ties broken by
the largest canonical code of ``H - w``.  Since the choice depends only on
the isomorphism class of ``H``, every class has a unique parent class and
duplicates can only arise among siblings, which are removed by canonical
code.

Graphs are carried between levels as canonical codes: the integer formed by
concatenating the rows of the canonically relabelled adjacency matrix.
"""

from __future__ import annotations

import functools
import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, Tuple

from .canon import canonical_labeling
from .errors import MalformedGraph6, OrderTooLargeForEnumeration, SpexGraphError
from .graph import Graph, from_graph6, is_connected
from .parallel import parallel_map

MAX_ENUM_ORDER = 10

Prune = Optional[Callable[[Graph], bool]]


def code_to_adj(code: int, n: int) -> Tuple[int, ...]:
    full = (1 << n) - 1
    return tuple((code >> ((n - 1 - i) * n)) & full for i in range(n))


def _relabelled_rows(adj: Sequence[int], perm: Sequence[int]) -> Tuple[int, ...]:
    n = len(perm)
    pos = [0] * n
    for i, v in enumerate(perm):
        pos[v] = i
    out = []
    for v in perm:
        row = 0
        a = adj[v]
        while a:
            low = a & -a
            row |= 1 << pos[low.bit_length() - 1]
            a ^= low
        out.append(row)
    return tuple(out)


def _delete(adj: Sequence[int], w: int) -> List[int]:
    low = (1 << w) - 1
    out = []
    for v, row in enumerate(adj):
        if v == w:
            continue
        out.append((row & low) | ((row >> (w + 1)) << w))
    return out


def _children(parent_code: int, n0: int, prune_name: Optional[str], canonical: bool = True) -> list:
    """Accepted children of one parent.

    With ``canonical`` the result is the sorted list of canonical codes.
    Otherwise it is a list of adjacency tuples in generation order, and
    canonical labelling is only run where siblings can collide: on children
    accepted through a tie, or when the parent has a nontrivial automorphism.
    """
    prune = resolve_prune(prune_name)
    adj0 = code_to_adj(parent_code, n0) if n0 else ()
    if canonical:
        rigid = False
    else:
        rigid = not canonical_labeling(adj0)[2] if n0 else True
    raw = []
    v = n0
    deg0 = [row.bit_count() for row in adj0]
    delta = min(deg0) if deg0 else 0
    found = {}
    for k in range(0, min(delta + 1, n0) + 1):
        forced = 0
        for u, d in enumerate(deg0):
            if d < k - 1:
                forced = -1
                break
            if d == k - 1:
                forced |= 1 << u
        if forced < 0:
            continue
        free = [u for u in range(n0) if not forced >> u & 1]
        need = k - forced.bit_count()
        if need < 0 or need > len(free):
            continue
        for extra in itertools.combinations(free, need):
            s = forced
            for u in extra:
                s |= 1 << u
            adj = list(adj0)
            for u in range(n0):
                if s >> u & 1:
                    adj[u] |= 1 << v
            adj.append(s)
            deg = [row.bit_count() for row in adj]
            # deg[v] == k is minimal by construction of s
            inv_v = sorted(deg[u] for u in range(n0) if s >> u & 1)
            ties = []
            reject = False
            for w in range(n0):
                if deg[w] != k:
                    continue
                r = adj[w]
                inv_w = []
                while r:
                    low = r & -r
                    inv_w.append(deg[low.bit_length() - 1])
                    r ^= low
                inv_w.sort()
                if inv_w < inv_v:
                    reject = True
                    break
                if inv_w == inv_v:
                    ties.append(w)
            if reject:
                continue
            if ties:
                for w in ties:
                    _, c, _ = canonical_labeling(_delete(adj, w))
                    if c > parent_code:
                        reject = True
                        break
                if reject:
                    continue
            elif rigid:
                # unique deletion vertex and trivial Aut(parent): no sibling collides
                if prune is None or prune(Graph.trusted(tuple(adj))):
                    raw.append(tuple(adj))
                continue
            perm, code, _ = canonical_labeling(adj)
            if code in found:
                continue
            if prune is not None:
                g = Graph.trusted(_relabelled_rows(adj, perm))
                if not prune(g):
                    found[code] = False
                    continue
            found[code] = True
            if not canonical:
                raw.append(tuple(adj))
    if not canonical:
        return raw
    return sorted(c for c, ok in found.items() if ok)


@functools.lru_cache(maxsize=64)
def resolve_prune(name: Optional[str]) -> Prune:
    """Predicate callable for a prune name; names keep worker tasks picklable."""
    if name is None:
        return None
    from .predicates import parse_predicate

    return parse_predicate(name)


@functools.lru_cache(maxsize=32)
def _level(n: int, prune_name: Optional[str], workers: int) -> Tuple[int, ...]:
    if n == 1:
        return (0,)
    parents = _level(n - 1, prune_name, workers)
    chunks = parallel_map(
        functools.partial(_children, n0=n - 1, prune_name=prune_name), parents, workers
    )
    out: List[int] = []
    for ch in chunks:
        out.extend(ch)
    return tuple(out)


def _check_order(n: int) -> None:
    if n < 1:
        raise ValueError("order must be positive")
    if n > MAX_ENUM_ORDER:
        raise OrderTooLargeForEnumeration(
            f"built-in generator supports n <= {MAX_ENUM_ORDER}; feed larger orders via graph6 ingestion"
        )


def enumerate_graphs(
    n: int,
    connected_only: bool = False,
    prune: Optional[str] = None,
    workers: int = 1,
    canonical: bool = True,
) -> Iterator[Graph]:
    """One representative per isomorphism class of order ``n``.

    ``prune`` names a hereditary predicate (closed under vertex deletion);
    generation then stays inside the class and yields exactly its members.
    The last level is streamed, so memory stays proportional to level n-1.
    With ``canonical=False`` the representatives are not relabelled
    canonically, which roughly halves the cost of the last level; the
    stream still holds exactly one graph per class, in a fixed order.
    """
    _check_order(n)
    if n == 1:
        g = Graph((0,))
        p = resolve_prune(prune)
        if p is None or p(g):
            yield g
        return
    parents = _level(n - 1, prune, workers)
    fn = functools.partial(_children, n0=n - 1, prune_name=prune, canonical=canonical)
    for batch in parallel_map(fn, parents, workers, lazy=True):
        for c in batch:
            g = Graph.trusted(code_to_adj(c, n) if canonical else c)
            if connected_only and not is_connected(g):
                continue
            yield g


def count_graphs(n: int, connected_only: bool = False, prune: Optional[str] = None,
                 workers: int = 1) -> int:
    return sum(1 for _ in enumerate_graphs(n, connected_only, prune, workers, canonical=False))


def clear_cache() -> None:
    _level.cache_clear()


# ingestion ------------------------------------------------------------------

@dataclass
class Diagnostic:
    line: int
    error: str
    message: str

    def to_dict(self) -> dict:
        return {"line": self.line, "error": self.error, "message": self.message}


def ingest(source: Iterable[str], diagnostics: Optional[List[Diagnostic]] = None) -> Iterator[Graph]:
    """Parse graph6 lines; bad lines are reported in ``diagnostics`` and skipped.

    Blank lines are ignored.  ``source`` is any iterable of lines (an open
    file, ``sys.stdin`` or a list).
    """
    for lineno, raw in enumerate(source, start=1):
        line = raw.strip(" \t\r\n")
        if not line:
            continue
        try:
            yield from_graph6(line)
        except SpexGraphError as exc:
            if diagnostics is None:
                raise
            diagnostics.append(Diagnostic(lineno, exc.code, str(exc)))


def ingest_path(path: str, diagnostics: Optional[List[Diagnostic]] = None) -> Iterator[Graph]:
    with open(path, "r", encoding="ascii", errors="replace") as fh:
        yield from ingest(fh, diagnostics)


__all__ = [
    "enumerate_graphs",
    "count_graphs",
    "ingest",
    "ingest_path",
    "Diagnostic",
    "MalformedGraph6",
]
