"""Immutable simple graphs on bitset adjacency, graph6 I/O and surgery."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, List, Sequence, Tuple

from . import canon
from .errors import (
    EdgeAlreadyPresent,
    EdgeNotPresent,
    IndexOutOfRange,
    LoopEdge,
    MalformedGraph6,
    NotAnEdge,
    OrderTooLarge,
)

MAX_ORDER = 512

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``adj[v]`` is an int bitset of the neighbours of ``v``.  Instances are
    immutable; every operation returns a new graph.
    """

    adj: Tuple[int, ...]
    m: int = field(default=-1, compare=False, repr=False)

    def __post_init__(self):
        n = len(self.adj)
        if not 1 <= n <= MAX_ORDER:
            raise OrderTooLarge(f"order {n} outside 1..{MAX_ORDER}")
        total = 0
        for v, row in enumerate(self.adj):
            if row >> v & 1:
                raise LoopEdge(f"loop at vertex {v}")
            if row >> n:
                raise IndexOutOfRange(f"vertex {v} has a neighbour >= {n}")
            total += row.bit_count()
        for v, row in enumerate(self.adj):
            r = row
            while r:
                low = r & -r
                u = low.bit_length() - 1
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at ({v}, {u})")
                r ^= low
        object.__setattr__(self, "m", total // 2)

    # construction -----------------------------------------------------

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Edge]) -> "Graph":
        if not 1 <= n <= MAX_ORDER:
            raise OrderTooLarge(f"order {n} outside 1..{MAX_ORDER}")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise IndexOutOfRange(f"edge ({u}, {v}) outside 0..{n - 1}")
            if u == v:
                raise LoopEdge(f"loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(tuple(adj))

    @classmethod
    def trusted(cls, adj: Tuple[int, ...]) -> "Graph":
        """Wrap rows already known to be symmetric and loop free, skipping validation."""
        g = object.__new__(cls)
        object.__setattr__(g, "adj", adj)
        object.__setattr__(g, "m", sum(row.bit_count() for row in adj) // 2)
        return g

    @classmethod
    def empty(cls, n: int) -> "Graph":
        return cls((0,) * n)

    # basic accessors --------------------------------------------------

    @property
    def n(self) -> int:
        return len(self.adj)

    @property
    def order(self) -> int:
        return len(self.adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> List[int]:
        return bits(self.adj[v])

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def degrees(self) -> List[int]:
        return [row.bit_count() for row in self.adj]

    def edges(self) -> List[Edge]:
        """Edges ``(u, v)`` with ``u < v`` in lexicographic order."""
        out = []
        for u, row in enumerate(self.adj):
            r = row >> (u + 1) << (u + 1)
            while r:
                low = r & -r
                out.append((u, low.bit_length() - 1))
                r ^= low
        return out

    def max_degree(self) -> int:
        return max(self.degrees())

    def __str__(self) -> str:
        return to_graph6(self)


def bits(x: int) -> List[int]:
    out = []
    while x:
        low = x & -x
        out.append(low.bit_length() - 1)
        x ^= low
    return out


def _check_vertex(G: Graph, v: int) -> None:
    if not 0 <= v < G.n:
        raise IndexOutOfRange(f"vertex {v} outside 0..{G.n - 1}")


# graph6 ---------------------------------------------------------------

def _decode_order(data: bytes) -> Tuple[int, int]:
    if not data:
        raise MalformedGraph6("empty record")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise MalformedGraph6("truncated 8-byte order prefix")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise MalformedGraph6("truncated 4-byte order prefix")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def from_graph6(text) -> Graph:
    """Parse one graph6 record (optional ``>>graph6<<`` header, trailing newline)."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    s = text.strip(" \t\r\n")
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if s.startswith(":") or s.startswith(">>sparse6<<"):
        raise MalformedGraph6("sparse6 is not supported")
    if s.startswith("&") or s.startswith(">>digraph6<<"):
        raise MalformedGraph6("digraph6 is not supported")
    try:
        data = s.encode("ascii")
    except UnicodeEncodeError as exc:
        raise MalformedGraph6("non-ASCII character in record") from exc
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise MalformedGraph6(f"byte {b!r} at offset {i} outside 63..126")
    n, off = _decode_order(data)
    if n > MAX_ORDER:
        raise OrderTooLarge(f"order {n} exceeds {MAX_ORDER}")
    if n < 1:
        raise MalformedGraph6("order must be at least 1")
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[off:]
    if len(body) != nbytes:
        raise MalformedGraph6(f"expected {nbytes} data bytes for n={n}, got {len(body)}")
    adj = [0] * n
    k = 0
    i, j = 0, 1
    for b in body:
        val = b - 63
        for shift in range(5, -1, -1):
            bit = val >> shift & 1
            if k < nbits:
                if bit:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
                i += 1
                if i == j:
                    i, j = 0, j + 1
            elif bit:
                raise MalformedGraph6("nonzero padding bits")
            k += 1
    return Graph.trusted(tuple(adj))


def to_graph6(G: Graph) -> str:
    n = G.n
    if n <= 62:
        out = [chr(63 + n)]
    elif n <= 258047:
        out = ["~"] + [chr(63 + (n >> s & 63)) for s in (12, 6, 0)]
    else:  # unreachable under MAX_ORDER, kept for format completeness
        out = ["~~"] + [chr(63 + (n >> s & 63)) for s in (30, 24, 18, 12, 6, 0)]
    val = 0
    cnt = 0
    adj = G.adj
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            val = (val << 1) | (row >> i & 1)
            cnt += 1
            if cnt == 6:
                out.append(chr(63 + val))
                val = cnt = 0
    if cnt:
        out.append(chr(63 + (val << (6 - cnt))))
    return "".join(out)


# surgery ----------------------------------------------------------------

def relabel(G: Graph, perm: Sequence[int]) -> Graph:
    """Graph whose vertex ``i`` is vertex ``perm[i]`` of ``G``."""
    n = G.n
    pos = [0] * n
    for i, v in enumerate(perm):
        pos[v] = i
    adj = [0] * n
    for i, v in enumerate(perm):
        row = 0
        for u in bits(G.adj[v]):
            row |= 1 << pos[u]
        adj[i] = row
    return Graph.trusted(tuple(adj))


def coalesce(G: Graph, u: int, H: Graph, w: int) -> Graph:
    """One-point union identifying ``u`` of ``G`` with ``w`` of ``H``.

    Vertices of ``G`` keep their labels; the remaining vertices of ``H``
    follow in their original order.
    """
    _check_vertex(G, u)
    _check_vertex(H, w)
    offset = G.n
    mapping = {}
    nxt = offset
    for x in range(H.n):
        if x == w:
            mapping[x] = u
        else:
            mapping[x] = nxt
            nxt += 1
    edges = G.edges() + [(mapping[a], mapping[b]) for a, b in H.edges()]
    return Graph.from_edges(G.n + H.n - 1, edges)


def subdivide_edge(G: Graph, u: int, v: int) -> Graph:
    """Replace edge ``uv`` by the path ``u - x - v`` with new vertex ``x = n``."""
    _check_vertex(G, u)
    _check_vertex(G, v)
    if not G.has_edge(u, v):
        raise NotAnEdge(f"({u}, {v}) is not an edge")
    x = G.n
    adj = list(G.adj) + [(1 << u) | (1 << v)]
    adj[u] = (adj[u] & ~(1 << v)) | (1 << x)
    adj[v] = (adj[v] & ~(1 << u)) | (1 << x)
    return Graph.trusted(tuple(adj))


def rewire(G: Graph, remove: Iterable[Edge] = (), add: Iterable[Edge] = ()) -> Graph:
    """``(E(G) \\ remove) | add``; ``add`` may not touch surviving edges."""
    adj = list(G.adj)
    for u, v in remove:
        _check_vertex(G, u)
        _check_vertex(G, v)
        if not adj[u] >> v & 1:
            raise EdgeNotPresent(f"({u}, {v}) is not an edge")
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
    for u, v in add:
        _check_vertex(G, u)
        _check_vertex(G, v)
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        if adj[u] >> v & 1:
            raise EdgeAlreadyPresent(f"({u}, {v}) is already an edge")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph.trusted(tuple(adj))


def add_edge(G: Graph, u: int, v: int) -> Graph:
    return rewire(G, (), [(u, v)])


def remove_edge(G: Graph, u: int, v: int) -> Graph:
    return rewire(G, [(u, v)], ())


def delete_vertex(G: Graph, v: int) -> Graph:
    _check_vertex(G, v)
    keep = [u for u in range(G.n) if u != v]
    return induced_subgraph(G, keep)


def disjoint_union(G: Graph, H: Graph) -> Graph:
    off = G.n
    return Graph.trusted(G.adj + tuple(row << off for row in H.adj))


def complement(G: Graph) -> Graph:
    full = (1 << G.n) - 1
    return Graph.trusted(tuple(full & ~row & ~(1 << v) for v, row in enumerate(G.adj)))


# canonical form -----------------------------------------------------------

def canonical_perm(G: Graph) -> List[int]:
    perm, _, _ = canon.canonical_labeling(G.adj)
    return perm


def canonical_graph(G: Graph) -> Graph:
    return relabel(G, canonical_perm(G))


def canonical_form(G: Graph) -> str:
    """graph6 of a canonical relabelling; equal iff ``G`` and ``H`` are isomorphic."""
    return to_graph6(canonical_graph(G))


def is_isomorphic(G: Graph, H: Graph) -> bool:
    if G.n != H.n or G.m != H.m or sorted(G.degrees()) != sorted(H.degrees()):
        return False
    return canonical_form(G) == canonical_form(H)


# plain accessors ------------------------------------------------------------

def degree(G: Graph, v: int) -> int:
    _check_vertex(G, v)
    return G.degree(v)


def neighborhood(G: Graph, v: int, d: int = 1) -> List[int]:
    """Vertices at distance exactly ``d`` from ``v`` (``d = 0`` gives ``[v]``)."""
    _check_vertex(G, v)
    seen = 1 << v
    frontier = 1 << v
    for _ in range(d):
        nxt = 0
        for u in bits(frontier):
            nxt |= G.adj[u]
        frontier = nxt & ~seen
        seen |= frontier
        if not frontier:
            break
    return bits(frontier)


def induced_subgraph(G: Graph, vertices: Sequence[int]) -> Graph:
    """Subgraph induced on ``vertices``, relabelled ``0..k-1`` in the given order."""
    vs = list(vertices)
    pos = {v: i for i, v in enumerate(vs)}
    adj = []
    for v in vs:
        _check_vertex(G, v)
        row = 0
        for u in bits(G.adj[v]):
            if u in pos:
                row |= 1 << pos[u]
        adj.append(row)
    return Graph.trusted(tuple(adj))


def components(G: Graph) -> List[List[int]]:
    """Connected components as sorted vertex lists, ordered by smallest vertex."""
    unseen = (1 << G.n) - 1
    out = []
    while unseen:
        start = (unseen & -unseen).bit_length() - 1
        comp = 1 << start
        frontier = comp
        while frontier:
            nxt = 0
            for u in bits(frontier):
                nxt |= G.adj[u]
            frontier = nxt & ~comp
            comp |= frontier
        unseen &= ~comp
        out.append(bits(comp))
    return out


def is_connected(G: Graph) -> bool:
    return len(components(G)) == 1
