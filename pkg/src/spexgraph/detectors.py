"""Exact detectors for cycle and triangle structures, each with a certificate."""

from __future__ import annotations

import enum
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import ResourceExhausted
from .graph import Graph, bits

DEFAULT_CYCLE_CAP = 10**6
DEFAULT_NODE_BUDGET = 10**6


class WitnessKind(str, enum.Enum):
    REPEATED_LENGTH = "REPEATED_LENGTH"
    EDGE_DISJOINT_CYCLES = "EDGE_DISJOINT_CYCLES"
    TRIANGLE_PACKING = "TRIANGLE_PACKING"
    FAN = "FAN"


@dataclass
class Witness:
    kind: WitnessKind
    cycles: List[List[int]] = field(default_factory=list)
    packing: List[Tuple[int, int, int]] = field(default_factory=list)
    fan_center: Optional[int] = None
    matching_edges: List[Tuple[int, int]] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "cycles": [list(c) for c in self.cycles],
            "packing": [list(t) for t in self.packing],
            "fanCenter": self.fan_center,
            "matchingEdges": [list(e) for e in self.matching_edges],
        }

    def validate(self, G: Graph) -> bool:
        """Check the certificate against ``G``; raises ``AssertionError`` on failure."""
        if self.kind in (WitnessKind.REPEATED_LENGTH, WitnessKind.EDGE_DISJOINT_CYCLES):
            sets = [cycle_edges(G, c) for c in self.cycles]
            if self.kind is WitnessKind.REPEATED_LENGTH:
                assert len(self.cycles) == 2
                assert len(self.cycles[0]) == len(self.cycles[1])
                assert sets[0] != sets[1]
            else:
                for i in range(len(sets)):
                    for j in range(i):
                        assert not sets[i] & sets[j], "cycles share an edge"
        elif self.kind is WitnessKind.TRIANGLE_PACKING:
            used = set()
            for a, b, c in self.packing:
                es = {frozenset((a, b)), frozenset((b, c)), frozenset((a, c))}
                for e in es:
                    u, v = tuple(e)
                    assert G.has_edge(u, v), f"missing edge {u}{v}"
                assert not used & es, "triangles share an edge"
                used |= es
        elif self.kind is WitnessKind.FAN:
            c = self.fan_center
            seen = set()
            for u, v in self.matching_edges:
                assert G.has_edge(c, u) and G.has_edge(c, v) and G.has_edge(u, v)
                assert u not in seen and v not in seen, "not a matching"
                seen |= {u, v}
        return True


def cycle_edges(G: Graph, cycle: Sequence[int]) -> frozenset:
    """Edge set of a closed vertex sequence, asserting every edge is present."""
    k = len(cycle)
    assert k >= 3 and len(set(cycle)) == k, "not a simple cycle"
    out = set()
    for i in range(k):
        u, v = cycle[i], cycle[(i + 1) % k]
        assert G.has_edge(u, v), f"missing edge {u}{v}"
        out.add((min(u, v), max(u, v)))
    return frozenset(out)


# cycles -----------------------------------------------------------------

def two_core(adj: Sequence[int]) -> List[int]:
    """Adjacency with degree <= 1 vertices stripped repeatedly."""
    adj = list(adj)
    stack = [v for v, row in enumerate(adj) if row and row.bit_count() == 1]
    while stack:
        v = stack.pop()
        row = adj[v]
        if row.bit_count() != 1:
            continue
        u = row.bit_length() - 1
        adj[v] = 0
        adj[u] &= ~(1 << v)
        if adj[u].bit_count() == 1:
            stack.append(u)
    return adj


class _Budget:
    __slots__ = ("left", "used")

    def __init__(self, limit: int):
        self.left = limit
        self.used = 0

    def tick(self, what: str) -> None:
        self.used += 1
        self.left -= 1
        if self.left < 0:
            raise ResourceExhausted(f"{what}: node budget exhausted after {self.used} nodes")


def iter_cycles(adj: Sequence[int], budget: Optional[_Budget] = None) -> Iterator[List[int]]:
    """Every cycle exactly once, as a vertex list starting at its smallest vertex.

    Paths are rooted at the smallest vertex ``s`` and only visit vertices
    above ``s``; the two traversal directions are told apart by requiring the
    second vertex to be smaller than the last.
    """
    core = two_core(adj)
    n = len(core)
    for s in range(n):
        higher = ~((1 << (s + 1)) - 1)
        if (core[s] & higher).bit_count() < 2:
            continue
        path = [s]
        # stack of remaining-candidate masks
        stack = [core[s] & higher]
        on_path = 1 << s
        while stack:
            cand = stack[-1]
            if not cand:
                stack.pop()
                on_path &= ~(1 << path.pop())
                continue
            low = cand & -cand
            stack[-1] = cand ^ low
            x = low.bit_length() - 1
            if budget is not None:
                budget.tick("cycle enumeration")
            if len(path) >= 2 and core[x] >> s & 1 and path[1] < x:
                yield path + [x]
            path.append(x)
            on_path |= low
            stack.append(core[x] & higher & ~on_path)
    return


@dataclass
class CycleCensus:
    counts_by_length: Dict[int, int]
    truncated: bool
    total: int

    def to_dict(self) -> dict:
        return {
            "countsByLength": {str(k): v for k, v in sorted(self.counts_by_length.items())},
            "truncated": self.truncated,
            "total": self.total,
        }


def cycle_census(G: Graph, cap: int = DEFAULT_CYCLE_CAP, stop_on_repeat: bool = False) -> CycleCensus:
    """Number of distinct cycles per length.

    Counts are exact unless ``truncated``: more than ``cap`` cycles exist, or
    ``stop_on_repeat`` was set and some length reached two.
    """
    if cap < 1:
        raise ValueError("cap must be >= 1")
    counts: Counter = Counter()
    total = 0
    truncated = False
    for cyc in iter_cycles(G.adj):
        if total == cap:
            truncated = True
            break
        L = len(cyc)
        counts[L] += 1
        total += 1
        if stop_on_repeat and counts[L] >= 2:
            truncated = True
            break
    return CycleCensus(dict(sorted(counts.items())), truncated, total)


def has_repeated_cycle_length(G: Graph, node_budget: int = DEFAULT_NODE_BUDGET) -> Optional[Witness]:
    """Two distinct cycles of equal length, or ``None``.

    A repeat-free graph has at most ``n - 2`` cycles (one per length), so the
    scan stops after ``n - 1`` cycles at the latest.
    """
    first: Dict[int, List[int]] = {}
    budget = _Budget(node_budget)
    for cyc in iter_cycles(G.adj, budget):
        L = len(cyc)
        if L in first:
            return Witness(WitnessKind.REPEATED_LENGTH, cycles=[first[L], cyc])
        first[L] = cyc
    return None


def _cyclomatic(adj: Sequence[int]) -> int:
    m2 = 0
    seen = 0
    comps = 0
    verts = 0
    for v, row in enumerate(adj):
        if row:
            m2 += row.bit_count()
            verts += 1
    for v, row in enumerate(adj):
        if not row or seen >> v & 1:
            continue
        comps += 1
        comp = 1 << v
        frontier = comp
        while frontier:
            nxt = 0
            f = frontier
            while f:
                low = f & -f
                nxt |= adj[low.bit_length() - 1]
                f ^= low
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
    return m2 // 2 - verts + comps


def _find_cycle(adj: Sequence[int]) -> Optional[List[int]]:
    n = len(adj)
    parent = [-1] * n
    state = [0] * n  # 0 new, 1 on stack, 2 done
    for r in range(n):
        if state[r] or not adj[r]:
            continue
        stack = [(r, adj[r])]
        state[r] = 1
        while stack:
            v, cand = stack[-1]
            if not cand:
                stack.pop()
                state[v] = 2
                continue
            low = cand & -cand
            stack[-1] = (v, cand ^ low)
            u = low.bit_length() - 1
            if u == parent[v]:
                continue
            if state[u] == 1:
                cyc = [u]
                for w, _ in reversed(stack):
                    if w == u:
                        break
                    cyc.append(w)
                return cyc
            if state[u] == 0:
                parent[u] = v
                state[u] = 1
                stack.append((u, adj[u]))
    return None


def _paths_by_length(adj: Sequence[int], u: int, v: int, budget: _Budget) -> Iterator[List[int]]:
    """Simple ``u``-``v`` paths in order of increasing length (iterative deepening)."""
    n = len(adj)
    for L in range(2, n):
        path = [u]
        stack = [adj[u]]
        on_path = 1 << u
        found_longer = False
        while stack:
            cand = stack[-1]
            if not cand:
                stack.pop()
                on_path &= ~(1 << path.pop())
                continue
            low = cand & -cand
            stack[-1] = cand ^ low
            x = low.bit_length() - 1
            budget.tick("edge-disjoint cycle search")
            if x == v:
                if len(path) == L:
                    yield path + [v]
                continue
            if len(path) == L:
                found_longer = True
                continue
            path.append(x)
            on_path |= low
            stack.append(adj[x] & ~on_path)
        if not found_longer:
            return


def _remove_cycle(adj: List[int], cyc: Sequence[int]) -> List[int]:
    adj = list(adj)
    k = len(cyc)
    for i in range(k):
        a, b = cyc[i], cyc[(i + 1) % k]
        adj[a] &= ~(1 << b)
        adj[b] &= ~(1 << a)
    return adj


def _pack_cycles(adj: List[int], k: int, budget: _Budget) -> Optional[List[List[int]]]:
    if k == 0:
        return []
    adj = two_core(adj)
    budget.tick("edge-disjoint cycle search")
    if _cyclomatic(adj) < k:
        return None
    if k == 1:
        return [_find_cycle(adj)]
    u = next(v for v, row in enumerate(adj) if row)
    v = (adj[u] & -adj[u]).bit_length() - 1
    rest = list(adj)
    rest[u] &= ~(1 << v)
    rest[v] &= ~(1 << u)
    for path in _paths_by_length(rest, u, v, budget):
        sub = _pack_cycles(_remove_cycle(adj, path), k - 1, budget)
        if sub is not None:
            return [path] + sub
    return _pack_cycles(rest, k, budget)


def has_k_edge_disjoint_cycles(
    G: Graph, k: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> Optional[Witness]:
    """``k`` pairwise edge-disjoint cycles, or ``None``.

    Exact branching on the smallest edge of the 2-core: either it is unused,
    or some cycle through it (shortest first) belongs to the packing.  The
    cyclomatic number bounds the packing size and cuts most branches.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    res = _pack_cycles(list(G.adj), k, _Budget(node_budget))
    if res is None:
        return None
    return Witness(WitnessKind.EDGE_DISJOINT_CYCLES, cycles=res)


# triangles ----------------------------------------------------------------

def triangles(G: Graph) -> List[Tuple[int, int, int]]:
    """All triangles ``(a, b, c)`` with ``a < b < c``, lexicographic."""
    out = []
    adj = G.adj
    for a in range(G.n):
        up = adj[a] >> (a + 1) << (a + 1)
        for b in bits(up):
            for c in bits(adj[b] & up & ~((1 << (b + 1)) - 1)):
                out.append((a, b, c))
    return out


def _greedy_packing(adj: Sequence[int], k: int) -> List[Tuple[int, int, int]]:
    """Greedy edge-disjoint triangles straight off the bitsets, stopping at ``k``."""
    rem = list(adj)
    out: List[Tuple[int, int, int]] = []
    for a in range(len(rem)):
        up = rem[a] >> (a + 1) << (a + 1)
        while up:
            b = (up & -up).bit_length() - 1
            up &= up - 1
            common = rem[a] & rem[b] & ~((1 << (b + 1)) - 1)
            if not common:
                continue
            c = (common & -common).bit_length() - 1
            for u, v in ((a, b), (a, c), (b, c)):
                rem[u] &= ~(1 << v)
                rem[v] &= ~(1 << u)
            up &= ~(1 << c)
            out.append((a, b, c))
            if len(out) >= k:
                return out
    return out


def _triangle_masks(G: Graph) -> Tuple[List[int], List[Tuple[int, int, int]]]:
    """Triangles as masks over edge slots ``u * n + v`` (``u < v``).

    Slot order is lexicographic edge order, so the lexicographic triangle
    list is already sorted by its edges.
    """
    n = G.n
    tris = triangles(G)
    masks = [(1 << (a * n + b)) | (1 << (a * n + c)) | (1 << (b * n + c)) for a, b, c in tris]
    return masks, tris


def _transversal_bound(rem: Sequence[int]) -> int:
    """Size of a greedy edge set hitting every triangle in ``rem``."""
    rem = list(rem)
    size = 0
    while rem:
        cnt: Counter = Counter()
        for t in rem:
            x = t
            while x:
                low = x & -x
                cnt[low] += 1
                x ^= low
        e, _ = max(cnt.items(), key=lambda kv: (kv[1], -kv[0]))
        rem = [t for t in rem if not t & e]
        size += 1
    return size


class _Packer:
    def __init__(self, masks: List[int], n: int, budget: _Budget, target: Optional[int]):
        self.n = n
        self.budget = budget
        self.target = target
        self.best: List[int] = []
        self.global_ub = 0
        self.masks = masks

    def greedy(self, rem: Sequence[int]) -> List[int]:
        used = 0
        out = []
        for t in rem:
            if not t & used:
                out.append(t)
                used |= t
        return out

    def done(self) -> bool:
        b = len(self.best)
        return b >= self.global_ub or (self.target is not None and b >= self.target)

    def ub(self, rem: List[int]) -> int:
        union = 0
        for t in rem:
            union |= t
        u = min(len(rem), union.bit_count() // 3)
        # a triangle uses two edges at each of its vertices
        deg = [0] * self.n
        x = union
        while x:
            low = x & -x
            a, b = divmod(low.bit_length() - 1, self.n)
            deg[a] += 1
            deg[b] += 1
            x ^= low
        u = min(u, sum(d // 2 for d in deg) // 3)
        # unpacked edges keep every vertex's degree parity, so they number at
        # least half the odd vertices, are congruent to |union| mod 3, and an
        # even leftover graph is empty or has at least three edges
        size = union.bit_count()
        odd = sum(d & 1 for d in deg)
        left = (odd + 1) // 2
        if odd == 0 and size % 3:
            left = 3
        while (size - left) % 3:
            left += 1
        return min(u, (size - left) // 3)

    def run(self, rem: List[int], chosen: List[int]) -> None:
        self.budget.tick("triangle packing")
        if len(chosen) > len(self.best):
            self.best = list(chosen)
            if self.done():
                return
        if not rem:
            return
        need = len(self.best) - len(chosen)
        if self.ub(rem) <= need:
            return
        if len(rem) > 3 and _transversal_bound(rem) <= need:
            return
        t = rem[0]
        chosen.append(t)
        self.run([r for r in rem[1:] if not r & t], chosen)
        chosen.pop()
        if self.done():
            return
        self.run(rem[1:], chosen)

    def solve(self) -> List[int]:
        masks = self.masks
        self.best = self.greedy(masks)
        self.global_ub = self.ub(masks)
        if masks and not self.done():
            self.global_ub = min(self.global_ub, _transversal_bound(masks))
        if not self.done():
            self.run(list(masks), [])
        return self.best


def _packing_result(G: Graph, target: Optional[int], node_budget: int) -> Tuple[int, Witness, int]:
    masks, tris = _triangle_masks(G)
    budget = _Budget(node_budget)
    packer = _Packer(masks, G.n, budget, target)
    best = packer.solve()
    pos = {m: i for i, m in enumerate(masks)}
    chosen = sorted(tris[pos[m]] for m in best)
    return len(chosen), Witness(WitnessKind.TRIANGLE_PACKING, packing=chosen), budget.used


def triangle_packing(G: Graph, node_budget: int = DEFAULT_NODE_BUDGET) -> Tuple[int, Witness]:
    """Maximum number of pairwise edge-disjoint triangles, with a packing attaining it.

    Branch and bound over triangles in lexicographic edge order (include
    first, then exclude); greedy packing as incumbent; bounds from the
    number of covered edges, per-vertex degrees and a greedy edge transversal.
    """
    nu, wit, _ = _packing_result(G, None, node_budget)
    return nu, wit


def has_k_edge_disjoint_triangles(
    G: Graph, k: int, node_budget: int = DEFAULT_NODE_BUDGET
) -> Optional[Witness]:
    """Decision version of :func:`triangle_packing` that stops at ``k``."""
    if k <= 0:
        return Witness(WitnessKind.TRIANGLE_PACKING)
    quick = _greedy_packing(G.adj, k)
    if len(quick) >= k:
        return Witness(WitnessKind.TRIANGLE_PACKING, packing=sorted(quick))
    nu, wit, _ = _packing_result(G, k, node_budget)
    if nu >= k:
        wit.packing = wit.packing[:k]
        return wit
    return None


def triangle_packing_stats(G: Graph, node_budget: int = DEFAULT_NODE_BUDGET) -> Tuple[int, Witness, int]:
    """Like :func:`triangle_packing` but also returns the number of nodes explored."""
    return _packing_result(G, None, node_budget)


# matchings and fans -----------------------------------------------------------

def _blossom(n: int, nbrs: Sequence[Sequence[int]]) -> List[int]:
    """Edmonds' blossom algorithm; returns the ``match`` array (-1 = unmatched)."""
    match = [-1] * n
    # greedy start, lexicographic
    for v in range(n):
        if match[v] == -1:
            for u in nbrs[v]:
                if match[u] == -1 and u != v:
                    match[v], match[u] = u, v
                    break

    def find_path(root: int) -> List[int]:
        used = [False] * n
        p = [-1] * n
        base = list(range(n))
        used[root] = True
        q = [root]
        qh = 0

        def lca(a: int, b: int) -> int:
            seen = [False] * n
            while True:
                a = base[a]
                seen[a] = True
                if match[a] == -1:
                    break
                a = p[match[a]]
            while True:
                b = base[b]
                if seen[b]:
                    return b
                b = p[match[b]]

        def mark(v: int, b: int, child: int, blossom: List[bool]) -> None:
            while base[v] != b:
                blossom[base[v]] = blossom[base[match[v]]] = True
                p[v] = child
                child = match[v]
                v = p[match[v]]

        while qh < len(q):
            v = q[qh]
            qh += 1
            for to in nbrs[v]:
                if base[v] == base[to] or match[v] == to:
                    continue
                if to == root or (match[to] != -1 and p[match[to]] != -1):
                    cb = lca(v, to)
                    blossom = [False] * n
                    mark(v, cb, to, blossom)
                    mark(to, cb, v, blossom)
                    for i in range(n):
                        if blossom[base[i]]:
                            base[i] = cb
                            if not used[i]:
                                used[i] = True
                                q.append(i)
                elif p[to] == -1:
                    p[to] = v
                    if match[to] == -1:
                        return p_path(p, to)
                    used[match[to]] = True
                    q.append(match[to])
        return []

    def p_path(p: List[int], end: int) -> List[int]:
        out = [end]
        v = end
        while True:
            pv = p[v]
            out.append(pv)
            nxt = match[pv]
            if nxt == -1:
                break
            out.append(nxt)
            v = nxt
        return out

    for root in range(n):
        if match[root] != -1:
            continue
        path = find_path(root)
        # path alternates: end, p(end), match(p(end)), ... ending at root
        for i in range(0, len(path) - 1, 2):
            a, b = path[i], path[i + 1]
            match[a], match[b] = b, a
    return match


def maximum_matching(G: Graph) -> List[Tuple[int, int]]:
    """A maximum matching as a sorted edge list."""
    nbrs = [bits(row) for row in G.adj]
    match = _blossom(G.n, nbrs)
    return sorted((v, u) for v, u in enumerate(match) if u > v)


def matching_number(G: Graph) -> int:
    return len(maximum_matching(G))


def matching_number_exhaustive(G: Graph) -> int:
    """Exact matching number by memoised branching over vertex subsets (n <= 20)."""
    adj = G.adj
    memo: Dict[int, int] = {0: 0}

    def f(mask: int) -> int:
        if mask in memo:
            return memo[mask]
        low = mask & -mask
        v = low.bit_length() - 1
        rest = mask ^ low
        best = f(rest)
        cand = adj[v] & rest
        while cand:
            lu = cand & -cand
            best = max(best, 1 + f(rest ^ lu))
            cand ^= lu
        memo[mask] = best
        return best

    return f((1 << G.n) - 1)


def max_fan(G: Graph) -> Tuple[int, Witness]:
    """Largest ``k`` with ``F_k`` a subgraph: max matching number over neighbourhoods.

    The witness centre is the smallest vertex attaining the maximum.
    """
    from .graph import induced_subgraph

    best_k = 0
    best_v = None
    best_edges: List[Tuple[int, int]] = []
    for v in range(G.n):
        nb = bits(G.adj[v])
        if len(nb) < 2 or best_k >= len(nb) // 2:
            continue
        sub = induced_subgraph(G, nb)
        mm = maximum_matching(sub)
        if len(mm) > best_k:
            best_k = len(mm)
            best_v = v
            best_edges = sorted((nb[a], nb[b]) for a, b in mm)
    return best_k, Witness(WitnessKind.FAN, fan_center=best_v, matching_edges=best_edges)
