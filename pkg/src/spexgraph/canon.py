"""Canonical labelling by colour refinement plus individualisation search.

A simplified McKay scheme: refine to the coarsest equitable partition,
branch on the first non-singleton cell, keep the largest leaf code and
prune sibling branches with automorphisms found along the way.  Exact for
every input; fast enough for the n <= 10 enumeration workloads.
"""

from __future__ import annotations

from typing import List, Optional, Sequence, Tuple


def _mask(vs: Sequence[int]) -> int:
    m = 0
    for v in vs:
        m |= 1 << v
    return m


def refine(cells: List[List[int]], adj: Sequence[int], queue: List[int]) -> List[List[int]]:
    """Split ``cells`` until equitable, using splitter masks from ``queue``.

    Every cell created is pushed as a new splitter, so the fixed point is the
    coarsest equitable refinement.  New sub-cells are ordered by neighbour
    count, which keeps the result independent of vertex labels.
    """
    n = len(adj)
    ncells = len(cells)
    qi = 0
    while qi < len(queue) and ncells < n:
        w = queue[qi]
        qi += 1
        splits = None
        for ci, cell in enumerate(cells):
            if len(cell) == 1:
                continue
            first = (adj[cell[0]] & w).bit_count()
            for idx in range(1, len(cell)):
                if (adj[cell[idx]] & w).bit_count() != first:
                    groups = {first: cell[:idx]}
                    for x in cell[idx:]:
                        cx = (adj[x] & w).bit_count()
                        if cx in groups:
                            groups[cx].append(x)
                        else:
                            groups[cx] = [x]
                    if splits is None:
                        splits = {}
                    splits[ci] = [groups[c] for c in sorted(groups)]
                    break
        if splits is None:
            continue
        out = []
        for ci, cell in enumerate(cells):
            parts = splits.get(ci)
            if parts is None:
                out.append(cell)
                continue
            for part in parts:
                out.append(part)
                m = 0
                for x in part:
                    m |= 1 << x
                queue.append(m)
        cells = out
        ncells = len(cells)
    return cells


def _leaf_code(adj: Sequence[int], perm: Sequence[int]) -> int:
    n = len(perm)
    pos = [0] * n
    for i, v in enumerate(perm):
        pos[v] = i
    code = 0
    for v in perm:
        row = 0
        a = adj[v]
        while a:
            low = a & -a
            row |= 1 << pos[low.bit_length() - 1]
            a ^= low
        code = (code << n) | row
    return code


def _orbit_hit(w: int, tried: List[int], gens: List[Tuple[int, ...]]) -> bool:
    """True if ``w`` lies in the orbit of some tried vertex under ``gens``."""
    if not gens:
        return False
    seen = set(tried)
    stack = list(tried)
    while stack:
        x = stack.pop()
        for g in gens:
            y = g[x]
            if y not in seen:
                if y == w:
                    return True
                seen.add(y)
                stack.append(y)
    return w in seen


class _Search:
    __slots__ = ("adj", "n", "best_code", "best_perm", "best_path", "first_code", "first_perm",
                 "first_path", "autos", "jump")

    def __init__(self, adj: Sequence[int], n: int):
        self.adj = adj
        self.n = n
        self.best_code = -1
        self.best_perm: Optional[List[int]] = None
        self.first_code = -1
        self.first_perm: Optional[List[int]] = None
        self.best_path: List[int] = []
        self.first_path: List[int] = []
        self.autos: List[Tuple[int, ...]] = []
        # depth to unwind to after a leaf equivalent to an explored one
        self.jump: Optional[int] = None

    def _record_auto(self, a: Sequence[int], b: Sequence[int]) -> None:
        gamma = [0] * self.n
        for x, y in zip(a, b):
            gamma[x] = y
        g = tuple(gamma)
        if any(i != j for i, j in enumerate(g)):
            self.autos.append(g)

    @staticmethod
    def _diverge(a: Sequence[int], b: Sequence[int]) -> int:
        i = 0
        while i < len(a) and i < len(b) and a[i] == b[i]:
            i += 1
        return i

    def leaf(self, cells: List[List[int]], path: List[int]) -> None:
        perm = [c[0] for c in cells]
        code = _leaf_code(self.adj, perm)
        if self.first_perm is None:
            self.first_perm = self.best_perm = perm
            self.first_code = self.best_code = code
            self.first_path = self.best_path = path
            return
        # an equivalent leaf means the subtree below the divergence point is an
        # automorphic image of one already searched
        if code == self.first_code:
            self._record_auto(self.first_perm, perm)
            self.jump = self._diverge(path, self.first_path)
        elif code == self.best_code:
            self._record_auto(self.best_perm, perm)
            self.jump = self._diverge(path, self.best_path)
        elif code > self.best_code:
            self.best_code = code
            self.best_perm = perm
            self.best_path = path

    def run(self, cells: List[List[int]], prefix: List[int]) -> None:
        if len(cells) == self.n:
            self.leaf(cells, prefix)
            return
        target = 0
        while len(cells[target]) == 1:
            target += 1
        cell = cells[target]
        tried: List[int] = []
        for w in cell:
            if tried:
                gens = [g for g in self.autos if all(g[p] == p for p in prefix)]
                if _orbit_hit(w, tried, gens):
                    continue
            tried.append(w)
            rest = [x for x in cell if x != w]
            child = cells[:target] + [[w], rest] + cells[target + 1:]
            self.run(refine(child, self.adj, [1 << w]), prefix + [w])
            if self.jump is not None:
                if self.jump < len(prefix):
                    return
                self.jump = None


def canonical_labeling(
    adj: Sequence[int], colouring: Optional[Sequence[Sequence[int]]] = None
) -> Tuple[List[int], int, List[Tuple[int, ...]]]:
    """Return ``(perm, code, automorphisms)``.

    ``perm[i]`` is the original vertex placed at canonical position ``i``.
    ``code`` is an integer certificate; two graphs (with matching ordered
    colourings) are isomorphic iff their codes are equal.  ``automorphisms``
    is whatever the pruned search happened to discover, not a full
    generating set.
    """
    n = len(adj)
    if n == 0:
        return [], 0, []
    if colouring is None:
        cells = [list(range(n))]
    else:
        cells = [list(c) for c in colouring if len(c)]
    cells = refine(cells, adj, [_mask(c) for c in cells])
    s = _Search(adj, n)
    s.run(cells, [])
    return s.best_perm, s.best_code, s.autos


def equitable_cells(adj: Sequence[int], cells: Sequence[Sequence[int]]) -> List[List[int]]:
    """Coarsest equitable refinement of ``cells`` (each output cell sorted)."""
    out = refine([list(c) for c in cells], adj, [_mask(c) for c in cells])
    return [sorted(c) for c in out]
