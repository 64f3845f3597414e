"""Named, hereditary graph properties used by searches and enumeration pruning.

Every predicate here is closed under taking subgraphs, so in particular
under vertex deletion, which is what lets the generator prune by it.
Predicates are addressed by name so that worker processes and reports can
refer to them without shipping code.

Names:

``no-repeated-cycle-length``
    no two distinct cycles of equal length
``no-2-edge-disjoint-cycles``
    no two edge-disjoint cycles (also ``no-k-edge-disjoint-cycles``)
``gamma-k-free``
    fewer than ``k`` edge-disjoint triangles
``fan-k-free``
    no ``k`` triangles sharing a vertex
``matching-le-B-degree-le-D``
    matching number at most ``B`` and maximum degree at most ``D``
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Optional

from .detectors import (
    Witness,
    has_k_edge_disjoint_cycles,
    has_k_edge_disjoint_triangles,
    has_repeated_cycle_length,
    matching_number,
    max_fan,
)
from .errors import UnknownPredicate
from .graph import Graph

_PATTERNS = [
    (re.compile(r"^no-repeated-cycle-length$"), "repeated"),
    (re.compile(r"^no-(\d+)-edge-disjoint-cycles$"), "cycles"),
    (re.compile(r"^gamma-(\d+)-free$"), "gamma"),
    (re.compile(r"^fan-(\d+)-free$"), "fan"),
    (re.compile(r"^matching-le-(\d+)-degree-le-(\d+)$"), "bounded"),
]


@dataclass(frozen=True)
class Predicate:
    name: str
    kind: str
    k: int = 0
    d: int = 0

    def violation(self, G: Graph) -> Optional[Witness]:
        """A certificate that ``G`` violates the property, or ``None``.

        The bounded matching/degree property has no witness type; it returns
        ``None`` and callers should use :meth:`__call__`.
        """
        if self.kind == "repeated":
            return has_repeated_cycle_length(G)
        if self.kind == "cycles":
            return has_k_edge_disjoint_cycles(G, self.k)
        if self.kind == "gamma":
            return has_k_edge_disjoint_triangles(G, self.k)
        if self.kind == "fan":
            k, wit = max_fan(G)
            if k >= self.k:
                wit.matching_edges = wit.matching_edges[: self.k]
                return wit
            return None
        return None

    def __call__(self, G: Graph) -> bool:
        if self.kind == "bounded":
            return G.max_degree() <= self.d and matching_number(G) <= self.k
        if self.kind == "fan":
            return max_fan(G)[0] < self.k
        return self.violation(G) is None


def parse_predicate(name: str) -> Predicate:
    for pat, kind in _PATTERNS:
        mt = pat.match(name)
        if not mt:
            continue
        nums = [int(g) for g in mt.groups()]
        if kind == "repeated":
            return Predicate(name, kind)
        if kind == "bounded":
            return Predicate(name, kind, k=nums[0], d=nums[1])
        if nums[0] < 1:
            raise UnknownPredicate(f"{name}: k must be >= 1")
        return Predicate(name, kind, k=nums[0])
    raise UnknownPredicate(
        f"unknown predicate {name!r}; expected no-repeated-cycle-length, "
        "no-2-edge-disjoint-cycles, gamma-<k>-free or fan-<k>-free"
    )


def gamma_free(k: int) -> str:
    return f"gamma-{k}-free"


def fan_free(k: int) -> str:
    return f"fan-{k}-free"


PREDICATE_NAMES = (
    "no-repeated-cycle-length",
    "no-2-edge-disjoint-cycles",
    "gamma-<k>-free",
    "fan-<k>-free",
)
