"""Spectral radius, Perron vectors, equitable partitions and exact quotients."""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import canon
from .errors import EmptyGraph, NoConvergence, NoRealRootFound, NotEquitable, ZeroVector
from .graph import Graph, bits, components, induced_subgraph

DEFAULT_TOL = 1e-10
COMPARE_TOL = 1e-8
MAX_ITER = 10**6
CHECK_EVERY = 50
TOL_ENV = "SPEXGRAPH_TOL"


def default_tol() -> float:
    env = os.environ.get(TOL_ENV)
    if env:
        try:
            val = float(env)
            if val > 0:
                return val
        except ValueError:
            pass
    return DEFAULT_TOL


def adjacency_matrix(G: Graph) -> np.ndarray:
    n = G.n
    nb = (n + 7) // 8
    buf = b"".join(row.to_bytes(nb, "little") for row in G.adj)
    flat = np.unpackbits(np.frombuffer(buf, dtype=np.uint8), bitorder="little")
    return flat.reshape(n, nb * 8)[:, :n].astype(float)


@dataclass(frozen=True)
class SpectrumResult:
    rho: float
    perron: Tuple[float, ...]
    iterations: int
    residual: float

    def to_dict(self, digits: int = 12) -> dict:
        return {
            "rho": float(f"{self.rho:.{digits}g}"),
            "perron": [float(f"{x:.{digits}g}") for x in self.perron],
            "iterations": self.iterations,
            "residual": self.residual,
        }


def _power(A: np.ndarray, tol: float, max_iter: int) -> Tuple[float, np.ndarray, int, float]:
    """Power iteration on ``A + I`` for a connected adjacency block."""
    n = A.shape[0]
    if n == 1:
        return 0.0, np.ones(1), 0, 0.0
    # start from the degree vector: already close on most graphs
    x = A.sum(axis=1) + 1.0
    x /= x.max()
    best = np.inf
    it = 0
    while it < max_iter:
        for _ in range(CHECK_EVERY):
            y = A @ x
            y += x
            x = y / y.max()
        it += CHECK_EVERY
        Ax = A @ x
        rho = float(x @ Ax) / float(x @ x)
        res = float(np.abs(Ax - rho * x).max())
        best = min(best, res)
        if res <= tol:
            return rho, x, it, res
    raise NoConvergence(f"power iteration hit {max_iter} iterations", best_residual=best)


def spectral_radius(G: Graph, tol: Optional[float] = None, max_iter: int = MAX_ITER) -> SpectrumResult:
    """Largest adjacency eigenvalue with a Perron vector normalised to max 1.

    Each component is iterated separately; for a disconnected graph the
    vector is supported on the first component attaining the maximum.
    """
    tol = default_tol() if tol is None else tol
    if tol <= 0:
        raise ValueError("tol must be positive")
    best = None
    for comp in components(G):
        if len(comp) == 1:
            cand = (0.0, np.ones(1), 0, 0.0)
        else:
            sub = induced_subgraph(G, comp)
            cand = _power(adjacency_matrix(sub), tol, max_iter)
        if best is None or cand[0] > best[0][0] + COMPARE_TOL:
            best = (cand, comp)
    (rho, x, it, res), comp = best
    vec = np.zeros(G.n)
    vec[comp] = x
    return SpectrumResult(rho, tuple(float(v) for v in vec), it, res)


def rho_fast(G: Graph) -> float:
    """Spectral radius from a dense symmetric eigensolver; used for screening."""
    if G.m == 0:
        return 0.0
    return float(np.linalg.eigvalsh(adjacency_matrix(G))[-1])


def rayleigh_quotient(G: Graph, x: Sequence[float]) -> float:
    """``x^T A x / x^T x``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (G.n,):
        raise ValueError(f"vector length {x.shape} does not match order {G.n}")
    denom = float(x @ x)
    if denom == 0.0:
        raise ZeroVector("Rayleigh quotient of the zero vector")
    num = 0.0
    for v, row in enumerate(G.adj):
        for u in bits(row):
            num += x[v] * x[u]
    return num / denom


# equitable partitions ---------------------------------------------------------

@dataclass(frozen=True)
class Partition:
    cells: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        seen = set()
        for c in self.cells:
            if not c:
                raise ValueError("empty cell")
            for v in c:
                if v in seen:
                    raise ValueError(f"vertex {v} in two cells")
                seen.add(v)

    @classmethod
    def of(cls, cells: Sequence[Sequence[int]]) -> "Partition":
        return cls(tuple(tuple(sorted(c)) for c in cells))

    @classmethod
    def unit(cls, n: int) -> "Partition":
        return cls((tuple(range(n)),))

    def sizes(self) -> List[int]:
        return [len(c) for c in self.cells]

    def check_cover(self, n: int) -> None:
        covered = sorted(v for c in self.cells for v in c)
        if covered != list(range(n)):
            raise ValueError(f"partition does not cover 0..{n - 1} exactly once")

    def to_list(self) -> List[List[int]]:
        return [list(c) for c in self.cells]


@dataclass(frozen=True)
class QuotientMatrix:
    entries: Tuple[Tuple[int, ...], ...]
    cell_sizes: Tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.entries)

    def to_list(self) -> List[List[int]]:
        return [list(r) for r in self.entries]


def refine_equitable(G: Graph, initial: Optional[Partition] = None) -> Partition:
    """Coarsest equitable partition refining ``initial`` (unit partition by default)."""
    initial = Partition.unit(G.n) if initial is None else initial
    initial.check_cover(G.n)
    return Partition(tuple(tuple(c) for c in canon.equitable_cells(G.adj, initial.cells)))


def quotient(G: Graph, p: Partition) -> QuotientMatrix:
    """Integer quotient matrix ``b_ij``; raises NotEquitable with the offending pair."""
    p.check_cover(G.n)
    masks = []
    for c in p.cells:
        m = 0
        for v in c:
            m |= 1 << v
        masks.append(m)
    rows = []
    for i, c in enumerate(p.cells):
        row = []
        for j, mj in enumerate(masks):
            ref = (G.adj[c[0]] & mj).bit_count()
            for v in c[1:]:
                got = (G.adj[v] & mj).bit_count()
                if got != ref:
                    raise NotEquitable(
                        f"cell {i}: vertices {c[0]} and {v} have {ref} and {got} "
                        f"neighbours in cell {j}"
                    )
            row.append(ref)
        rows.append(tuple(row))
    return QuotientMatrix(tuple(rows), tuple(len(c) for c in p.cells))


def is_equitable(G: Graph, p: Partition) -> bool:
    try:
        quotient(G, p)
    except NotEquitable:
        return False
    return True


# exact polynomials -------------------------------------------------------------

@dataclass(frozen=True)
class Polynomial:
    """Monic integer polynomial, coefficients from the leading term down."""

    coefficients: Tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in self.coefficients:
            acc = acc * x + c
        return acc

    def __str__(self) -> str:
        terms = []
        d = self.degree
        for i, c in enumerate(self.coefficients):
            if c == 0:
                continue
            e = d - i
            mag = abs(c)
            body = "" if (mag == 1 and e > 0) else str(mag)
            if e >= 1:
                body += "x" if e == 1 else f"x^{e}"
            sign = "-" if c < 0 else "+"
            terms.append((sign, body))
        if not terms:
            return "0"
        first = ("-" if terms[0][0] == "-" else "") + terms[0][1]
        return " ".join([first] + [f"{s} {b}" for s, b in terms[1:]])


def char_poly(B) -> Polynomial:
    """``det(xI - B)`` with exact integer arithmetic (Berkowitz, division free)."""
    M = [list(r) for r in (B.entries if isinstance(B, QuotientMatrix) else B)]
    n = len(M)
    if any(len(r) != n for r in M):
        raise ValueError("matrix must be square")
    p = [1]
    for r in range(1, n + 1):
        a = M[r - 1][r - 1]
        R = M[r - 1][: r - 1]
        v = [M[i][r - 1] for i in range(r - 1)]
        col = [1, -a]
        for _ in range(r - 1):
            col.append(-sum(x * y for x, y in zip(R, v)))
            v = [sum(M[i][j] * v[j] for j in range(r - 1)) for i in range(r - 1)]
        p = [sum(col[i - j] * p[j] for j in range(min(i, r - 1) + 1)) for i in range(r + 1)]
    return Polynomial(tuple(p))


def _sturm(coeffs: Sequence[int]) -> List[List[Fraction]]:
    def rem(a, b):
        a = list(a)
        while len(a) >= len(b) and any(a):
            f = a[0] / b[0]
            for i in range(len(b)):
                a[i] -= f * b[i]
            a.pop(0)
        while a and a[0] == 0:
            a.pop(0)
        return a

    p0 = [Fraction(c) for c in coeffs]
    d = len(p0) - 1
    p1 = [c * (d - i) for i, c in enumerate(p0[:-1])]
    seq = [p0, p1]
    while len(seq[-1]) > 1:
        r = rem(seq[-2], seq[-1])
        if not r:
            break
        seq.append([-c for c in r])
    g = seq[-1]
    if len(g) > 1:
        # repeated roots: divide through by gcd(p, p') so counts stay valid at them
        seq = [quo(poly, g) for poly in seq]
    return seq


def quo(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    """Exact quotient of ``a`` by ``b`` (coefficients highest degree first)."""
    a = list(a)
    out = []
    while len(a) >= len(b):
        f = a[0] / b[0]
        out.append(f)
        for i in range(len(b)):
            a[i] -= f * b[i]
        a.pop(0)
    return out


def _variations(seq, x: Fraction) -> int:
    signs = []
    for poly in seq:
        acc = Fraction(0)
        for c in poly:
            acc = acc * x + c
        if acc:
            signs.append(acc > 0)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def max_real_root(p: Polynomial, tol: float = 1e-12) -> float:
    """Largest real root in ``[0, 1 + max|coefficient|]`` by Sturm-count bisection."""
    coeffs = p.coefficients
    if p.degree < 1:
        raise NoRealRootFound("constant polynomial")
    lead = coeffs[0]
    hi = Fraction(1) + max(Fraction(abs(c), abs(lead)) for c in coeffs)
    lo = Fraction(0)
    seq = _sturm(coeffs)
    top = _variations(seq, hi)
    if _variations(seq, lo) - top == 0:
        if p(0) == 0:
            return 0.0
        raise NoRealRootFound(f"no real root of {p} in [0, {float(hi)}]")
    step = Fraction(tol)
    while hi - lo > step:
        mid = (lo + hi) / 2
        if _variations(seq, mid) - top > 0:
            lo = mid
        elif p(mid) == 0:
            return float(mid)
        else:
            hi = mid
    return float((lo + hi) / 2)


# closed-form checks -----------------------------------------------------------

def triangle_count(G: Graph) -> int:
    total = 0
    for a in range(G.n):
        up = G.adj[a] >> (a + 1) << (a + 1)
        for b in bits(up):
            total += (G.adj[b] & up & ~((1 << (b + 1)) - 1)).bit_count()
    return total


@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    slack: float


def check_edge_triangle_bound(G: Graph, tol: float = COMPARE_TOL, rho: Optional[float] = None) -> BoundCheck:
    """``m >= rho^2 - 3t/rho``; slack is ``m - rho^2 + 3t/rho``."""
    if G.m == 0:
        raise EmptyGraph("edge-triangle bound needs at least one edge")
    r = spectral_radius(G).rho if rho is None else rho
    slack = G.m - r * r + 3 * triangle_count(G) / r
    return BoundCheck(slack >= -tol, slack)


def chvatal_hanson(beta: int, delta: int) -> int:
    """Maximum edges of a graph with matching number <= beta and max degree <= delta."""
    if beta < 1 or delta < 1:
        raise ValueError("beta and delta must be >= 1")
    return delta * beta + (delta // 2) * (beta // ((delta + 1) // 2))


# structural helpers for subdivision monotonicity ---------------------------------------

def internal_path_edges(G: Graph) -> List[Tuple[int, int]]:
    """Edges lying on an internal path.

    An internal path has every inner vertex of degree 2 and both ends of
    degree at least 3 (the ends may coincide).  A single edge between two
    vertices of degree >= 3 counts.
    """
    deg = G.degrees()
    out = []
    for u, v in G.edges():
        ok = True
        for start, prev in ((u, v), (v, u)):
            cur, back = start, prev
            steps = 0
            while deg[cur] == 2 and steps <= G.n:
                a, b = bits(G.adj[cur])
                cur, back = (b if a == back else a), cur
                steps += 1
            if deg[cur] < 3:
                ok = False
                break
        if ok:
            out.append((u, v))
    return out


def is_y_graph(G: Graph) -> bool:
    """A path with two pendant vertices attached at each end (order >= 6)."""
    if G.n < 6 or G.m != G.n - 1 or len(components(G)) != 1:
        return False
    deg = G.degrees()
    if sorted(deg).count(1) != 4 or deg.count(3) != 2 or any(d > 3 for d in deg):
        return False
    return all(sum(1 for u in bits(G.adj[v]) if deg[u] == 1) == 2 for v in range(G.n) if deg[v] == 3)
