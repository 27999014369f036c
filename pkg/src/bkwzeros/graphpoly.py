"""Exact Tutte polynomials of small multigraphs and the Steele polynomial.

The Steele polynomial is

    S(G; t) = (1 - t)/t * T_x(G; 1/t, 1/(1-t)) / T(G; 1/t, 1/(1-t)),

a polynomial of degree at most |E| whose integral over [0, 1] is the
expected length of a minimum spanning tree under i.i.d. uniform edge
lengths.
"""

from __future__ import annotations

import itertools
from collections import defaultdict, deque
from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Iterable, Iterator

TUTTE_EDGE_CAP = 16
ORACLE_EDGE_CAP = 12


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Multigraph:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                raise GraphError(f"edge ({u}, {v}) out of range for {self.n_vertices} vertices")
        object.__setattr__(self, "edges", edges)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def is_connected(self) -> bool:
        if self.n_vertices <= 1:
            return True
        adj = _adjacency(self.n_vertices, self.edges)
        seen = {0}
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return len(seen) == self.n_vertices

    def to_dict(self) -> dict:
        return {"n_vertices": self.n_vertices, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_dict(cls, d: dict) -> "Multigraph":
        try:
            return cls(int(d["n_vertices"]), tuple(tuple(e) for e in d["edges"]))
        except (KeyError, TypeError) as exc:
            raise GraphError(f"malformed graph JSON: {exc}") from exc


def cycle_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path_graph(m: int) -> Multigraph:
    """Path with ``m`` edges."""
    return Multigraph(m + 1, tuple((i, i + 1) for i in range(m)))


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple(itertools.combinations(range(n), 2)))


def theta_graph(a: int, b: int, c: int) -> Multigraph:
    """Two poles joined by internally disjoint paths with ``a``, ``b``, ``c`` edges."""
    edges = []
    nv = 2
    for length in (a, b, c):
        prev = 0
        for _ in range(length - 1):
            edges.append((prev, nv))
            prev = nv
            nv += 1
        edges.append((prev, 1))
    return Multigraph(nv, tuple(edges))


def _adjacency(n: int, edges) -> list[list[int]]:
    adj: list[list[int]] = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    return adj


class BivarIntPoly:
    """Sparse integer polynomial ``sum c[a, b] x^a y^b``."""

    __slots__ = ("terms",)

    def __init__(self, terms: dict[tuple[int, int], int] | None = None):
        self.terms = {k: int(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def one(cls) -> "BivarIntPoly":
        return cls({(0, 0): 1})

    def __add__(self, other: "BivarIntPoly") -> "BivarIntPoly":
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, 0) + v
        return BivarIntPoly(out)

    def shift(self, da: int = 0, db: int = 0) -> "BivarIntPoly":
        """Multiply by ``x**da * y**db``."""
        return BivarIntPoly({(a + da, b + db): v for (a, b), v in self.terms.items()})

    def __eq__(self, other) -> bool:
        return isinstance(other, BivarIntPoly) and self.terms == other.terms

    def __hash__(self) -> int:
        return hash(frozenset(self.terms.items()))

    def __call__(self, x, y):
        return sum(v * x ** a * y ** b for (a, b), v in self.terms.items())

    def __repr__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for (a, b), v in sorted(self.terms.items(), reverse=True):
            mono = "*".join(s for s in (f"x^{a}" if a > 1 else "x" if a else "",
                                        f"y^{b}" if b > 1 else "y" if b else "") if s)
            parts.append(f"{v}*{mono}" if mono and v != 1 else mono or str(v))
        return " + ".join(parts)

    def to_list(self) -> list[list[int]]:
        """Sorted ``[a, b, coeff]`` triples."""
        return [[a, b, v] for (a, b), v in sorted(self.terms.items())]


def tutte_partial_x(T: BivarIntPoly) -> BivarIntPoly:
    return BivarIntPoly({(a - 1, b): a * v for (a, b), v in T.terms.items() if a})


# -- deletion-contraction ---------------------------------------------------

def _canonical(n: int, edges: Iterable[tuple[int, int]]) -> tuple:
    """Relabel by a degree-guided BFS and sort the edge multiset."""
    edges = list(edges)
    adj = _adjacency(n, edges)
    deg = [len(a) for a in adj]
    order: list[int] = []
    label = [-1] * n
    for root in sorted(range(n), key=lambda v: (-deg[v], v)):
        if label[root] >= 0:
            continue
        label[root] = len(order)
        order.append(root)
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in sorted(set(adj[u]), key=lambda v: (-deg[v], v)):
                if label[w] < 0:
                    label[w] = len(order)
                    order.append(w)
                    queue.append(w)
    relabeled = sorted(tuple(sorted((label[u], label[v]))) for u, v in edges)
    degs = tuple(deg[v] for v in order)
    return (n, degs, tuple(relabeled))


def _connected_without(n: int, edges: list[tuple[int, int]], skip: int) -> bool:
    u0, v0 = edges[skip]
    adj: list[list[int]] = [[] for _ in range(n)]
    for k, (u, v) in enumerate(edges):
        if k != skip:
            adj[u].append(v)
            adj[v].append(u)
    seen = {u0}
    queue = deque([u0])
    while queue:
        u = queue.popleft()
        if u == v0:
            return True
        for w in adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return False


def _contract(n: int, edges: list[tuple[int, int]], k: int) -> tuple[int, list[tuple[int, int]]]:
    u, v = edges[k]
    keep, drop = min(u, v), max(u, v)

    def relabel(w: int) -> int:
        if w == drop:
            w = keep
        return w - 1 if w > drop else w

    return n - 1, [(relabel(a), relabel(b)) for j, (a, b) in enumerate(edges) if j != k]


def tutte(G: Multigraph, memo: dict | None = None) -> BivarIntPoly:
    """Tutte polynomial by memoized deletion-contraction.

    Raises
    ------
    GraphError
        If ``G`` is disconnected or has more than 16 edges.
    """
    if G.n_edges > TUTTE_EDGE_CAP:
        raise GraphError(f"{G.n_edges} edges exceeds the deletion-contraction cap of {TUTTE_EDGE_CAP}")
    if not G.is_connected():
        raise GraphError("graph must be connected")
    memo = {} if memo is None else memo

    def rec(n: int, edges: list[tuple[int, int]]) -> BivarIntPoly:
        loops = sum(1 for u, v in edges if u == v)
        edges = [(u, v) for u, v in edges if u != v]
        if not edges:
            return BivarIntPoly.one().shift(0, loops)
        key = _canonical(n, edges)
        hit = memo.get(key)
        if hit is None:
            if not _connected_without(n, edges, 0):
                hit = rec(*_contract(n, edges, 0)).shift(1, 0)
            else:
                hit = rec(n, edges[1:]) + rec(*_contract(n, edges, 0))
            memo[key] = hit
        return hit.shift(0, loops)

    return rec(G.n_vertices, list(G.edges))


def _rank(n: int, edges: Iterable[tuple[int, int]]) -> int:
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    r = 0
    for u, v in edges:
        ru, rv = find(u), find(v)
        if ru != rv:
            parent[ru] = rv
            r += 1
    return r


def tutte_oracle(G: Multigraph) -> BivarIntPoly:
    """Tutte polynomial from the rank-nullity expansion over all edge subsets."""
    if G.n_edges > ORACLE_EDGE_CAP:
        raise GraphError(f"{G.n_edges} edges exceeds the subset-expansion cap of {ORACLE_EDGE_CAP}")
    rE = _rank(G.n_vertices, G.edges)
    counts: dict[tuple[int, int], int] = defaultdict(int)
    m = G.n_edges
    for mask in range(1 << m):
        A = [G.edges[k] for k in range(m) if mask >> k & 1]
        rA = _rank(G.n_vertices, A)
        counts[(rE - rA, len(A) - rA)] += 1
    out: dict[tuple[int, int], int] = defaultdict(int)
    for (p, q), c in counts.items():
        # (x-1)^p (y-1)^q
        for i in range(p + 1):
            for j in range(q + 1):
                out[(i, j)] += c * comb(p, i) * (-1) ** (p - i) * comb(q, j) * (-1) ** (q - j)
    return BivarIntPoly(dict(out))


# -- Steele polynomial ------------------------------------------------------

class RationalUniPoly:
    """Exact polynomial with Fraction coefficients, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        c = [Fraction(v) for v in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, t):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, RationalUniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"RationalUniPoly([{', '.join(str(c) for c in self.coeffs)}])"

    def integral_01(self) -> Fraction:
        return sum((c / (k + 1) for k, c in enumerate(self.coeffs)), Fraction(0))

    def to_strings(self) -> list[str]:
        return [f"{c.numerator}/{c.denominator}" for c in self.coeffs]


def interpolate(ts: list[Fraction], vals: list[Fraction]) -> RationalUniPoly:
    """Unique polynomial of degree < len(ts) through the points (Newton form)."""
    n = len(ts)
    dd = list(vals)
    for level in range(1, n):
        for k in range(n - 1, level - 1, -1):
            dd[k] = (dd[k] - dd[k - 1]) / (ts[k] - ts[k - level])
    # Horner on the Newton basis, from the top divided difference down
    poly = [dd[-1]]
    for k in range(n - 2, -1, -1):
        shifted = [Fraction(0)] + poly
        for j in range(len(poly)):
            shifted[j] -= ts[k] * poly[j]
        shifted[0] += dd[k]
        poly = shifted
    return RationalUniPoly(poly)


def _steele_value(T: BivarIntPoly, Tx: BivarIntPoly, t: Fraction) -> Fraction | None:
    x, y = 1 / t, 1 / (1 - t)
    den = T(x, y)
    if den == 0:
        return None
    return (1 - t) / t * Tx(x, y) / den


def _sample_points(m: int) -> Iterator[Fraction]:
    """k/(m+3) for k = 1..m+2, then 1/(2(m+3)), then ever finer fractions."""
    step = m + 3
    for k in range(1, step):
        yield Fraction(k, step)
    yield Fraction(1, 2 * step)
    denom = 2 * step
    while True:
        denom += 1
        for k in range(1, denom):
            yield Fraction(k, denom)


def steele(G: Multigraph, T: BivarIntPoly | None = None) -> RationalUniPoly:
    """Steele polynomial by exact sampling and interpolation.

    ``S`` is sampled at ``m + 1`` rational points in (0, 1), interpolated,
    and confirmed at two further points.
    """
    m = G.n_edges
    if m < 1:
        raise GraphError("graph needs at least one edge")
    T = tutte(G) if T is None else T
    Tx = tutte_partial_x(T)
    ts: list[Fraction] = []
    vals: list[Fraction] = []
    seen: set[Fraction] = set()
    budget = 50 * (m + 3)
    for t in _sample_points(m):
        if len(ts) == m + 3:
            break
        budget -= 1
        if budget < 0:
            raise GraphError("no usable sample points: T(G; 1/t, 1/(1-t)) vanishes everywhere tried")
        if t in seen or not 0 < t < 1:
            continue
        seen.add(t)
        v = _steele_value(T, Tx, t)
        if v is not None:
            ts.append(t)
            vals.append(v)
    S = interpolate(ts[: m + 1], vals[: m + 1])
    for t, v in zip(ts[m + 1:], vals[m + 1:]):
        if S(t) != v:
            raise GraphError(f"held-out check failed at t={t}; degree bound violated")
    return S


def mean_mst_length(G: Multigraph) -> Fraction:
    """Expected minimum spanning tree length with i.i.d. U[0,1] edge lengths."""
    if not G.is_connected():
        raise GraphError("graph must be connected")
    return steele(G).integral_01()
