"""Multigraph and digraph model, edge-list parsing, and basic invariants.

Vertices are labelled ``1..n``; a vertex set is an ``int`` bit mask where
vertex ``i`` lives in bit ``i - 1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, TextIO

import numpy as np

from .errors import CapacityError, GraphFormatError

MAX_VERTICES = 32


def _check_vertex_count(n: int) -> None:
    if n < 1:
        raise GraphFormatError(f"vertex count {n} must be at least 1")
    if n > MAX_VERTICES:
        raise CapacityError(f"vertex count {n} exceeds {MAX_VERTICES}")


@dataclass(frozen=True)
class Multigraph:
    """Undirected multigraph on vertices ``1..n``; loops and parallel edges allowed."""

    n: int
    edges: tuple[tuple[int, int], ...] = ()
    weights: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "edges", tuple((int(u), int(v)) for u, v in self.edges))
        _check_vertex_count(self.n)
        for u, v in self.edges:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphFormatError(f"edge ({u}, {v}) has an endpoint outside 1..{self.n}")
        if self.weights is not None:
            object.__setattr__(self, "weights", tuple(int(w) for w in self.weights))
            if len(self.weights) != len(self.edges):
                raise ValueError("one weight per edge required")

    @property
    def m(self) -> int:
        return len(self.edges)

    @property
    def full(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbour masks ignoring loops, indexed by ``vertex - 1``."""
        adj = [0] * self.n
        for u, v in self.edges:
            if u != v:
                adj[u - 1] |= 1 << (v - 1)
                adj[v - 1] |= 1 << (u - 1)
        return tuple(adj)

    def multiplicity(self) -> list[list[int]]:
        """Symmetric ``n x n`` edge-multiplicity matrix; loops on the diagonal."""
        mult = [[0] * self.n for _ in range(self.n)]
        for u, v in self.edges:
            mult[u - 1][v - 1] += 1
            if u != v:
                mult[v - 1][u - 1] += 1
        return mult

    def relabel(self, perm: list[int]) -> Multigraph:
        """Apply ``vertex v -> perm[v - 1]``."""
        return Multigraph(self.n, tuple((perm[u - 1], perm[v - 1]) for u, v in self.edges), self.weights)

    def induced(self, mask: int) -> Multigraph:
        """Induced subgraph on ``mask``, relabelled ``1..|mask|`` in increasing order."""
        verts = [i + 1 for i in range(self.n) if mask >> i & 1]
        index = {v: k + 1 for k, v in enumerate(verts)}
        kept = [(e, k) for k, e in enumerate(self.edges) if e[0] in index and e[1] in index]
        weights = None if self.weights is None else tuple(self.weights[k] for _, k in kept)
        return Multigraph(len(verts), tuple((index[u], index[v]) for (u, v), _ in kept), weights)


@dataclass(frozen=True)
class Digraph:
    """Directed multigraph on ``1..n``; arc ``(u, v)`` means ``u -> v``."""

    n: int
    arcs: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "arcs", tuple((int(u), int(v)) for u, v in self.arcs))
        _check_vertex_count(self.n)
        for u, v in self.arcs:
            if not (1 <= u <= self.n and 1 <= v <= self.n):
                raise GraphFormatError(f"arc ({u}, {v}) has an endpoint outside 1..{self.n}")

    @property
    def m(self) -> int:
        return len(self.arcs)

    def adjacency_matrix(self) -> list[list[int]]:
        """``A[u-1][v-1]`` = number of arcs ``u -> v``."""
        a = [[0] * self.n for _ in range(self.n)]
        for u, v in self.arcs:
            a[u - 1][v - 1] += 1
        return a

    def relabel(self, perm: list[int]) -> Digraph:
        return Digraph(self.n, tuple((perm[u - 1], perm[v - 1]) for u, v in self.arcs))


def parse_graph(text: str | TextIO | Iterable[str], directed: bool = False) -> Multigraph | Digraph:
    """Parse the edge-list format.

    The first non-comment line holds ``n``; each further line is ``u v``
    (an arc ``u -> v`` when ``directed``).  Lines starting with ``#`` and
    blank lines are skipped.  Undirected edge lines may carry a third
    integer, the edge weight used by the Potts evaluator.
    """
    if isinstance(text, str):
        lines = text.splitlines()
    else:
        lines = list(text)

    n = None
    pairs: list[tuple[int, int]] = []
    weights: list[int] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\r\n").strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        try:
            values = [int(tok) for tok in tokens]
        except ValueError:
            raise GraphFormatError(f"expected decimal integers, got {line!r}", lineno) from None
        if n is None:
            if len(values) != 1:
                raise GraphFormatError("first line must hold the vertex count", lineno)
            n = values[0]
            if n > MAX_VERTICES:
                raise CapacityError(f"vertex count {n} exceeds {MAX_VERTICES}", lineno)
            if n < 1:
                raise GraphFormatError(f"vertex count {n} must be at least 1", lineno)
            continue
        if len(values) == 3 and not directed:
            weights.append(values[2])
        elif len(values) != 2:
            raise GraphFormatError(f"expected 'u v', got {line!r}", lineno)
        u, v = values[0], values[1]
        if not (1 <= u <= n and 1 <= v <= n):
            raise GraphFormatError(f"endpoint out of range 1..{n}: {line!r}", lineno)
        pairs.append((u, v))

    if n is None:
        raise GraphFormatError("missing vertex count")
    if directed:
        return Digraph(n, tuple(pairs))
    if weights and len(weights) != len(pairs):
        raise GraphFormatError("either every edge carries a weight or none does")
    return Multigraph(n, tuple(pairs), tuple(weights) if weights else None)


def format_graph(G: Multigraph | Digraph) -> str:
    """Inverse of :func:`parse_graph` (weights are written when present)."""
    pairs = G.arcs if isinstance(G, Digraph) else G.edges
    weights = getattr(G, "weights", None)
    out = [str(G.n)]
    for k, (u, v) in enumerate(pairs):
        out.append(f"{u} {v}" if weights is None else f"{u} {v} {weights[k]}")
    return "\n".join(out) + "\n"


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << (v - 1)
    return mask


def vertices_of(mask: int) -> list[int]:
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def component_masks(adj: tuple[int, ...] | list[int], X: int) -> list[int]:
    """Connected components of the subgraph induced by mask ``X``, sorted by lowest vertex."""
    comps = []
    rest = X
    while rest:
        low = rest & -rest
        comp = low
        frontier = low
        while frontier:
            bit = frontier & -frontier
            frontier ^= bit
            new = adj[bit.bit_length() - 1] & X & ~comp
            comp |= new
            frontier |= new
        comps.append(comp)
        rest &= ~comp
    return comps


def is_connected_mask(adj, X: int) -> bool:
    if X == 0:
        return False
    low = X & -X
    comp = low
    frontier = low
    while frontier:
        bit = frontier & -frontier
        frontier ^= bit
        new = adj[bit.bit_length() - 1] & X & ~comp
        comp |= new
        frontier |= new
    return comp == X


def connected_components(G: Multigraph) -> list[int]:
    return component_masks(G.adjacency, G.full)


def induced_edge_count(G: Multigraph, X: int) -> int:
    """Edges (with multiplicity, loops included) having both endpoints in ``X``."""
    return sum(1 for u, v in G.edges if X >> (u - 1) & 1 and X >> (v - 1) & 1)


def induced_edge_table(G: Multigraph) -> np.ndarray:
    """``e(X)`` for every mask ``X``, built by adding the top vertex of each set.

    Uses ``e(Y + i) = e(Y) + deg_Y(i) + loops(i)`` for ``Y`` below vertex ``i``.
    """
    n = G.n
    mult = G.multiplicity()
    table = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        size = 1 << i
        deg = np.zeros(size, dtype=np.int64)
        for j in range(i):
            if mult[i][j]:
                deg.reshape(-1, 2, 1 << j)[:, 1, :] += mult[i][j]
        table[size : 2 * size] = table[:size] + deg + mult[i][i]
    return table


def spanning_tree_count(G: Multigraph) -> int:
    """Number of spanning trees by fraction-free (Bareiss) elimination of a reduced Laplacian.

    Loops do not enter the Laplacian; parallel edges add multiplicity.
    Returns 0 for a disconnected graph.
    """
    n = G.n
    if len(connected_components(G)) != 1:
        return 0
    if n == 1:
        return 1
    mult = G.multiplicity()
    lap = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            if i != j:
                lap[i][j] = -mult[i][j]
                lap[i][i] += mult[i][j]
    a = [row[1:] for row in lap[1:]]
    return _bareiss_det(a)


def _bareiss_det(a: list[list[int]]) -> int:
    k = len(a)
    a = [row[:] for row in a]
    sign = 1
    prev = 1
    for col in range(k - 1):
        if a[col][col] == 0:
            swap = next((r for r in range(col + 1, k) if a[r][col] != 0), None)
            if swap is None:
                return 0
            a[col], a[swap] = a[swap], a[col]
            sign = -sign
        piv = a[col][col]
        for r in range(col + 1, k):
            for c in range(col + 1, k):
                a[r][c] = (a[r][c] * piv - a[r][col] * a[col][c]) // prev
            a[r][col] = 0
        prev = piv
    return sign * a[k - 1][k - 1]


def count_connected_sets(G: Multigraph) -> int:
    """Number of nonempty vertex sets inducing a connected subgraph.

    Walks the same set family the connected-sets strategy memoises: start from the
    components of ``V``; from a connected set step to the components of
    each one-vertex deletion.
    """
    adj = G.adjacency
    seen: set[int] = set()
    stack = list(component_masks(adj, G.full))
    while stack:
        X = stack.pop()
        if X in seen:
            continue
        seen.add(X)
        rest = X
        while rest:
            bit = rest & -rest
            rest ^= bit
            for comp in component_masks(adj, X ^ bit):
                if comp not in seen:
                    stack.append(comp)
    return len(seen)


def complete_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple((u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1)))


def cycle_graph(n: int) -> Multigraph:
    if n == 1:
        return Multigraph(1, ((1, 1),))
    if n == 2:
        return Multigraph(2, ((1, 2), (1, 2)))
    return Multigraph(n, tuple((i, i % n + 1) for i in range(1, n + 1)))


def path_graph(n: int) -> Multigraph:
    return Multigraph(n, tuple((i, i + 1) for i in range(1, n)))


def petersen_graph() -> Multigraph:
    outer = [(i, i % 5 + 1) for i in range(1, 6)]
    spokes = [(i, i + 5) for i in range(1, 6)]
    inner = [(6 + i, 6 + (i + 2) % 5) for i in range(5)]
    return Multigraph(10, tuple(outer + spokes + inner))


def as_fraction(text: str) -> Fraction:
    """Parse ``"p/q"`` or a decimal into an exact rational."""
    return Fraction(text)
