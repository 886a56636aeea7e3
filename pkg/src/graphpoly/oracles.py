"""Slow reference computations used to cross-check the fast pipelines on small inputs."""

from __future__ import annotations

import itertools
from math import comb

from .errors import BudgetExceeded
from .graph import Digraph, Multigraph, connected_components
from .tutte import TutteTable


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))
        self.count = n

    def find(self, x):
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[ra] = rb
            self.count -= 1


def components_of_edges(n: int, edges) -> int:
    dsu = _DSU(n)
    for u, v in edges:
        dsu.union(u - 1, v - 1)
    return dsu.count


def _add_expansion(acc, a, ex, ey):
    for i in range(ex + 1):
        ci = comb(ex, i) * (-1) ** (ex - i)
        for j in range(ey + 1):
            key = (i, j)
            acc[key] = acc.get(key, 0) + a * ci * comb(ey, j) * (-1) ** (ey - j)


def z_bruteforce(G: Multigraph, max_edges: int = 22) -> list[list[int]]:
    """``a[k][l]`` by direct enumeration of all ``2**m`` edge subsets."""
    if G.m > max_edges:
        raise BudgetExceeded(f"{G.m} edges exceed the subset-enumeration budget of {max_edges}")
    a = [[0] * (G.m + 1) for _ in range(G.n + 1)]
    for bits in range(1 << G.m):
        chosen = [e for k, e in enumerate(G.edges) if bits >> k & 1]
        a[components_of_edges(G.n, chosen)][len(chosen)] += 1
    return a


def tutte_bruteforce(G: Multigraph, max_edges: int = 22) -> TutteTable:
    """Subset expansion ``sum_F (x-1)**(c(F)-c(E)) (y-1)**(c(F)+|F|-n)``."""
    c = len(connected_components(G))
    a = z_bruteforce(G, max_edges)
    acc: dict[tuple[int, int], int] = {}
    for k, row in enumerate(a):
        for size, count in enumerate(row):
            if count:
                _add_expansion(acc, count, k - c, k + size - G.n)
    return TutteTable(G.n, G.m, c, {key: v for key, v in acc.items() if v})


def tutte_deletion_contraction(G: Multigraph, max_leaves: int = 10**7) -> tuple[TutteTable, int]:
    """Literal delete/contract recursion on multigraphs.

    Returns the table and the number of leaves of the computation tree.
    Loops and parallel edges created by contraction are kept.
    """
    leaves = 0

    def is_bridge(n, edges, k):
        u, v = edges[k]
        dsu = _DSU(n)
        for idx, (a, b) in enumerate(edges):
            if idx != k:
                dsu.union(a - 1, b - 1)
        return dsu.find(u - 1) != dsu.find(v - 1)

    def contract(n, edges, k):
        u, v = edges[k]
        keep, gone = min(u, v), max(u, v)

        def relabel(x):
            x = keep if x == gone else x
            return x - 1 if x > gone else x

        return n - 1, [(relabel(a), relabel(b)) for idx, (a, b) in enumerate(edges) if idx != k]

    def rec(n, edges):
        nonlocal leaves
        if not edges:
            leaves += 1
            if leaves > max_leaves:
                raise BudgetExceeded(f"deletion-contraction exceeded {max_leaves} leaves")
            return {(0, 0): 1}
        for k, (u, v) in enumerate(edges):
            if u == v:
                sub = rec(n, edges[:k] + edges[k + 1 :])
                return {(i, j + 1): c for (i, j), c in sub.items()}
        k = len(edges) - 1
        if is_bridge(n, edges, k):
            sub = rec(*contract(n, edges, k))
            return {(i + 1, j): c for (i, j), c in sub.items()}
        out = dict(rec(n, edges[:k]))
        for key, c in rec(*contract(n, edges, k)).items():
            out[key] = out.get(key, 0) + c
        return out

    coeffs = rec(G.n, list(G.edges))
    return TutteTable(G.n, G.m, len(connected_components(G)), coeffs), leaves


def potts_bruteforce(G: Multigraph, q: int, w, p: int | None = None, max_maps: int = 10**7):
    """Sum over all ``q**n`` spin maps of ``prod_e (1 + r_e [spins agree])``.

    ``w`` is either one weight shared by every edge or a per-edge sequence.
    """
    if q**G.n > max_maps:
        raise BudgetExceeded(f"{q}**{G.n} spin maps exceed the budget")
    weights = list(w) if hasattr(w, "__len__") else [w] * G.m
    total = 0
    for spins in itertools.product(range(q), repeat=G.n):
        term = 1
        for (u, v), r in zip(G.edges, weights):
            if spins[u - 1] == spins[v - 1]:
                term *= 1 + r
        total += term
    return total if p is None else total % p


def potts_edge_subsets(G: Multigraph, q: int, w) -> int:
    """``sum_F q**c(F) prod_{e in F} r_e`` over all edge subsets."""
    weights = list(w) if hasattr(w, "__len__") else [w] * G.m
    total = 0
    for bits in range(1 << G.m):
        chosen = [e for k, e in enumerate(G.edges) if bits >> k & 1]
        term = q ** components_of_edges(G.n, chosen)
        for k in range(G.m):
            if bits >> k & 1:
                term *= weights[k]
        total += term
    return total


def cover_bruteforce(D: Digraph, max_arcs: int = 22) -> dict[tuple[int, int], int]:
    """``c(i, j)``: arc subsets forming ``i`` vertex-disjoint directed paths and ``j`` directed cycles covering all vertices."""
    if D.m > max_arcs:
        raise BudgetExceeded(f"{D.m} arcs exceed the enumeration budget of {max_arcs}")
    table: dict[tuple[int, int], int] = {}
    for bits in range(1 << D.m):
        succ = [None] * (D.n + 1)
        pred = [None] * (D.n + 1)
        ok = True
        for k, (u, v) in enumerate(D.arcs):
            if bits >> k & 1:
                if succ[u] is not None or pred[v] is not None:
                    ok = False
                    break
                succ[u], pred[v] = v, u
        if not ok:
            continue
        paths = cycles = 0
        seen = [False] * (D.n + 1)
        for v in range(1, D.n + 1):
            if pred[v] is None:
                paths += 1
                x = v
                while x is not None:
                    seen[x] = True
                    x = succ[x]
        for v in range(1, D.n + 1):
            if not seen[v]:
                cycles += 1
                x = v
                while not seen[x]:
                    seen[x] = True
                    x = succ[x]
        table[(paths, cycles)] = table.get((paths, cycles), 0) + 1
    return table


def permanent(matrix: list[list[int]]) -> int:
    n = len(matrix)
    total = 0
    for perm in itertools.permutations(range(n)):
        term = 1
        for i, j in enumerate(perm):
            term *= matrix[i][j]
            if not term:
                break
        total += term
    return total
