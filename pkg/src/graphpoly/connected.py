"""Evaluation over connected vertex sets, built bottom-up one vertex at a time.

An F-table for a set ``X`` is an array of shape ``(n + 1, n + 1, batch, n + 1)``:
``table[q - 1, i]`` is the z-polynomial ``F(X, q, i)``, the sum over
``q``-tuples of subsets of ``X`` whose union agrees with ``X`` on vertices
``i+1..n`` of ``prod f_z(U_j)``.
"""

from __future__ import annotations

import numpy as np

from .graph import Multigraph, component_masks, is_connected_mask
from .induced import InducedProduct
from .modular import zpoly_mul


def up_step(X: int, fz_X: np.ndarray, preds: dict[int, np.ndarray], n: int, p: int) -> np.ndarray:
    """F-table of ``X`` from ``f_z(X)`` and ``preds[i] = F(X - {i}, q, i - 1)`` (all ``q``, stacked).

    ``i`` ranges over the vertices (1-based) of ``X``; each ``preds[i]`` has
    shape ``(n + 1, batch, n + 1)``.
    """
    members = [i + 1 for i in range(n) if X >> i & 1]
    missing = [i for i in members if i not in preds]
    if missing:
        raise ValueError(f"missing predecessor tables for vertices {missing}")
    width = fz_X.shape[-1]
    batch = fz_X.shape[:-1]
    table = np.empty((n + 1, n + 1) + batch + (width,), dtype=np.int64)

    base = fz_X.copy()
    for i in members:
        base += preds[i][0]
    base %= p
    power = base
    for q in range(n + 1):
        table[q, n] = power
        if q < n:
            power = zpoly_mul(power, base, p)
    for i in range(n, 0, -1):
        if i in preds and X >> (i - 1) & 1:
            table[:, i - 1] = (table[:, i] - preds[i]) % p
        else:
            table[:, i - 1] = table[:, i]
    return table


def factor_disconnected(tables: list[np.ndarray], p: int) -> np.ndarray:
    """Entrywise product of the F-tables (or F-table slices) of the components of ``X``."""
    if len(tables) < 2:
        raise ValueError("factorisation needs a disconnected set (two or more components)")
    out = tables[0]
    for t in tables[1:]:
        out = zpoly_mul(out, t, p)
    return out


class AlgorithmC:
    """Memoised top-down evaluation of ``F(V, q, 0)``.

    Only connected sets are stored; a disconnected set is rebuilt on demand
    as the product of its components' tables.
    """

    def __init__(self, G: Multigraph, f: InducedProduct):
        self.G = G
        self.f = f
        self.p = f.p
        self.n = G.n
        self.adj = G.adjacency
        self.memo: dict[int, np.ndarray] = {}
        self._one = np.zeros((self.n + 1, f.batch, self.n + 1), dtype=np.int64)
        self._one[..., 0] = 1

    def fz(self, X: int) -> np.ndarray:
        vals = self.f(np.array([X], dtype=np.int64))[0]
        poly = np.zeros((self.f.batch, self.n + 1), dtype=np.int64)
        poly[:, X.bit_count()] = vals
        return poly

    def slice(self, Y: int, i: int) -> np.ndarray:
        """``F(Y, q, i)`` for all ``q``."""
        if Y == 0:
            return self._one
        comps = component_masks(self.adj, Y)
        if len(comps) == 1:
            return self.table(Y)[:, i]
        return factor_disconnected([self.table(C)[:, i] for C in comps], self.p)

    def table(self, X: int) -> np.ndarray:
        hit = self.memo.get(X)
        if hit is not None:
            return hit
        if not is_connected_mask(self.adj, X):
            raise ValueError("only connected sets are memoised")
        preds = {}
        for i in range(1, self.n + 1):
            if X >> (i - 1) & 1:
                preds[i] = self.slice(X & ~(1 << (i - 1)), i - 1)
        t = up_step(X, self.fz(X), preds, self.n, self.p)
        self.memo[X] = t
        return t

    def values(self) -> np.ndarray:
        """``z**n`` coefficient of ``F(V, q, 0)`` for ``q = 1..n+1``; shape ``(n + 1, batch)``."""
        return self.slice(self.G.full, 0)[..., self.n] % self.p


def algorithm_c(G: Multigraph, f: InducedProduct) -> tuple[np.ndarray, int]:
    """Potts values at ``q = 1..n+1`` plus the number of memoised (connected) sets."""
    run = AlgorithmC(G, f)
    vals = run.values()
    return vals, len(run.memo)
