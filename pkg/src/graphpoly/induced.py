"""The Potts set function ``f(X) = prod over edges inside X of (1 + r_e)`` modulo a prime."""

from __future__ import annotations

import numpy as np

from .graph import Multigraph, induced_edge_table


class InducedProduct:
    """``f(X)`` for a batch of edge-weight assignments.

    ``factors`` has shape ``(m, batch)`` and holds ``1 + r_e`` reduced mod
    ``p`` for each edge and each batch entry.  Use :meth:`uniform` when all
    edges share the weight ``w`` (one batch entry per ``w``).
    """

    def __init__(self, G: Multigraph, factors: np.ndarray, p: int):
        self.G = G
        self.p = p
        self.factors = np.asarray(factors, dtype=np.int64) % p
        if self.factors.shape[0] != G.m:
            raise ValueError("need one factor row per edge")
        self.batch = self.factors.shape[1]
        self._powers = None
        self._levels = None

    @classmethod
    def uniform(cls, G: Multigraph, w_points, p: int) -> InducedProduct:
        w = np.asarray([int(x) % p for x in w_points], dtype=np.int64)
        obj = cls(G, np.broadcast_to((1 + w) % p, (G.m, len(w))), p)
        # (1 + w)**e for e = 0..m, so f(X) is a lookup by induced edge count
        powers = np.ones((G.m + 1, len(w)), dtype=np.int64)
        for e in range(1, G.m + 1):
            powers[e] = powers[e - 1] * ((1 + w) % p) % p
        obj._powers = powers
        obj._levels = _multiplicity_levels(G)
        return obj

    def table(self) -> np.ndarray:
        """``f`` on every mask, shape ``(2**n, batch)``."""
        n, p = self.G.n, self.p
        if self._powers is not None:
            return self._powers[induced_edge_table(self.G)]
        f = np.ones((1 << n, self.batch), dtype=np.int64)
        for k, (u, v) in enumerate(self.G.edges):
            need = (1 << (u - 1)) | (1 << (v - 1))
            idx = (np.arange(1 << n) & need) == need
            f[idx] = f[idx] * self.factors[k] % p
        return f

    def __call__(self, masks: np.ndarray) -> np.ndarray:
        masks = np.asarray(masks, dtype=np.int64)
        if self._powers is not None:
            return self._powers[self.edge_counts(masks)]
        out = np.ones((len(masks), self.batch), dtype=np.int64)
        for k, (u, v) in enumerate(self.G.edges):
            inside = (masks >> (u - 1)) & (masks >> (v - 1)) & 1
            hit = inside.astype(bool)
            out[hit] = out[hit] * self.factors[k] % self.p
        return out

    def edge_counts(self, masks: np.ndarray) -> np.ndarray:
        """Induced edge counts for an array of masks."""
        counts = np.zeros(len(masks), dtype=np.int64)
        for i, loops, levels in self._levels:
            here = (masks >> i) & 1
            acc = np.full(len(masks), loops, dtype=np.int64)
            for mult, nb in levels:
                acc += mult * np.bitwise_count(masks & nb).astype(np.int64)
            counts += here * acc
        return counts


def _multiplicity_levels(G: Multigraph):
    """Per vertex: loops and lower-neighbour masks grouped by edge multiplicity."""
    mult = G.multiplicity()
    out = []
    for i in range(G.n):
        levels: dict[int, int] = {}
        for j in range(i):
            if mult[i][j]:
                levels[mult[i][j]] = levels.get(mult[i][j], 0) | (1 << j)
        if mult[i][i] or levels:
            out.append((i, mult[i][i], sorted(levels.items())))
    return out
