"""Potts partition function evaluation and exact recovery of the ``Z_G(q, w)`` coefficient table.

``Z_G(q, w) = sum over edge sets F of q**c(F) * w**|F|``.  At integer
``q`` it equals the ``q``-state Potts partition function, which the
strategies below evaluate as a disjoint-cover sum over the subset
lattice.  Interpolating over ``q = 1..n+1`` and ``w = 0..m`` and
Chinese-remaindering across primes gives the integer coefficients.
"""

from __future__ import annotations

import logging
from collections import Counter
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .connected import algorithm_c
from .errors import ConsistencyError
from .graph import Multigraph, connected_components
from .induced import InducedProduct
from .modular import choose_primes, crt_table, interpolation_matrix, lagrange_interpolate, mod_matmul
from .recursion import s_table
from .transforms import cover_coefficients, split_cover_coefficients, weight_by_size

log = logging.getLogger(__name__)

STRATEGIES = ("dense", "direct", "split", "connected", "recursion")

# rough int64 element budget for one batched working table
TABLE_ELEMENTS = 1 << 21


@dataclass(frozen=True)
class Strategy:
    """Evaluation route: ``dense`` (2^n space), ``direct`` (3^n time, polynomial space),
    ``split`` with parameter ``s``, ``connected`` (memoised over connected vertex sets), or ``recursion``."""

    name: str = "dense"
    s: int | None = None

    def __post_init__(self):
        if self.name not in STRATEGIES:
            raise ValueError(f"unknown strategy {self.name!r}")
        if self.name == "split" and self.s is None:
            raise ValueError("split strategy needs s")

    @classmethod
    def parse(cls, text: str) -> Strategy:
        """``dense``, ``direct``/``polyspace``, ``split:S``, ``connected``, ``recursion``."""
        if text == "polyspace":
            return cls("direct")
        if text.startswith("split:"):
            return cls("split", int(text.split(":", 1)[1]))
        return cls(text)

    def split_size(self, n: int) -> int:
        # a split wider than the component degenerates to the dense transform
        return min(self.s, n)

    def __str__(self):
        return f"split:{self.s}" if self.name == "split" else self.name


@dataclass(frozen=True)
class PottsInstance:
    G: Multigraph
    prime: int
    w_point: int
    strategy: Strategy = field(default_factory=Strategy)

    def __post_init__(self):
        if self.prime <= max(self.G.n + 1, self.G.m + 1):
            raise ValueError("prime must exceed max(n + 1, m + 1)")


@dataclass
class ZCoefficients:
    """``a[k][l]`` = number of edge sets with ``k`` components and ``l`` edges (row ``k = 0`` is zero)."""

    n: int
    m: int
    a: list[list[int]]

    def total(self) -> int:
        return sum(sum(row) for row in self.a)

    def check(self, components: int = 1) -> None:
        """Raise :class:`ConsistencyError` unless the table's combinatorial invariants hold."""
        n, m, a = self.n, self.m, self.a
        problems = []
        if self.total() != 1 << m:
            problems.append(f"coefficient sum {self.total()} != 2**{m}")
        if any(v < 0 for row in a for v in row):
            problems.append("negative coefficient")
        if any(a[0]):
            problems.append("nonzero q**0 coefficient")
        for k in range(1, n + 1):
            if a[k][0] != (1 if k == n else 0):
                problems.append(f"a[{k}][0] = {a[k][0]}")
        if a[components][m] != 1:
            problems.append(f"a[{components}][{m}] = {a[components][m]} != 1")
        if problems:
            raise ConsistencyError("; ".join(problems))


def _batch_size(G: Multigraph, strategy: Strategy, total: int) -> int:
    n = G.n
    if strategy.name == "connected":
        per = (n + 1) ** 3 << n
    elif strategy.name == "dense":
        per = (n + 1) << n
    elif strategy.name == "split":
        per = (n + 1) << strategy.split_size(n)
    elif strategy.name == "recursion":
        per = (n + 1) << n
    else:
        per = n + 1
    return max(1, min(total, TABLE_ELEMENTS // per))


def potts_node_values(
    G: Multigraph,
    f: InducedProduct,
    strategy: Strategy,
    counter: Counter | None = None,
) -> np.ndarray:
    """``Z^Potts(q, .)`` for ``q = 1..n+1`` and every batch entry of ``f``; shape ``(n + 1, batch)``."""
    n, p = G.n, f.p
    qmax = n + 1
    if strategy.name == "dense":
        return cover_coefficients(weight_by_size(f.table(), n), qmax, p, counter)
    if strategy.name == "direct":
        return split_cover_coefficients(f, n, qmax, 0, p, counter)
    if strategy.name == "split":
        return split_cover_coefficients(f, n, qmax, strategy.split_size(n), p, counter)
    if strategy.name == "connected":
        return algorithm_c(G, f)[0]
    if strategy.name == "recursion":
        S = s_table(G, f)[-1]
        out = np.zeros((qmax, f.batch), dtype=np.int64)
        for q in range(1, qmax + 1):
            qk = 1
            for k in range(1, n + 1):
                qk = qk * q % p
                out[q - 1] = (out[q - 1] + qk * S[k]) % p
        return out
    raise AssertionError(strategy)


def potts_value(inst: PottsInstance, q: int) -> int:
    """``Z^Potts_G(q, w) mod p`` for a positive integer ``q``.

    Beyond the nodes ``1..n+1`` the value comes from the degree-``n``
    polynomial in ``q`` through those nodes.
    """
    G, p = inst.G, inst.prime
    if q < 1:
        raise ValueError("q must be a positive integer")
    f = InducedProduct.uniform(G, [inst.w_point], p)
    vals = potts_node_values(G, f, inst.strategy)[:, 0]
    if q <= G.n + 1:
        return int(vals[q - 1])
    coeffs = lagrange_interpolate(list(range(1, G.n + 2)), vals.tolist(), p)
    return sum(c * pow(q, k, p) for k, c in enumerate(coeffs)) % p


def _residue_table(G: Multigraph, p: int, strategy: Strategy, w_nodes: list[int], threads: int) -> np.ndarray:
    """``a[k][l] mod p`` for one prime."""
    n, m = G.n, G.m
    batch = _batch_size(G, strategy, len(w_nodes))
    chunks = [w_nodes[i : i + batch] for i in range(0, len(w_nodes), batch)]

    def run(ws):
        f = InducedProduct.uniform(G, ws, p)
        if strategy.name == "recursion":
            return s_table(G, f)[-1]
        return potts_node_values(G, f, strategy)

    if threads > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(run, chunks))
    else:
        parts = [run(ws) for ws in chunks]
    values = np.concatenate(parts, axis=1)

    if strategy.name == "recursion":
        by_k = values
    else:
        # rows q = 1..n+1 -> coefficients of q**0..q**n
        by_k = mod_matmul(interpolation_matrix(list(range(1, n + 2)), p), values, p)
        if by_k[0].any():
            raise ConsistencyError(f"q-interpolation left a constant term modulo {p}")
    return mod_matmul(by_k, interpolation_matrix(w_nodes, p).T, p)


def z_coefficient_table(G: Multigraph, strategy: Strategy | str = "dense", threads: int = 1) -> ZCoefficients:
    """Exact ``a[k][l]`` table for a connected multigraph."""
    if isinstance(strategy, str):
        strategy = Strategy.parse(strategy)
    if len(connected_components(G)) != 1:
        raise ValueError("z_coefficient_table needs a connected graph")
    n, m = G.n, G.m
    primes = choose_primes(1 << m, max(n + 1, m + 1))
    w_nodes = list(range(m + 1))
    log.debug("n=%d m=%d strategy=%s primes=%s", n, m, strategy, primes)

    if threads > 1 and len(primes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            residues = list(pool.map(lambda p: _residue_table(G, p, strategy, w_nodes, 1), primes))
    else:
        residues = [_residue_table(G, p, strategy, w_nodes, threads) for p in primes]
    a = crt_table(primes, residues)
    z = ZCoefficients(n, m, [[int(v) for v in row] for row in a])
    z.check()
    return z
