"""Cover polynomial of a digraph by inclusion-exclusion over vertex subsets.

``c(i, j)`` counts ways to cover every vertex with ``i`` disjoint directed
paths and ``j`` disjoint directed cycles; the polynomial is
``sum c(i, j) x(x-1)...(x-i+1) y**j``.

Spanning path and cycle counts of every induced subgraph come from walk
counts by Moebius inversion.  The cycle count of ``X`` roots its closed
walks at ``min X`` (not at the minimum of the inner summation set): closed
walks rooted at a larger vertex do not cancel otherwise.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .errors import BudgetExceeded
from .graph import Digraph
from .modular import choose_primes, crt_table, mod_matmul, zpoly_mul
from .transforms import fast_moebius, fast_zeta, moebius_signs, popcounts, submask_chunks

FAST_MAX_VERTICES = 25


@dataclass
class CoverTable:
    n: int
    m: int
    coeffs: dict[tuple[int, int], int] = field(default_factory=dict)

    def items(self) -> list[tuple[int, int, int]]:
        return [(i, j, c) for (i, j), c in sorted(self.coeffs.items()) if c]

    def __eq__(self, other):
        if not isinstance(other, CoverTable):
            return NotImplemented
        return self.items() == other.items()


def count_walks(D: Digraph, S: int, s: int, t: int, length: int, p: int | None = None) -> int:
    """Directed walks with ``length`` arcs from ``s`` to ``t`` inside ``D[S]`` (arc multiplicity counts)."""
    if not (S >> (s - 1) & 1 and S >> (t - 1) & 1):
        return 0
    A = D.adjacency_matrix()
    inside = [v for v in range(D.n) if S >> v & 1]
    vec = {v: 0 for v in inside}
    vec[s - 1] = 1
    for _ in range(length):
        nxt = {v: 0 for v in inside}
        for u, c in vec.items():
            if c:
                for v in inside:
                    if A[u][v]:
                        nxt[v] += c * A[u][v]
        vec = {v: c % p for v, c in nxt.items()} if p else nxt
    return vec[t - 1]


def _walk_layers(A: np.ndarray, member: np.ndarray, start: np.ndarray, steps: int, p: int) -> list[np.ndarray]:
    """Walk-count vectors ``x_l[S, v]`` for ``l = 0..steps`` from initial vectors ``start``, all sets at once."""
    x = start % p
    out = [x]
    for _ in range(steps):
        x = mod_matmul(x, A, p) * member
        out.append(x)
    return out


def spanning_paths_cycles(D: Digraph, p: int) -> tuple[np.ndarray, np.ndarray]:
    """Spanning directed path and cycle counts of ``D[X]`` mod ``p`` for every mask ``X``."""
    n = D.n
    if n > FAST_MAX_VERTICES:
        raise BudgetExceeded(f"fast cover mode is limited to {FAST_MAX_VERTICES} vertices")
    A = np.array(D.adjacency_matrix(), dtype=np.int64) % p
    masks = np.arange(1 << n, dtype=np.int64)
    member = ((masks[:, None] >> np.arange(n)) & 1).astype(np.int64)
    size = popcounts(n)

    paths = np.zeros(1 << n, dtype=np.int64)
    layers = _walk_layers(A, member, member, n - 1, p)
    for length, x in enumerate(layers):
        g = x.sum(axis=1) % p
        pick = size == length + 1
        paths[pick] = fast_moebius(g, p)[pick]

    cycles = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        # sets whose minimum is v live in the sublattice over vertices v..n-1
        sub = masks[: 1 << (n - v)] << v
        sub_member = member[sub]
        start = np.zeros((len(sub), n), dtype=np.int64)
        start[:, v] = sub_member[:, v]
        layers = _walk_layers(A, sub_member, start, n - v, p)
        sub_size = size[sub]
        rooted = sub_member[:, v].astype(bool)
        for length in range(1, n - v + 1):
            inv = fast_moebius(layers[length][:, v] % p, p)
            pick = rooted & (sub_size == length)
            cycles[sub[pick]] = inv[pick]
    paths[0] = cycles[0] = 0
    return paths, cycles


def _fast_residues(D: Digraph, p: int) -> np.ndarray:
    n = D.n
    paths, cycles = spanning_paths_cycles(D, p)
    size = popcounts(n)
    pz = np.zeros((1 << n, n + 1), dtype=np.int64)
    cz = np.zeros((1 << n, n + 1), dtype=np.int64)
    pz[np.arange(1 << n), size] = paths
    cz[np.arange(1 << n), size] = cycles
    return _combine(fast_zeta(pz, p), fast_zeta(cz, p), moebius_signs(n), n, p)


def _powers(table: np.ndarray, n: int, p: int) -> np.ndarray:
    out = np.zeros((n + 1,) + table.shape, dtype=np.int64)
    out[0, ..., 0] = 1
    for i in range(1, n + 1):
        out[i] = zpoly_mul(out[i - 1], table, p)
    return out


def _combine(P: np.ndarray, C: np.ndarray, signs: np.ndarray, n: int, p: int) -> np.ndarray:
    """``res[i, j] = sum_U sign(U) [z**n] P(U)**i C(U)**j`` (before dividing by ``i! j!``)."""
    Pp = _powers(P, n, p)
    Cp = _powers(C, n, p)
    res = np.zeros((n + 1, n + 1), dtype=np.int64)
    for d in range(n + 1):
        left = Pp[..., d] * signs % p
        res = (res + mod_matmul(left, Cp[..., n - d].T, p)) % p
    return res


def _walks_from(A: list[list[int]], inside: list[int], starts: list[int], steps: int, p: int) -> list[list[int]]:
    """``totals[l][k]``: walks of length ``l`` starting anywhere in ``starts`` and ending at ``inside[k]``."""
    pos = {v: k for k, v in enumerate(inside)}
    vec = [0] * len(inside)
    for s in starts:
        vec[pos[s]] += 1
    out = [vec]
    for _ in range(steps):
        nxt = [0] * len(inside)
        for a, ca in enumerate(vec):
            if ca:
                row = A[inside[a]]
                for b, v in enumerate(inside):
                    if row[v]:
                        nxt[b] += ca * row[v]
        vec = [c % p for c in nxt]
        out.append(vec)
    return out


def _polyspace_residues(D: Digraph, p: int) -> np.ndarray:
    """Same residues as the fast mode, regenerating ``P(U; z)`` and ``C(U; z)`` per ``U`` from walk counts."""
    n = D.n
    A = D.adjacency_matrix()
    res = np.zeros((n + 1, n + 1), dtype=np.int64)
    for U in range(1 << n):
        P = [0] * (n + 1)
        C = [0] * (n + 1)
        for chunk in submask_chunks(U):
            for S in chunk.tolist():
                if S == 0:
                    continue
                inside = [v for v in range(n) if S >> v & 1]
                size = len(inside)
                rest = (U & ~S).bit_count()
                lo = inside[0]
                above = (U & ~S & ~((1 << (lo + 1)) - 1)).bit_count()
                steps = size + max(rest, above)
                allw = _walks_from(A, inside, inside, steps, p)
                rootw = _walks_from(A, inside, [lo], steps, p)
                for k in range(rest + 1):
                    deg = size + k
                    g = sum(allw[deg - 1]) % p
                    P[deg] = (P[deg] + comb(rest, k) * (-1) ** k * g) % p
                for k in range(above + 1):
                    deg = size + k
                    h = rootw[deg][0]
                    C[deg] = (C[deg] + comb(above, k) * (-1) ** k * h) % p
        sign = -1 if (n - U.bit_count()) & 1 else 1
        Pp = _powers(np.array(P, dtype=np.int64), n, p)
        Cp = _powers(np.array(C, dtype=np.int64), n, p)
        for i in range(n + 1):
            for j in range(n + 1 - i):
                top = int(sum(int(Pp[i, d]) * int(Cp[j, n - d]) for d in range(n + 1)) % p)
                res[i, j] = (res[i, j] + sign * top) % p
    return res


def cover_table(D: Digraph, mode: str = "fast", threads: int = 1) -> CoverTable:
    """Exact ``c(i, j)`` table, ``mode`` is ``fast`` (``2**n`` space) or ``polyspace``."""
    if mode not in ("fast", "polyspace"):
        raise ValueError(f"unknown cover mode {mode!r}")
    n, m = D.n, D.m
    primes = choose_primes(1 << m, n + 1)

    def residue(p):
        raw = _fast_residues(D, p) if mode == "fast" else _polyspace_residues(D, p)
        scaled = np.zeros_like(raw)
        for i in range(n + 1):
            for j in range(n + 1 - i):
                inv = pow(factorial(i) * factorial(j) % p, -1, p)
                scaled[i, j] = raw[i, j] * inv % p
        return scaled

    if threads > 1 and len(primes) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            residues = list(pool.map(residue, primes))
    else:
        residues = [residue(p) for p in primes]
    table = crt_table(primes, residues)
    coeffs = {(i, j): int(table[i][j]) for i in range(n + 1) for j in range(n + 1 - i) if table[i][j]}
    return CoverTable(n, m, coeffs)


def falling(x: Fraction, i: int) -> Fraction:
    out = Fraction(1)
    for k in range(i):
        out *= x - k
    return out


def cover_evaluate(t: CoverTable, x, y) -> Fraction:
    x, y = Fraction(x), Fraction(y)
    return sum((c * falling(x, i) * y**j for (i, j), c in t.coeffs.items()), Fraction(0))
