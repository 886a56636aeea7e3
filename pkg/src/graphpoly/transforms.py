"""Zeta and Moebius transforms over the subset lattice and the kernels built on them.

Lattice functions are numpy arrays whose axis 0 is indexed by vertex-set
mask (length ``2**n``).  Remaining axes are carried along untouched, so a
table of z-polynomials batched over evaluation points has shape
``(2**n, batch, cap + 1)``.
"""

from __future__ import annotations

from collections import Counter
from typing import Callable, Iterator

import numpy as np

from .modular import SAFE_TERMS, zpoly_mul

# (mask array) -> values of shape (len(masks), *batch)
SetFunction = Callable[[np.ndarray], np.ndarray]

CHUNK = 1 << 12


def popcounts(n: int) -> np.ndarray:
    return np.bitwise_count(np.arange(1 << n, dtype=np.int64)).astype(np.int64)


def moebius_signs(n: int) -> np.ndarray:
    """``(-1)**|V \\ Y|`` for every mask ``Y``."""
    return np.where((n - popcounts(n)) & 1, -1, 1).astype(np.int64)


def _lattice_bits(f: np.ndarray) -> int:
    size = f.shape[0]
    n = size.bit_length() - 1
    if size != 1 << n:
        raise ValueError(f"lattice table length {size} is not a power of two")
    return n


def fast_zeta(f: np.ndarray, p: int | None = None, counter: Counter | None = None) -> np.ndarray:
    """``g(Y) = sum over X subset of Y of f(X)`` by one sweep per coordinate."""
    n = _lattice_bits(f)
    g = np.array(f, dtype=np.int64, copy=True)
    for i in range(n):
        view = g.reshape((-1, 2, 1 << i) + g.shape[1:])
        view[:, 1] += view[:, 0]
        if p is not None:
            view[:, 1] %= p
    if counter is not None:
        counter["transform"] += n << max(n - 1, 0) if n else 0
    return g


def fast_moebius(f: np.ndarray, p: int | None = None, counter: Counter | None = None) -> np.ndarray:
    """``g(X) = sum over Y subset of X of (-1)**|X \\ Y| f(Y)``."""
    n = _lattice_bits(f)
    g = np.array(f, dtype=np.int64, copy=True)
    for i in range(n):
        view = g.reshape((-1, 2, 1 << i) + g.shape[1:])
        view[:, 1] -= view[:, 0]
        if p is not None:
            view[:, 1] %= p
    if counter is not None:
        counter["transform"] += n << max(n - 1, 0) if n else 0
    return g


def weight_by_size(f: np.ndarray, cap: int) -> np.ndarray:
    """``f_z(X) = f(X) z**|X|`` as a z-polynomial table of shape ``f.shape + (cap + 1,)``."""
    n = _lattice_bits(f)
    pc = popcounts(n)
    if pc[-1] > cap:
        raise ValueError("cap must be at least n")
    fz = np.zeros(f.shape + (cap + 1,), dtype=np.int64)
    fz[np.arange(1 << n), ..., pc] = f
    return fz


def exact_cover_power(fz: np.ndarray, q: int, p: int) -> np.ndarray:
    """``((f_z zeta)**q mu)(V)`` as a z-polynomial.

    Its ``z**n`` coefficient is the sum over ordered ``q``-tuples of
    pairwise disjoint sets covering ``V`` of ``prod f(U_j)``.
    """
    if q < 1:
        raise ValueError("q must be >= 1")
    n = _lattice_bits(fz)
    zt = fast_zeta(fz, p)
    pw = zt
    for _ in range(q - 1):
        pw = zpoly_mul(pw, zt, p)
    return _signed_sum(pw, moebius_signs(n), p)


def _signed_sum(table: np.ndarray, signs: np.ndarray, p: int) -> np.ndarray:
    shape = (-1,) + (1,) * (table.ndim - 1)
    return (table * signs.reshape(shape)).sum(axis=0) % p


def cover_coefficients(fz: np.ndarray, qmax: int, p: int, counter: Counter | None = None) -> np.ndarray:
    """``z**n`` coefficient of ``((f_z zeta)**q mu)(V)`` for ``q = 1..qmax`` (dense, ``2**n`` space).

    Returns shape ``(qmax,) + fz.shape[1:-1]``.
    """
    n = _lattice_bits(fz)
    zt = fast_zeta(fz, p, counter)
    signs = moebius_signs(n)
    out = np.empty((qmax,) + fz.shape[1:-1], dtype=np.int64)
    pw = zt
    for q in range(1, qmax + 1):
        out[q - 1] = _signed_sum(pw[..., n], signs, p)
        if q < qmax:
            pw = zpoly_mul(pw, zt, p)
            if counter is not None:
                counter["power"] += 1 << n
    return out


def submask_chunks(mask: int, chunk: int = CHUNK) -> Iterator[np.ndarray]:
    """All submasks of ``mask`` (including 0 and ``mask``) in arrays of at most ``chunk`` entries."""
    bits = []
    rest = mask
    while rest:
        b = rest & -rest
        bits.append(b)
        rest ^= b
    low_count = min(len(bits), max(chunk.bit_length() - 1, 0))
    low = np.zeros(1, dtype=np.int64)
    for b in bits[:low_count]:
        low = np.concatenate([low, low + b])
    high_mask = 0
    for b in bits[low_count:]:
        high_mask |= b
    sub = high_mask
    while True:
        yield low + sub
        if sub == 0:
            break
        sub = (sub - 1) & high_mask


def split_cover_coefficients(
    f: SetFunction,
    n: int,
    qmax: int,
    s: int,
    p: int,
    counter: Counter | None = None,
) -> np.ndarray:
    """Same values as :func:`cover_coefficients` for ``f_z = f z**|X|``, storing ``2**s`` ring elements.

    ``V`` splits into the ``s`` highest-labelled vertices (fast-transform
    side) and the rest (direct-summation side).  ``s = 0`` is the plain
    polynomial-space ``3**n`` evaluation.
    """
    return _split(f, n, qmax, s, p, counter, full=False)


def split_eval(f: SetFunction, n: int, q: int, s: int, p: int, counter: Counter | None = None) -> np.ndarray:
    """``((f_z zeta)**q mu)(V)`` as a full z-polynomial (cap ``n``) via the split transform."""
    return _split(f, n, q, s, p, counter, full=True)


def _split(f, n, qmax, s, p, counter, full):
    if not 0 <= s <= n:
        raise ValueError(f"split size {s} outside 0..{n}")
    n1 = n - s
    high = np.arange(1 << s, dtype=np.int64) << n1
    pc_high = np.bitwise_count(high).astype(np.int64)
    rows = np.arange(1 << s)
    signs2 = np.where((s - pc_high) & 1, -1, 1).astype(np.int64)
    chunk = max(1, CHUNK >> s)

    acc = None
    for Y1 in range(1 << n1):
        table = None
        for sub in submask_chunks(Y1, chunk):
            vals = f((sub[:, None] | high[None, :]).reshape(-1))
            vals = vals.reshape((len(sub), 1 << s) + vals.shape[1:])
            if table is None:
                table = np.zeros(((1 << s),) + vals.shape[2:] + (n + 1,), dtype=np.int64)
            deg1 = np.bitwise_count(sub).astype(np.int64)
            for d in np.unique(deg1):
                part = vals[deg1 == d].sum(axis=0) % p
                table[rows, ..., d + pc_high] += part
            if counter is not None:
                counter["transform"] += len(sub) << s
        table %= p
        zt = fast_zeta(table, p, counter)
        sign1 = -1 if (n1 - Y1.bit_count()) & 1 else 1
        if full:
            pw = zt
            for _ in range(qmax - 1):
                pw = zpoly_mul(pw, zt, p)
            if counter is not None:
                counter["power"] += (qmax - 1) << s
            part = sign1 * _signed_sum(pw, signs2, p)
        else:
            part = np.empty((qmax,) + zt.shape[1:-1], dtype=np.int64)
            pw = zt
            for q in range(1, qmax + 1):
                part[q - 1] = _signed_sum(pw[..., n], signs2, p)
                if q < qmax:
                    pw = zpoly_mul(pw, zt, p)
            if counter is not None:
                counter["power"] += (qmax - 1) << s
            part *= sign1
        acc = part % p if acc is None else (acc + part) % p
    return acc


def layered_convolve(S1: np.ndarray, Sk1: np.ndarray, d: int, p: int) -> tuple[np.ndarray, np.ndarray]:
    """``sum over nonempty proper U of W of S1(U) * Sk1(W \\ U)`` for every ``W`` with ``|W| = d``.

    Trailing axes of the two tables broadcast against each other.  Returns
    ``(masks, values)`` with ``values[k]`` belonging to ``masks[k]``.
    """
    n = _lattice_bits(S1)
    masks = np.flatnonzero(popcounts(n) == d).astype(np.int64)
    shape = np.broadcast_shapes(S1.shape[1:], Sk1.shape[1:])
    out = np.zeros((len(masks),) + shape, dtype=np.int64)
    if d < 2:
        return masks, out
    for k, W in enumerate(masks.tolist()):
        total = np.zeros(shape, dtype=np.int64)
        for sub in submask_chunks(W, SAFE_TERMS):
            sub = sub[(sub != 0) & (sub != W)]
            if len(sub):
                total = (total + (S1[sub] * Sk1[W ^ sub]).sum(axis=0)) % p
        out[k] = total
    return masks, out
