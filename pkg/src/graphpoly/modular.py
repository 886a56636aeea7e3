"""Prime-field kernels: truncated z-polynomials, interpolation, CRT.

A z-polynomial is a numpy ``int64`` array whose LAST axis holds the
coefficients ``c_0..c_cap``; leading axes batch independent ring elements
(different vertex sets, different edge-weight evaluation points, ...).
Primes stay below ``2**26`` so that sums of up to ``2**11`` products of
reduced residues fit in ``int64`` before the next reduction.
"""

from __future__ import annotations

from math import prod

import numpy as np
from sympy import prevprime

PRIME_CEILING = 1 << 26
# products of two residues are < 2**52; this many of them sum safely in int64
SAFE_TERMS = 1 << 11


def choose_primes(coeff_bound: int, node_max: int, *, below: int = PRIME_CEILING) -> list[int]:
    """Successive primes descending from ``below`` whose product exceeds ``coeff_bound``.

    Every prime is larger than ``node_max`` so interpolation nodes stay
    distinct and small factorials stay invertible.
    """
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be >= 1")
    primes: list[int] = []
    p = below
    while not primes or prod(primes) <= coeff_bound:
        p = prevprime(p)
        if p <= max(node_max, 2):
            raise ValueError(f"ran out of primes above {node_max}")
        primes.append(p)
    return primes


def _check_pair(a: np.ndarray, b: np.ndarray) -> None:
    if a.shape[-1] != b.shape[-1]:
        raise ValueError(f"truncation mismatch: cap {a.shape[-1] - 1} vs {b.shape[-1] - 1}")


def zpoly(coeffs, cap: int, p: int) -> np.ndarray:
    """Build a z-polynomial with truncation degree ``cap`` from a coefficient list."""
    out = np.zeros(cap + 1, dtype=np.int64)
    coeffs = [int(c) % p for c in coeffs][: cap + 1]
    out[: len(coeffs)] = coeffs
    return out


def zpoly_mul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """Truncated product; degrees above the cap are dropped.  Broadcasts over leading axes."""
    _check_pair(a, b)
    width = a.shape[-1]
    shape = np.broadcast_shapes(a.shape, b.shape)
    out = np.zeros(shape, dtype=np.int64)
    for i in range(width):
        out[..., i:] += a[..., i : i + 1] * b[..., : width - i]
    out %= p
    return out


def zpoly_pow(a: np.ndarray, q: int, p: int) -> np.ndarray:
    """``a ** q`` by repeated squaring (``q >= 0``)."""
    if q < 0:
        raise ValueError("negative exponent")
    result = np.zeros_like(a)
    result[..., 0] = 1
    base = a % p
    while q:
        if q & 1:
            result = zpoly_mul(result, base, p)
        q >>= 1
        if q:
            base = zpoly_mul(base, base, p)
    return result


def mod_matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    """``a @ b mod p`` for reduced int64 operands, chunking the inner axis against overflow."""
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    inner = a.shape[-1]
    if inner <= SAFE_TERMS:
        return (a @ b) % p
    out = None
    for lo in range(0, inner, SAFE_TERMS):
        part = (a[..., lo : lo + SAFE_TERMS] @ b[..., lo : lo + SAFE_TERMS, :]) % p
        out = part if out is None else (out + part) % p
    return out


def interpolation_matrix(nodes: list[int], p: int) -> np.ndarray:
    """Matrix ``L`` with ``L @ values = coefficients`` of the interpolating polynomial.

    ``L[k, j]`` is the ``x**k`` coefficient of the ``j``-th Lagrange basis
    polynomial.  Built from the master polynomial by synthetic division.
    """
    nodes = [x % p for x in nodes]
    size = len(nodes)
    if len(set(nodes)) != size:
        raise ValueError("interpolation nodes must be distinct modulo p")
    master = [1]
    for x in nodes:
        nxt = [0] * (len(master) + 1)
        for k, c in enumerate(master):
            nxt[k + 1] = (nxt[k + 1] + c) % p
            nxt[k] = (nxt[k] - x * c) % p
        master = nxt
    L = np.zeros((size, size), dtype=np.int64)
    for j, xj in enumerate(nodes):
        # master / (x - xj), highest degree first
        quot = [0] * size
        carry = 0
        for k in range(size, 0, -1):
            carry = (master[k] + carry * xj) % p
            quot[k - 1] = carry
        denom = 1
        for k, xk in enumerate(nodes):
            if k != j:
                denom = denom * (xj - xk) % p
        inv = pow(denom, -1, p)
        L[:, j] = [c * inv % p for c in quot]
    return L


def lagrange_interpolate(nodes: list[int], values, p: int) -> list[int]:
    """Coefficients (ascending) of the unique degree ``len(nodes) - 1`` polynomial through the points."""
    L = interpolation_matrix(nodes, p)
    vals = np.asarray([int(v) % p for v in values], dtype=np.int64)
    if vals.shape[0] != L.shape[0]:
        raise ValueError("need exactly one value per node")
    return [int(c) for c in mod_matmul(L, vals[:, None], p)[:, 0]]


def crt_reconstruct(residues: list[tuple[int, int]], *, signed: bool = False) -> int:
    """Integer in ``[0, P)`` (or ``(-P/2, P/2]`` when ``signed``) matching every ``(prime, value)`` pair."""
    if len({p for p, _ in residues}) != len(residues):
        raise ValueError("moduli must be distinct")
    x, modulus = 0, 1
    for p, r in residues:
        # lift x so that x = r (mod p) while keeping x mod modulus
        t = (r - x) * pow(modulus, -1, p) % p
        x += modulus * t
        modulus *= p
    if signed and x > modulus // 2:
        x -= modulus
    return x


def crt_table(primes: list[int], tables: list[np.ndarray], *, signed: bool = False) -> list:
    """Entrywise CRT of equally shaped residue arrays into nested lists of Python ints."""
    stacked = np.stack([np.asarray(t, dtype=np.int64) for t in tables])
    flat = stacked.reshape(len(primes), -1)
    values = [
        crt_reconstruct([(p, int(flat[k, idx])) for k, p in enumerate(primes)], signed=signed)
        for idx in range(flat.shape[1])
    ]
    return np.array(values, dtype=object).reshape(stacked.shape[1:]).tolist()
