"""Component-count recursion over induced subgraphs.

``S[W, k]`` sums ``prod r_e`` over edge sets of ``G[W]`` with exactly ``k``
components on vertex set ``W``.  Sets are processed by cardinality:
first the disconnected counts via a convolution over the component that
holds a chosen part, then the connected count by subtraction.
"""

from __future__ import annotations

import numpy as np

from .graph import Multigraph
from .induced import InducedProduct
from .transforms import layered_convolve


def s_table(G: Multigraph, f: InducedProduct) -> np.ndarray:
    """``S`` with shape ``(2**n, n + 1, batch)``; index ``[W, k]``, ``k = 0`` unused."""
    n, p = G.n, f.p
    full = f.table()
    S = np.zeros((1 << n, n + 1, f.batch), dtype=np.int64)
    inverses = [0, 0] + [pow(k, -1, p) for k in range(2, n + 1)]
    for d in range(1, n + 1):
        # the empty set never carries components, so excluded U = W terms would vanish anyway
        assert not S[0].any()
        masks, conv = layered_convolve(S[:, 1:2], S[:, 1:n], d, p)
        if d >= 2:
            for k in range(2, d + 1):
                S[masks, k] = conv[:, k - 2] * inverses[k] % p
        S[masks, 1] = (full[masks] - S[masks, 2:].sum(axis=1)) % p
    return S


def z_from_s(S: np.ndarray, q: int, p: int) -> np.ndarray:
    """``Z(q, w) = sum_k q**k S[V, k]`` for each batch entry."""
    top = S[-1]
    total = np.zeros(top.shape[1:], dtype=np.int64)
    qk = 1
    for k in range(1, top.shape[0]):
        qk = qk * q % p
        total = (total + qk * top[k]) % p
    return total
