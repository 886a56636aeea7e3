"""Tutte coefficient tables: assembly from ``Z_G`` coefficients, components, checks, specialisations."""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb

from .errors import ConsistencyError
from .graph import Multigraph, connected_components, spanning_tree_count
from .potts import Strategy, ZCoefficients, z_coefficient_table


@dataclass
class TutteTable:
    """Sparse ``t[i, j]`` = coefficient of ``x**i y**j``, plus graph metadata."""

    n: int
    m: int
    components: int
    coeffs: dict[tuple[int, int], int] = field(default_factory=dict)

    def items(self) -> list[tuple[int, int, int]]:
        """Nonzero coefficients in lexicographic ``(i, j)`` order."""
        return [(i, j, c) for (i, j), c in sorted(self.coeffs.items()) if c]

    def total(self) -> int:
        return sum(self.coeffs.values())

    def __eq__(self, other):
        if not isinstance(other, TutteTable):
            return NotImplemented
        return self.items() == other.items()

    def __str__(self):
        return "\n".join(f"{i} {j} {c}" for i, j, c in self.items())


def _binomial_expansion(power: int) -> list[tuple[int, int]]:
    """``(t - 1)**power`` as ``[(exponent, coefficient)]``."""
    return [(i, comb(power, i) * (-1) ** (power - i)) for i in range(power + 1)]


def assemble_tutte(z: ZCoefficients, c: int, n: int, m: int) -> TutteTable:
    """Expand ``sum a[k][l] (x-1)**(k-c) (y-1)**(k+l-n)`` into monomials."""
    coeffs: dict[tuple[int, int], int] = {}
    for k, row in enumerate(z.a):
        for l, a in enumerate(row):
            if not a:
                continue
            ex, ey = k - c, k + l - n
            if ex < 0 or ey < 0:
                raise ConsistencyError(f"a[{k}][{l}] = {a} would need a negative exponent")
            for i, ci in _binomial_expansion(ex):
                for j, cj in _binomial_expansion(ey):
                    coeffs[(i, j)] = coeffs.get((i, j), 0) + a * ci * cj
    coeffs = {key: v for key, v in coeffs.items() if v}
    if any(v < 0 for v in coeffs.values()):
        raise ConsistencyError("negative Tutte coefficient")
    return TutteTable(n, m, c, coeffs)


def combine_components(tables: list[TutteTable]) -> TutteTable:
    """Product of the tables of vertex-disjoint pieces."""
    coeffs = {(0, 0): 1}
    n = m = c = 0
    for t in tables:
        nxt: dict[tuple[int, int], int] = {}
        for (i1, j1), a in coeffs.items():
            for (i2, j2), b in t.coeffs.items():
                nxt[(i1 + i2, j1 + j2)] = nxt.get((i1 + i2, j1 + j2), 0) + a * b
        coeffs = {key: v for key, v in nxt.items() if v}
        n, m, c = n + t.n, m + t.m, c + t.components
    return TutteTable(n, m, c, coeffs)


def tutte_polynomial(G: Multigraph, algorithm: Strategy | str = "dense", threads: int = 1) -> TutteTable:
    """Tutte coefficient table of ``G`` via the chosen pipeline, one connected component at a time."""
    strategy = Strategy.parse(algorithm) if isinstance(algorithm, str) else algorithm
    pieces = [G.induced(mask) for mask in connected_components(G)]

    def solve(H: Multigraph) -> TutteTable:
        if H.m == 0:
            return TutteTable(H.n, 0, 1, {(0, 0): 1})
        return assemble_tutte(z_coefficient_table(H, strategy, threads=1 if len(pieces) > 1 else threads), 1, H.n, H.m)

    if threads > 1 and len(pieces) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            tables = list(pool.map(solve, pieces))
    else:
        tables = [solve(H) for H in pieces]
    return combine_components(tables)


@dataclass
class CheckReport:
    tau: int
    total: int
    eval22: int
    two_m: int

    @property
    def sum_eq_tau(self) -> bool:
        return self.tau == self.total

    @property
    def eval22_eq_2m(self) -> bool:
        return self.eval22 == self.two_m

    @property
    def ok(self) -> bool:
        return self.sum_eq_tau and self.eval22_eq_2m

    def lines(self) -> list[str]:
        def word(flag):
            return "pass" if flag else "FAIL"

        return [
            f"check sum_eq_tau {word(self.sum_eq_tau)} {self.total} {self.tau}",
            f"check eval22_eq_2m {word(self.eval22_eq_2m)} {self.eval22} {self.two_m}",
        ]


def consistency_check(t: TutteTable, G: Multigraph) -> CheckReport:
    """Compare ``sum t_ij`` with the spanning-tree count and ``T(2, 2)`` with ``2**m``.

    For disconnected ``G`` the tree count is the product over components.
    """
    tau = 1
    for mask in connected_components(G):
        tau *= spanning_tree_count(G.induced(mask))
    eval22 = sum(c << (i + j) for (i, j), c in t.coeffs.items())
    return CheckReport(tau, t.total(), eval22, 1 << G.m)


def evaluate(t: TutteTable, x, y) -> Fraction:
    x, y = Fraction(x), Fraction(y)
    return sum((c * x**i * y**j for (i, j), c in t.coeffs.items()), Fraction(0))


def chromatic_polynomial(t: TutteTable, G: Multigraph) -> list[int]:
    """Coefficients (ascending powers of ``t``) of ``(-1)**(n-c) t**c T(1 - t, 0)``."""
    n, c = G.n, len(connected_components(G))
    poly = [0] * (n + 1)
    for (i, j), coeff in t.coeffs.items():
        if j:
            continue
        # (1 - t)**i; the x-degree of T never exceeds n - c
        for k in range(i + 1):
            poly[c + k] += coeff * comb(i, k) * (-1) ** k
    sign = -1 if (n - c) % 2 else 1
    return [sign * v for v in poly]


def poly_eval(coeffs: list[int], t) -> Fraction:
    t = Fraction(t)
    return sum((c * t**k for k, c in enumerate(coeffs)), Fraction(0))


def reliability(t: TutteTable, G: Multigraph, p) -> Fraction:
    """Probability that no component of ``G`` falls apart when each edge survives independently with probability ``p``.

    Equals ``(1-p)**(m-n+c) p**(n-c) T(1, 1/(1-p))``.
    """
    p = Fraction(p)
    if not 0 < p < 1:
        raise ValueError("p must lie strictly between 0 and 1")
    n, m, c = G.n, G.m, len(connected_components(G))
    fail = 1 - p
    return fail ** (m - n + c) * p ** (n - c) * evaluate(t, 1, 1 / fail)
