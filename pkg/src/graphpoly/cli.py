"""Command-line front end.

Exit codes: 0 success, 1 unreadable or malformed input, 2 capacity or
memory budget exceeded, 3 internal consistency failure.  Results go to
standard output and are identical for every ``--threads`` value and every
``--algorithm`` choice; diagnostics go to standard error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

import numpy as np

from .cover import FAST_MAX_VERTICES, CoverTable, cover_evaluate, cover_table
from .errors import BudgetExceeded, CapacityError, ConsistencyError, GraphFormatError
from .graph import Multigraph, as_fraction, connected_components, count_connected_sets, parse_graph, spanning_tree_count
from .induced import InducedProduct
from .modular import choose_primes, crt_reconstruct
from .oracles import tutte_bruteforce, tutte_deletion_contraction
from .potts import Strategy
from .transforms import cover_coefficients, split_cover_coefficients, weight_by_size
from .tutte import (
    TutteTable,
    chromatic_polynomial,
    consistency_check,
    evaluate,
    poly_eval,
    reliability,
    tutte_polynomial,
)

log = logging.getLogger("graphpoly")

COMMANDS = ("tutte", "cover", "tau", "sigma", "eval", "chromatic", "reliability", "potts")
DEFAULT_BUDGET = 4 << 30
# live int64 copies of a (2**n, n + 1) table during the dense transforms
DENSE_COPIES = 4
ORACLE_MAX_EDGES = 22


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="graphpoly", description="Exact Tutte and cover polynomials of small graphs.")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("graph", help="edge-list file, or - for standard input")
    parser.add_argument("--algorithm", default="auto", help="auto, dense, polyspace, split:S, connected or recursion")
    parser.add_argument("--oracle-check", action="store_true", help="also run a brute-force oracle and compare")
    parser.add_argument("--json", action="store_true")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--memory-budget", type=int, default=DEFAULT_BUDGET, metavar="BYTES")
    parser.add_argument("--split", type=int, metavar="S", help="shorthand for --algorithm split:S")
    parser.add_argument("--eval", nargs=2, metavar=("X", "Y"), help='evaluation point, rationals like "3/2"')
    parser.add_argument("--q", help="number of Potts states, or the chromatic evaluation point")
    parser.add_argument("--p", help="edge survival probability for reliability")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to standard error")
    return parser


def dense_bytes(width: int, n: int) -> int:
    return DENSE_COPIES * 8 * (n + 1) << width


def choose_strategy(text: str, n: int, budget: int) -> Strategy:
    """Resolve ``--algorithm`` for a component with ``n`` vertices, enforcing the memory budget."""
    if text == "auto":
        if dense_bytes(n, n) <= budget:
            return Strategy("dense")
        s = n - 1
        while s > 0 and dense_bytes(s, n) > budget:
            s -= 1
        return Strategy("split", s) if s else Strategy("direct")
    try:
        strategy = Strategy.parse(text)
    except ValueError as exc:
        raise UsageError(f"bad --algorithm {text!r}") from exc
    if strategy.name == "split" and not 0 <= strategy.s:
        raise UsageError("split:S needs S >= 0")
    if strategy.name in ("dense", "recursion") and dense_bytes(n, n) > budget:
        raise BudgetExceeded(f"{strategy} needs about {dense_bytes(n, n)} bytes, budget is {budget}")
    if strategy.name == "split" and dense_bytes(min(strategy.s, n), n) > budget:
        raise BudgetExceeded(f"{strategy} exceeds the memory budget of {budget} bytes")
    return strategy


def _check_split(strategy: Strategy, n: int) -> None:
    if strategy.name == "split" and strategy.s > n:
        raise UsageError(f"split:{strategy.s} needs s <= n = {n}")


def _connected_budget(G: Multigraph, budget: int) -> None:
    # one (n+1) x (n+1) x (n+1) table per connected induced subgraph
    need = 8 * (G.n + 1) ** 3 * count_connected_sets(G)
    if need > budget:
        raise BudgetExceeded(f"connected-sets tables need about {need} bytes, budget is {budget}")


def compute_tutte(G: Multigraph, args) -> TutteTable:
    text = f"split:{args.split}" if args.split is not None else args.algorithm
    biggest = max((mask.bit_count() for mask in connected_components(G)), default=0)
    strategy = choose_strategy(text, biggest, args.memory_budget)
    _check_split(strategy, G.n)
    if strategy.name == "connected":
        _connected_budget(G, args.memory_budget)
    log.info("tutte: n=%d m=%d strategy=%s", G.n, G.m, strategy)
    t = tutte_polynomial(G, strategy, threads=args.threads)
    if args.oracle_check:
        oracle = tutte_bruteforce(G) if G.m <= ORACLE_MAX_EDGES else tutte_deletion_contraction(G)[0]
        if oracle != t:
            raise ConsistencyError("Tutte table differs from the brute-force oracle")
        log.info("oracle check passed")
    return t


def _rational(text: str) -> Fraction:
    try:
        return as_fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"not a rational number: {text!r}") from exc


def _dec(x: Fraction) -> str:
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def potts_exact(G: Multigraph, q: int, strategy: Strategy) -> int:
    """Integer Potts sum ``sum over spin maps of prod (1 + r_e [agree])`` with the file's edge weights."""
    weights = list(G.weights) if G.weights is not None else [1] * G.m
    bound = q**G.n
    for r in weights:
        bound *= 1 + abs(r)
    primes = choose_primes(2 * bound + 1, max(G.n + 1, G.m + 1, q + 1))
    residues = []
    for p in primes:
        factors = np.array([[(1 + r) % p] for r in weights], dtype=np.int64).reshape(G.m, 1)
        f = InducedProduct(G, factors, p)
        if strategy.name == "dense":
            vals = cover_coefficients(weight_by_size(f.table(), G.n), q, p)
        else:
            s = strategy.split_size(G.n) if strategy.name == "split" else 0
            vals = split_cover_coefficients(f, G.n, q, s, p)
        residues.append((p, int(vals[q - 1, 0])))
    return crt_reconstruct(residues, signed=True)


def _emit(args, text_lines: list[str], payload: dict) -> None:
    if args.json:
        print(json.dumps(payload, separators=(",", ":")))
    else:
        for line in text_lines:
            print(line)


def _cover_mode(args, n: int) -> str:
    text = f"split:{args.split}" if args.split is not None else args.algorithm
    fits = n <= FAST_MAX_VERTICES and dense_bytes(n, n) <= args.memory_budget
    if text == "auto":
        return "fast" if fits else "polyspace"
    if text == "dense":
        if not fits:
            raise BudgetExceeded("the 2**n cover tables do not fit the memory budget")
        return "fast"
    if text == "polyspace":
        return "polyspace"
    raise UsageError(f"cover supports --algorithm auto, dense or polyspace, not {text!r}")


def run(args) -> int:
    directed = args.command == "cover"
    if args.graph == "-":
        G = parse_graph(sys.stdin, directed=directed)
    else:
        with open(args.graph, encoding="utf-8") as fh:
            G = parse_graph(fh, directed=directed)

    if args.command == "cover":
        mode = _cover_mode(args, G.n)
        log.info("cover: n=%d m=%d mode=%s", G.n, G.m, mode)
        t: CoverTable = cover_table(G, mode, threads=args.threads)
        if any(c < 0 for c in t.coeffs.values()) or sum(t.coeffs.values()) > 1 << G.m:
            raise ConsistencyError("cover table violates its nonnegativity or size bound")
        if args.oracle_check:
            from .oracles import cover_bruteforce

            if t.coeffs != {k: v for k, v in cover_bruteforce(G).items() if v}:
                raise ConsistencyError("cover table differs from the brute-force oracle")
        lines = [f"{i} {j} {c}" for i, j, c in t.items()]
        payload = {"n": G.n, "m": G.m, "cover": [[i, j, str(c)] for i, j, c in t.items()]}
        if args.eval:
            value = cover_evaluate(t, _rational(args.eval[0]), _rational(args.eval[1]))
            lines.append(f"value {_dec(value)}")
            payload["value"] = _dec(value)
        _emit(args, lines, payload)
        return 0

    if args.command == "tau":
        tau = spanning_tree_count(G)
        _emit(args, [str(tau)], {"n": G.n, "m": G.m, "tau": str(tau)})
        return 0

    if args.command == "sigma":
        sigma = count_connected_sets(G)
        _emit(args, [str(sigma)], {"n": G.n, "m": G.m, "sigma": str(sigma)})
        return 0

    if args.command == "potts":
        if args.q is None:
            raise UsageError("potts needs --q")
        q = int(args.q)
        if q < 1:
            raise UsageError("--q must be a positive integer")
        strategy = choose_strategy(args.algorithm if args.split is None else f"split:{args.split}", G.n, args.memory_budget)
        if strategy.name not in ("dense", "split", "direct"):
            strategy = Strategy("dense")
        value = potts_exact(G, q, strategy)
        _emit(args, [str(value)], {"n": G.n, "m": G.m, "q": q, "value": str(value)})
        return 0

    t = compute_tutte(G, args)
    report = consistency_check(t, G)

    if args.command == "tutte":
        lines = [str(t)] if t.coeffs else []
        lines += report.lines()
        payload = {
            "n": G.n,
            "m": G.m,
            "components": t.components,
            "coefficients": [[i, j, str(c)] for i, j, c in t.items()],
            "checks": {"sum_eq_tau": report.sum_eq_tau, "eval22_eq_2m": report.eval22_eq_2m},
        }
        _emit(args, lines, payload)
    elif args.command == "eval":
        if not args.eval:
            raise UsageError("eval needs --eval X Y")
        value = evaluate(t, _rational(args.eval[0]), _rational(args.eval[1]))
        _emit(args, [_dec(value)], {"n": G.n, "m": G.m, "value": _dec(value)})
    elif args.command == "chromatic":
        poly = chromatic_polynomial(t, G)
        lines = [f"{k} {c}" for k, c in enumerate(poly) if c]
        payload = {"n": G.n, "m": G.m, "chromatic": [[k, str(c)] for k, c in enumerate(poly) if c]}
        if args.q is not None:
            value = poly_eval(poly, _rational(args.q))
            lines.append(f"value {_dec(value)}")
            payload["value"] = _dec(value)
        _emit(args, lines, payload)
    elif args.command == "reliability":
        if args.p is None:
            raise UsageError("reliability needs --p")
        try:
            value = reliability(t, G, _rational(args.p))
        except ValueError as exc:
            raise UsageError(str(exc)) from exc
        _emit(args, [_dec(value)], {"n": G.n, "m": G.m, "value": _dec(value)})

    if not report.ok:
        for line in report.lines():
            print(line, file=sys.stderr)
        return 3
    return 0


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except UsageError as exc:
        print(f"graphpoly: {exc}", file=sys.stderr)
        return 1
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(name)s: %(message)s")
    if args.threads < 1:
        print("graphpoly: --threads must be at least 1", file=sys.stderr)
        return 1
    try:
        return run(args)
    except UsageError as exc:
        print(f"graphpoly: {exc}", file=sys.stderr)
        return 1
    except CapacityError as exc:
        print(f"graphpoly: {exc}", file=sys.stderr)
        return 2
    except GraphFormatError as exc:
        print(f"graphpoly: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"graphpoly: {exc}", file=sys.stderr)
        return 1
    except BudgetExceeded as exc:
        print(f"graphpoly: {exc}", file=sys.stderr)
        return 2
    except ConsistencyError as exc:
        print(f"graphpoly: consistency failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
