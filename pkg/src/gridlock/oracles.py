"""Independent ground truth for locally-optimal counts.

Nothing here uses the recurrences: colorings are enumerated outright,
locally-optimal partitions are found by scanning every set partition, and
polynomials are recovered from counts by exact Lagrange interpolation.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Iterator, Mapping

import numpy as np

from .graph import Graph, is_connected
from .polynomial import IntPolynomial, falling_factorial, interpolate

log = logging.getLogger(__name__)

DEFAULT_COLORING_BUDGET = 2 ** 34
DEFAULT_PARTITION_BUDGET = 4_213_597   # Bell(12)
_CHUNK = 1 << 16


class BudgetExceeded(RuntimeError):
    def __init__(self, what: str, needed: int, budget: int):
        super().__init__(f"{what} needs {needed} cases, over the budget of {budget}")
        self.needed = needed
        self.budget = budget


class InterpolationError(ArithmeticError):
    pass


def is_locally_optimal(g: Graph, coloring: Mapping[int, int]) -> bool:
    """Check a single coloring; every vertex needs a strict plurality of its own color."""
    missing = set(g.roles) - set(coloring)
    if missing:
        raise ValueError(f"coloring is missing vertices {sorted(missing)}")
    for t1, t2 in g.same_color_pairs():
        if coloring[t1] != coloring[t2]:
            return False
    for v, nbrs in g.adjacency.items():
        if not nbrs:
            return False
        tally: dict[int, int] = {}
        for w in nbrs:
            tally[coloring[w]] = tally.get(coloring[w], 0) + 1
        own = tally.pop(coloring[v], 0)
        if any(c >= own for c in tally.values()):
            return False
    return True


# -- brute force -----------------------------------------------------------

def _arrays(g: Graph):
    order = sorted(g.roles)
    pos = {v: i for i, v in enumerate(order)}
    n = len(order)
    adj = np.zeros((n, n), dtype=np.float32)
    for u, w in g.voting_edges:
        adj[pos[u], pos[w]] = adj[pos[w], pos[u]] = 1.0
    ties = np.array([(pos[a], pos[b]) for a, b in sorted(g.same_color_pairs())],
                    dtype=np.int64).reshape(-1, 2)
    return adj, ties


def _count_range(args) -> int:
    adj, ties, k, start, stop = args
    n = adj.shape[0]
    weights = np.array([k ** i for i in range(n)], dtype=np.int64)
    total = 0
    for lo in range(start, stop, _CHUNK):
        idx = np.arange(lo, min(stop, lo + _CHUNK), dtype=np.int64)
        colors = (idx[:, None] // weights[None, :]) % k          # (m, n)
        ok = np.ones(len(idx), dtype=bool)
        for a, b in ties:
            ok &= colors[:, a] == colors[:, b]
        if not ok.any():
            continue
        colors = colors[ok]
        onehot = (colors[:, None, :] == np.arange(k)[None, :, None]).astype(np.float32)
        tally = onehot @ adj                                     # (m, k, n)
        own = np.take_along_axis(tally, colors[:, None, :], axis=1)[:, 0, :]
        np.put_along_axis(tally, colors[:, None, :], -1.0, axis=1)
        best_other = tally.max(axis=1) if k > 1 else np.full_like(own, -1.0)
        total += int(np.count_nonzero((own > best_other).all(axis=1)))
    return total


def brute_force_lo_count(g: Graph, k: int, *, budget: int = DEFAULT_COLORING_BUDGET,
                         workers: int = 1) -> int:
    """Number of locally-optimal ``k``-colorings, by enumerating all ``k^n``."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    n = len(g.roles)
    if n == 0:
        return 1
    if k == 0:
        return 0
    if any(not nbrs for nbrs in g.adjacency.values()):
        # an isolated vertex never has a plurality; no need to enumerate
        return 0
    total = k ** n
    if total > budget:
        raise BudgetExceeded("coloring enumeration", total, budget)
    adj, ties = _arrays(g)
    if workers <= 1 or total <= _CHUNK:
        return _count_range((adj, ties, k, 0, total))
    step = -(-total // (workers * 4))
    jobs = [(adj, ties, k, s, min(total, s + step)) for s in range(0, total, step)]
    with ProcessPoolExecutor(workers) as pool:
        return sum(pool.map(_count_range, jobs))


def count_with_condition(g: Graph, k: int, condition, *, budget: int = DEFAULT_COLORING_BUDGET) -> int:
    """Locally-optimal colorings that also satisfy ``condition(coloring)``; slow path."""
    n = len(g.roles)
    if k ** n > budget:
        raise BudgetExceeded("coloring enumeration", k ** n, budget)
    order = sorted(g.roles)
    count = 0
    for colors in np.ndindex(*([k] * n)):
        c = dict(zip(order, colors))
        if condition(c) and is_locally_optimal(g, c):
            count += 1
    return count


# -- partitions ------------------------------------------------------------

def _bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for x in row:
            nxt.append(nxt[-1] + x)
        row = nxt
    return row[0]


def restricted_growth_strings(n: int) -> Iterator[list[int]]:
    """All restricted growth strings of length ``n``, lexicographically."""
    if n == 0:
        yield []
        return
    a = [0] * n
    while True:
        yield list(a)
        # rightmost position that may still grow
        i = n - 1
        while i > 0 and a[i] > max(a[:i]):
            i -= 1
        if i == 0:
            return
        a[i] += 1
        a[i + 1:] = [0] * (n - i - 1)


def enumerate_lo_partitions(g: Graph, *, budget: int = DEFAULT_PARTITION_BUDGET) -> list[list[frozenset[int]]]:
    """Every locally-optimal set partition of the vertices.

    Partitions come out in lexicographic order of their restricted growth
    strings over the sorted vertex list; blocks are listed in order of first
    appearance.
    """
    order = sorted(g.roles)
    need = _bell(len(order))
    if need > budget:
        raise BudgetExceeded("partition enumeration", need, budget)
    out = []
    for rgs in restricted_growth_strings(len(order)):
        labels = dict(zip(order, rgs))
        if is_locally_optimal(g, labels):
            blocks: dict[int, set[int]] = {}
            for v, b in labels.items():
                blocks.setdefault(b, set()).add(v)
            out.append([frozenset(blocks[b]) for b in sorted(blocks)])
    return out


def lo_polynomial_via_partitions(g: Graph, *, budget: int = DEFAULT_PARTITION_BUDGET) -> IntPolynomial:
    """Sum of falling factorials ``k^(|pi|)`` over locally-optimal partitions."""
    if not g.roles:
        return IntPolynomial([1])
    total = IntPolynomial()
    for part in enumerate_lo_partitions(g, budget=budget):
        total = total + falling_factorial(len(part))
    return total


def partition_statistics(g: Graph, *, budget: int = DEFAULT_PARTITION_BUDGET) -> tuple[int, int]:
    """``(max block count, number of partitions attaining it)``; ``(0, 0)`` if none."""
    sizes = [len(p) for p in enumerate_lo_partitions(g, budget=budget)]
    if not sizes:
        return 0, 0
    top = max(sizes)
    return top, sizes.count(top)


# -- interpolation ---------------------------------------------------------

def lo_polynomial_via_interpolation(g: Graph, *, degree_bound: int | None = None,
                                    budget: int = DEFAULT_COLORING_BUDGET,
                                    workers: int = 1) -> IntPolynomial:
    """Interpolate brute-force counts at ``k = 0..d``.

    ``d`` defaults to ``floor(n/3)``, the degree bound for a connected graph
    on ``n >= 3`` vertices.  A fractional coefficient means the bound was
    wrong for this graph and raises :class:`InterpolationError`.
    """
    n = len(g.roles)
    if degree_bound is None:
        if n < 3 or not is_connected(g):
            raise ValueError("the default degree bound needs a connected graph on >= 3 vertices")
        degree_bound = n // 3
    points = [(k, brute_force_lo_count(g, k, budget=budget, workers=workers))
              for k in range(degree_bound + 1)]
    coeffs = interpolate(points)
    bad = [c for c in coeffs if Fraction(c).denominator != 1]
    if bad:
        raise InterpolationError(f"non-integral interpolation coefficient {bad[0]}; "
                                 "the degree bound does not hold")
    return IntPolynomial(int(c) for c in coeffs)
