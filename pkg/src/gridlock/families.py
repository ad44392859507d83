"""Named graph families, including the two 5x5 clique graphs."""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass

from .graph import Graph, GraphError, is_connected
from .oracles import is_locally_optimal

FAMILY_NAMES = ("complete", "path", "cycle", "star", "triangle_chain",
                "clique_cycle", "clique_matching")
_MIN_PARAM = {"complete": 1, "path": 1, "cycle": 3, "star": 1, "triangle_chain": 1}


@dataclass(frozen=True)
class FamilySpec:
    name: str
    parameter: int | None = None

    def __post_init__(self):
        if self.name not in FAMILY_NAMES:
            raise GraphError(f"unknown family {self.name!r}; choose from {', '.join(FAMILY_NAMES)}")
        lo = _MIN_PARAM.get(self.name)
        if lo is None:
            if self.parameter is not None:
                raise GraphError(f"family {self.name} takes no parameter")
        elif self.parameter is None or self.parameter < lo:
            raise GraphError(f"family {self.name} needs an integer parameter >= {lo}")


def complete(n: int) -> Graph:
    return Graph(range(n), itertools.combinations(range(n), 2))


def path(n: int) -> Graph:
    return Graph(range(n), ((i, i + 1) for i in range(n - 1)))


def cycle(n: int) -> Graph:
    return Graph(range(n), ((i, (i + 1) % n) for i in range(n)))


def star(leaves: int) -> Graph:
    """Centre ``0`` joined to ``1..leaves``."""
    return Graph(range(leaves + 1), ((0, i) for i in range(1, leaves + 1)))


def triangle_chain(d: int) -> Graph:
    """``d`` triangles ``{3i, 3i+1, 3i+2}`` with bridges ``(3i+2, 3i+3)``.

    The smallest connected graph whose LO-polynomial has degree ``d``.
    """
    edges = []
    for i in range(d):
        a, b, c = 3 * i, 3 * i + 1, 3 * i + 2
        edges += [(a, b), (a, c), (b, c)]
        if i + 1 < d:
            edges.append((c, c + 1))
    return Graph(range(3 * d), edges)


def _clique_skeleton():
    """Five 5-cliques on ids ``5i..5i+4``; ``5i`` is the exterior vertex."""
    edges = []
    for i in range(5):
        edges += itertools.combinations(range(5 * i, 5 * i + 5), 2)
    return edges


def clique_blocks() -> list[frozenset[int]]:
    return [frozenset(range(5 * i, 5 * i + 5)) for i in range(5)]


def clique_cycle() -> Graph:
    """Cliques linked pair-to-pair around a 5-cycle.

    Clique ``i`` has interior pairs ``{5i+1, 5i+2}`` and ``{5i+3, 5i+4}``.  The
    first pair is completely joined to the second pair of cliques ``i-1`` and
    ``i-2`` (mod 5), so each clique pair shares exactly one 4-edge block and
    the two vertices of a pair have the same neighbours.
    """
    edges = _clique_skeleton()
    for i in range(5):
        back = (5 * i + 1, 5 * i + 2)
        for j in ((i - 1) % 5, (i - 2) % 5):
            edges += [(a, b) for a in back for b in (5 * j + 3, 5 * j + 4)]
    return Graph(range(25), edges)


def clique_matching() -> Graph:
    """Cliques linked by aligned perfect matchings.

    Interior ``m`` of clique ``i`` (id ``5i+1+m``) is joined to interior ``m``
    of every other clique.
    """
    edges = _clique_skeleton()
    for i, j in itertools.combinations(range(5), 2):
        edges += [(5 * i + 1 + m, 5 * j + 1 + m) for m in range(4)]
    return Graph(range(25), edges)


_BUILDERS = {
    "complete": complete,
    "path": path,
    "cycle": cycle,
    "star": star,
    "triangle_chain": triangle_chain,
    "clique_cycle": clique_cycle,
    "clique_matching": clique_matching,
}


def build(spec: FamilySpec | str, parameter: int | None = None) -> Graph:
    if isinstance(spec, str):
        spec = FamilySpec(spec, parameter)
    f = _BUILDERS[spec.name]
    return f() if spec.parameter is None else f(spec.parameter)


def reduced_clique_lo_count(g: Graph, cliques, k: int) -> int:
    """Locally-optimal ``k``-colorings that are constant on each clique.

    Only ``k^len(cliques)`` colorings are enumerated, so this equals the full
    count only for graphs in which every locally-optimal coloring is constant
    on the cliques (as for both clique graphs above).
    """
    cliques = [frozenset(c) for c in cliques]
    seen: set[int] = set()
    for c in cliques:
        if not c or seen & c:
            raise GraphError("cliques must be nonempty and pairwise disjoint")
        seen |= c
    if seen != set(g.roles):
        raise GraphError("cliques must cover the vertex set")
    count = 0
    for colors in itertools.product(range(k), repeat=len(cliques)):
        coloring = {v: col for c, col in zip(cliques, colors) for v in c}
        if is_locally_optimal(g, coloring):
            count += 1
    return count


def random_connected_graph(n: int, p: float, seed: int) -> Graph:
    """Seeded Erdos-Renyi draw, rejected until connected; test plumbing only."""
    rng = random.Random(seed)
    pairs = list(itertools.combinations(range(n), 2))
    while True:
        edges = [e for e in pairs if rng.random() < p]
        g = Graph(range(n), edges)
        if n <= 1 or is_connected(g):
            return g
