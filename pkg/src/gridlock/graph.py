"""Graph model with voting and non-voting edges.

A :class:`Graph` is an immutable value.  Every structural edit
(subdividing an edge, hanging a leaf, adding a non-voting edge) returns a
new graph and leaves the receiver untouched, so graphs can be used as
dictionary keys and shipped to worker processes freely.

Only voting edges count towards degrees and pluralities.  Non-voting edges
(and the "extra constraints" recorded when a non-voting edge is requested
between two endpoints that already share a voting edge) only force their
endpoints to take the same color.
"""

from __future__ import annotations

import enum
from functools import cached_property
from typing import Iterable, Iterator


class GraphError(ValueError):
    """Raised on malformed graphs or invalid structural edits."""


class Role(enum.Enum):
    ORIGINAL = "original"
    SUBDIVISION = "subdivision"
    LEAF = "leaf"


def _pair(u: int, w: int) -> tuple[int, int]:
    return (u, w) if u < w else (w, u)


class UnionFind:
    """Plain union-find over hashable items."""

    def __init__(self, items: Iterable = ()):
        self.parent = {x: x for x in items}

    def add(self, x) -> None:
        self.parent.setdefault(x, x)

    def find(self, x):
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        # smaller root wins so that representatives are deterministic
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True

    def groups(self) -> list[frozenset]:
        out: dict = {}
        for x in self.parent:
            out.setdefault(self.find(x), []).append(x)
        return sorted((frozenset(g) for g in out.values()), key=min)


class Graph:
    """Simple undirected graph with role-tagged vertices.

    Parameters
    ----------
    vertices:
        Either an iterable of integer ids (all tagged ``Role.ORIGINAL``) or
        a mapping ``id -> Role``.
    voting_edges, non_voting_edges:
        Iterables of 2-element pairs.
    constraints:
        Extra same-color pairs that coincide with voting edges.  Normally
        populated only through :meth:`add_non_voting_edge`.
    next_id:
        First id handed out by structural edits.  Defaults to
        ``max(vertices) + 1``.
    """

    _FIELDS = ("roles", "voting_edges", "non_voting_edges", "constraints", "next_id")

    def __init__(self, vertices=(), voting_edges=(), non_voting_edges=(),
                 constraints=(), next_id: int | None = None):
        if isinstance(vertices, dict):
            roles = {int(v): Role(r) for v, r in vertices.items()}
        else:
            roles = {int(v): Role.ORIGINAL for v in vertices}
        for v in roles:
            if v < 0:
                raise GraphError(f"vertex ids must be nonnegative, got {v}")
        voting = self._edge_set(voting_edges, roles, "voting")
        non_voting = self._edge_set(non_voting_edges, roles, "non-voting")
        extra = self._edge_set(constraints, roles, "constraint")
        clash = voting & non_voting
        if clash:
            raise GraphError(f"pair {min(clash)} is both a voting and a non-voting edge")
        if extra - voting:
            raise GraphError("constraints must coincide with voting edges")
        floor = max(roles, default=-1) + 1
        if next_id is None:
            next_id = floor
        elif next_id < floor:
            raise GraphError("next_id must exceed every vertex id")
        self._set(roles, voting, non_voting, extra, next_id)

    @staticmethod
    def _edge_set(edges, roles, kind) -> frozenset:
        out = set()
        for e in edges:
            u, w = (int(x) for x in e)
            if u == w:
                raise GraphError(f"self-loop on {u} in {kind} edges")
            if u not in roles or w not in roles:
                raise GraphError(f"{kind} edge ({u}, {w}) has an unknown endpoint")
            out.add(_pair(u, w))
        return frozenset(out)

    def _set(self, roles, voting, non_voting, extra, next_id):
        object.__setattr__(self, "roles", roles)
        object.__setattr__(self, "voting_edges", voting)
        object.__setattr__(self, "non_voting_edges", non_voting)
        object.__setattr__(self, "constraints", extra)
        object.__setattr__(self, "next_id", next_id)

    @classmethod
    def _make(cls, roles, voting, non_voting, extra, next_id) -> "Graph":
        # unchecked constructor for edits that preserve the invariants
        g = cls.__new__(cls)
        g._set(roles, voting, non_voting, extra, next_id)
        return g

    def __setattr__(self, name, value):
        if name in Graph._FIELDS:
            raise AttributeError("Graph is immutable")
        object.__setattr__(self, name, value)

    # -- value semantics -------------------------------------------------

    @cached_property
    def _key(self):
        return (frozenset(self.roles.items()), self.voting_edges,
                self.non_voting_edges, self.constraints)

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        return (f"Graph(n={len(self.roles)}, voting={len(self.voting_edges)}, "
                f"non_voting={len(self.non_voting_edges) + len(self.constraints)})")

    def __contains__(self, v) -> bool:
        return v in self.roles

    def __len__(self) -> int:
        return len(self.roles)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.roles))

    # -- queries ---------------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return sorted(self.roles)

    def role(self, v: int) -> Role:
        self._check(v)
        return self.roles[v]

    @cached_property
    def adjacency(self) -> dict[int, frozenset[int]]:
        adj: dict[int, set[int]] = {v: set() for v in self.roles}
        for u, w in self.voting_edges:
            adj[u].add(w)
            adj[w].add(u)
        return {v: frozenset(s) for v, s in adj.items()}

    def neighbors(self, v: int) -> frozenset[int]:
        self._check(v)
        return self.adjacency[v]

    def same_color_pairs(self) -> frozenset[tuple[int, int]]:
        """Pairs forced equal by non-voting edges and extra constraints."""
        return self.non_voting_edges | self.constraints

    def _check(self, v) -> None:
        if v not in self.roles:
            raise GraphError(f"unknown vertex {v}")

    # -- structural edits ------------------------------------------------

    def subdivide_edge(self, u: int, w: int) -> "Graph":
        return subdivide_edge(self, u, w)

    def add_leaf(self, v: int) -> "Graph":
        return add_leaf(self, v)

    def add_non_voting_edge(self, t1: int, t2: int) -> "Graph":
        return add_non_voting_edge(self, t1, t2)


def voting_degree(g: Graph, v: int) -> int:
    """Number of voting edges at ``v``; non-voting edges are ignored."""
    return len(g.neighbors(v))


def subdivide_edge(g: Graph, u: int, w: int) -> Graph:
    """Replace voting edge ``uw`` by a path ``u - x - w`` through a fresh vertex."""
    g._check(u)
    g._check(w)
    e = _pair(u, w)
    if e not in g.voting_edges:
        if e in g.non_voting_edges:
            raise GraphError(f"({u}, {w}) is a non-voting edge; only voting edges subdivide")
        raise GraphError(f"({u}, {w}) is not a voting edge")
    x = g.next_id
    roles = dict(g.roles)
    roles[x] = Role.SUBDIVISION
    voting = (g.voting_edges - {e}) | {_pair(u, x), _pair(x, w)}
    return Graph._make(roles, voting, g.non_voting_edges, g.constraints - {e}, x + 1)


def add_leaf(g: Graph, v: int) -> Graph:
    """Hang a fresh degree-one vertex off ``v``."""
    g._check(v)
    x = g.next_id
    roles = dict(g.roles)
    roles[x] = Role.LEAF
    return Graph._make(roles, g.voting_edges | {(v, x)}, g.non_voting_edges,
                       g.constraints, x + 1)


def add_non_voting_edge(g: Graph, t1: int, t2: int) -> Graph:
    """Force ``t1`` and ``t2`` to share a color without affecting any plurality.

    If the pair is already a voting edge the edge sets are left alone and the
    pair is recorded as an extra constraint instead.
    """
    g._check(t1)
    g._check(t2)
    if t1 == t2:
        raise GraphError("a non-voting edge needs two distinct endpoints")
    e = _pair(t1, t2)
    if e in g.non_voting_edges or e in g.constraints:
        return g
    if e in g.voting_edges:
        return Graph._make(g.roles, g.voting_edges, g.non_voting_edges,
                           g.constraints | {e}, g.next_id)
    return Graph._make(g.roles, g.voting_edges, g.non_voting_edges | {e},
                       g.constraints, g.next_id)


def forced_union_find(g: Graph) -> UnionFind:
    uf = UnionFind(g.roles)
    adj = g.adjacency
    for u, w in g.voting_edges:
        if len(adj[u]) <= 2 or len(adj[w]) <= 2:
            uf.union(u, w)
    for u, w in g.same_color_pairs():
        uf.union(u, w)
    return uf


def forced_classes(g: Graph) -> list[frozenset[int]]:
    """Vertices that share a color in every locally-optimal coloring.

    Closure of: voting edges touching a vertex of voting degree 1 or 2,
    non-voting edges, and extra constraints.  Classes are ordered by their
    smallest vertex.
    """
    return forced_union_find(g).groups()


def class_index(g: Graph) -> dict[int, int]:
    """Map each vertex to the index of its forced class."""
    out = {}
    for i, cls in enumerate(forced_classes(g)):
        for v in cls:
            out[v] = i
    return out


def forced_split(g: Graph, v: int, index: dict[int, int] | None = None) -> tuple[int, int]:
    """``(forced, free)`` counts of voting neighbours of ``v``."""
    if index is None:
        index = class_index(g)
    own = index[v]
    forced = sum(1 for w in g.neighbors(v) if index[w] == own)
    return forced, len(g.adjacency[v]) - forced


def dense_at(g: Graph, v: int, index: dict[int, int] | None = None) -> bool:
    forced, free = forced_split(g, v, index)
    return forced > free


def is_forced_dense(g: Graph) -> bool:
    """True iff at every vertex the co-class neighbours strictly outnumber the rest."""
    index = class_index(g)
    return all(dense_at(g, v, index) for v in g.roles)


def connected_components(g: Graph) -> list[frozenset[int]]:
    """Components under voting edges only."""
    uf = UnionFind(g.roles)
    for u, w in g.voting_edges:
        uf.union(u, w)
    return uf.groups()


def is_connected(g: Graph) -> bool:
    return len(connected_components(g)) == 1


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Place ``g2`` beside ``g1``, shifting its ids past ``g1.next_id``."""
    shift = g1.next_id
    roles = dict(g1.roles)
    roles.update({v + shift: r for v, r in g2.roles.items()})
    move = lambda es: {(u + shift, w + shift) for u, w in es}
    return Graph(roles, g1.voting_edges | move(g2.voting_edges),
                 g1.non_voting_edges | move(g2.non_voting_edges),
                 g1.constraints | move(g2.constraints))


def relabel(g: Graph) -> Graph:
    """Same graph on ids ``0..n-1`` in ascending order of the old ids."""
    m = {v: i for i, v in enumerate(sorted(g.roles))}
    mv = lambda es: [(m[u], m[w]) for u, w in es]
    return Graph({m[v]: r for v, r in g.roles.items()}, mv(g.voting_edges),
                 mv(g.non_voting_edges), mv(g.constraints))


def from_edges(edges, vertices=(), non_voting_edges=()) -> Graph:
    """Build a graph whose vertex set is ``vertices`` plus every edge endpoint."""
    vs = set(int(v) for v in vertices)
    edges = [tuple(e) for e in edges]
    non_voting_edges = [tuple(e) for e in non_voting_edges]
    for e in edges + non_voting_edges:
        vs.update(int(x) for x in e)
    g = Graph(vs, edges)
    for t1, t2 in non_voting_edges:
        g = add_non_voting_edge(g, t1, t2)
    return g
