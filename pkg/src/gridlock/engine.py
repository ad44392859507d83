"""Recursive computation of the locally-optimal polynomial.

The engine rewrites ``LO(G)`` as a signed sum of ``LO`` of modified graphs
until every graph in the sum is forced-dense, at which point each one
contributes ``k^p`` with ``p`` its number of forced classes.

Two expansions drive the recursion at a chosen vertex ``v``:

* :func:`expand_any_degree` guarantees ``v`` at least two same-colored
  neighbours by subdividing every choice of two or more edges at ``v``
  (inclusion-exclusion with coefficients ``(-1)^j (j-1)``).
* :func:`expand_to_majority` takes ``v`` from ``b`` forced neighbours to a
  forced strict majority by hanging ``n - 2b + 1`` leaves on it, removing the
  colorings the leaves wrongly admit (extra subdivisions and ``b``-sets of
  free neighbours tied together by non-voting edges), and adding back the
  leafless colorings with more subdivided edges.

Both functions return the literal expansion, one term per subset.  The
engine itself works with the same sums grouped by forced class (see
:func:`any_degree_recipes` and :func:`majority_recipes`) so that terms
which normalize to the same graph are never built twice.
"""

from __future__ import annotations

import heapq
import itertools
import logging
import math
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .graph import (Graph, Role, _pair, add_leaf, add_non_voting_edge,
                    forced_union_find, subdivide_edge)
from .polynomial import IntPolynomial

log = logging.getLogger(__name__)

DEFAULT_TERM_BUDGET = 2_000_000
LEAF_RULES = ("minimal", "proof")


class EngineError(RuntimeError):
    """Raised when an expansion is requested outside its preconditions."""


class TermBudgetExceeded(EngineError):
    def __init__(self, budget: int):
        super().__init__(f"term budget of {budget} exceeded; raise --budget-terms "
                         "or use an oracle")
        self.budget = budget


@dataclass(frozen=True)
class Term:
    graph: Graph
    coeff: int

    def __post_init__(self):
        if self.coeff == 0:
            raise ValueError("terms carry a nonzero coefficient")


@dataclass(frozen=True)
class Expansion:
    terms: tuple[Term, ...]

    def __iter__(self) -> Iterator[Term]:
        return iter(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    @property
    def coefficient_sum(self) -> int:
        return sum(t.coeff for t in self.terms)

    def normalized(self, trim_leaves: bool = True) -> "Expansion":
        """Normalize every term and merge like terms."""
        acc: dict[Graph, int] = {}
        for t in self.terms:
            h = normalize_graph(t.graph, trim_leaves=trim_leaves)
            acc[h] = acc.get(h, 0) + t.coeff
        return Expansion(tuple(Term(h, c) for h, c in acc.items() if c))


def _expansion(pairs: Iterable[tuple[Graph, int]]) -> Expansion:
    return Expansion(tuple(Term(g, c) for g, c in pairs if c))


# -- local analysis --------------------------------------------------------

@dataclass
class _Analysis:
    root: dict[int, int]          # vertex -> class representative
    n_classes: int
    nondense: list[int]           # sorted by (voting degree, id)

    @property
    def potential(self) -> tuple[int, int]:
        return (len(self.nondense), self.n_classes)


def _analyze(g: Graph) -> _Analysis:
    uf = forced_union_find(g)
    root = {v: uf.find(v) for v in g.roles}
    adj = g.adjacency
    nondense = []
    for v, nbrs in adj.items():
        r = root[v]
        forced = sum(1 for w in nbrs if root[w] == r)
        if forced <= len(nbrs) - forced:
            nondense.append(v)
    nondense.sort(key=lambda v: (len(adj[v]), v))
    return _Analysis(root, len(set(root.values())), nondense)


def _free_groups(g: Graph, v: int, root: dict[int, int]) -> tuple[int, list[list[int]]]:
    """Forced-neighbour count of ``v`` and its free neighbours grouped by class."""
    own = root[v]
    forced = 0
    by_class: dict[int, list[int]] = defaultdict(list)
    for w in g.adjacency[v]:
        if root[w] == own:
            forced += 1
        else:
            by_class[root[w]].append(w)
    groups = sorted((sorted(ws) for ws in by_class.values()), key=lambda ws: ws[0])
    return forced, groups


def leaf_count(n: int, b: int, rule: str = "minimal") -> int:
    """Leaves hung on an ``n``-valent vertex with ``b`` forced neighbours."""
    if rule == "minimal":
        return n - 2 * b + 1
    if rule == "proof":
        return n - 2 * b + 2
    raise ValueError(f"unknown leaf rule {rule!r}; expected one of {LEAF_RULES}")


# -- literal expansions ----------------------------------------------------

def _subdivide_all(g: Graph, v: int, ws: Iterable[int]) -> Graph:
    for w in ws:
        g = subdivide_edge(g, v, w)
    return g


def expand_any_degree(g: Graph, v: int) -> Expansion:
    """Force two same-colored neighbours at ``v`` by subdividing edge subsets.

    With no forced neighbour this is the signed sum over subsets ``S`` of
    neighbours, ``|S| >= 2``, with coefficient ``(-1)^|S| (|S|-1)``.  With
    exactly one forced neighbour only one more shared neighbour is needed and
    the sum runs over nonempty subsets of the free neighbours with coefficient
    ``(-1)^(|S|+1)``.
    """
    n = len(g.neighbors(v))
    if n < 3:
        raise EngineError(f"vertex {v} has voting degree {n}; expansion needs at least 3")
    forced, groups = _free_groups(g, v, _analyze(g).root)
    if forced >= 2:
        raise EngineError(f"vertex {v} already has {forced} forced neighbours; "
                          "use expand_to_majority")
    free = sorted(w for ws in groups for w in ws)
    out = []
    if forced == 0:
        for j in range(2, n + 1):
            c = (-1) ** j * (j - 1)
            out.extend((_subdivide_all(g, v, S), c) for S in itertools.combinations(free, j))
    else:
        for j in range(1, len(free) + 1):
            c = (-1) ** (j + 1)
            out.extend((_subdivide_all(g, v, S), c) for S in itertools.combinations(free, j))
    return _expansion(out)


def _with_leaves(g: Graph, v: int, count: int) -> Graph:
    for _ in range(count):
        g = add_leaf(g, v)
    return g


def _tie(g: Graph, family) -> Graph:
    for T in family:
        for t1, t2 in itertools.combinations(T, 2):
            g = add_non_voting_edge(g, t1, t2)
    return g


def _powerset(items, start=0):
    items = list(items)
    return itertools.chain.from_iterable(
        itertools.combinations(items, r) for r in range(start, len(items) + 1))


def expand_to_majority(g: Graph, v: int, b: int | None = None,
                       leaf_rule: str = "minimal") -> Expansion:
    """Expand ``v`` from ``b`` forced neighbours to a forced strict majority.

    Terms, in order: the leaf-augmented graph; the inclusion-exclusion over
    extra subdivisions ``W'`` and families ``T`` of ``b``-sets of free
    neighbours (each tied by non-voting edges), signed ``(-1)^(|W'|+|T|)``;
    and the leafless graphs with ``j >= 1`` extra subdivisions, signed
    ``(-1)^(j+1)``.
    """
    n = len(g.neighbors(v))
    forced, groups = _free_groups(g, v, _analyze(g).root)
    if b is None:
        b = forced
    elif b != forced:
        raise EngineError(f"vertex {v} has {forced} forced neighbours, not {b}")
    if not 2 <= b <= n / 2:
        raise EngineError(f"need 2 <= b <= n/2 for the majority expansion, got b={b}, n={n}")
    free = sorted(w for ws in groups for w in ws)
    ell = leaf_count(n, b, leaf_rule)
    gl = _with_leaves(g, v, ell)
    bsets = list(itertools.combinations(free, b))
    out = [(gl, 1)]
    for Wp in _powerset(free):
        for fam in _powerset(bsets):
            r = len(Wp) + len(fam)
            if r == 0:
                continue
            out.append((_tie(_subdivide_all(gl, v, Wp), fam), (-1) ** r))
    for Wp in _powerset(free, 1):
        out.append((_subdivide_all(g, v, Wp), (-1) ** (len(Wp) + 1)))
    return _expansion(out)


# -- grouped coefficients --------------------------------------------------

def _set_partitions(n: int) -> Iterator[tuple[int, ...]]:
    """Restricted growth strings of length ``n`` in lexicographic order."""
    if n == 0:
        yield ()
        return
    a = [0] * n
    m = [0] * n      # m[i] = max(a[:i+1])
    while True:
        yield tuple(a)
        i = n - 1
        while i > 0 and a[i] > m[i - 1]:
            i -= 1
        if i == 0:
            return
        a[i] += 1
        m[i] = max(m[i - 1], a[i])
        for j in range(i + 1, n):
            a[j] = 0
            m[j] = m[i]


def _blocks(rgs: tuple[int, ...]) -> list[list[int]]:
    out: dict[int, list[int]] = {}
    for i, b in enumerate(rgs):
        out.setdefault(b, []).append(i)
    return list(out.values())


@lru_cache(maxsize=None)
def _block_weight(has_v: bool, mults: tuple[int, ...], b: int) -> int:
    """Sum of Mobius values over the admissible refinements of one block.

    The block holds the centre's class (if ``has_v``) and free-neighbour
    classes of the given multiplicities.  A refinement is admissible when the
    centre stays alone and every other part carries fewer than ``b`` free
    neighbours: exactly the colorings in which ``v`` shares its color with no
    free neighbour and no other color reaches ``b`` free neighbours.
    """
    items = ([None] if has_v else []) + list(mults)
    total = 0
    for rgs in _set_partitions(len(items)):
        parts = _blocks(rgs)
        ok = True
        for part in parts:
            if has_v and 0 in part:
                if len(part) > 1:
                    ok = False
                    break
            elif sum(items[i] for i in part) >= b:
                ok = False
                break
        if ok:
            k = len(parts)
            total += (-1) ** (k - 1) * math.factorial(k - 1)
    return total


@lru_cache(maxsize=None)
def majority_recipes(mults: tuple[int, ...], b: int) -> tuple[tuple[tuple[tuple[int, ...], ...], int], ...]:
    """Grouped coefficients of the leaf-augmented part of the majority expansion.

    Items are ``0`` for the centre's class and ``1..r`` for the free classes
    (``mults[i-1]`` free neighbours each).  Returns ``(blocks, coeff)`` pairs:
    merge the items of each block, add the leaves, weight by ``coeff``.
    Equals the literal ``W'``/``T`` inclusion-exclusion grouped by the
    resulting partition (Mobius inversion on the partition lattice).
    """
    r = len(mults)
    out = []
    for rgs in _set_partitions(r + 1):
        parts = _blocks(rgs)
        c = 1
        for part in parts:
            c *= _block_weight(0 in part, tuple(sorted(mults[i - 1] for i in part if i)), b)
            if c == 0:
                break
        if c:
            out.append((tuple(tuple(p) for p in parts), c))
    return tuple(out)


@lru_cache(maxsize=None)
def any_degree_recipes(mults: tuple[int, ...], forced: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    """Grouped coefficients of :func:`expand_any_degree`.

    Returns ``(classes, coeff)`` with ``classes`` the 1-based free classes
    whose edges to the centre are subdivided.
    """
    r = len(mults)
    out = []
    for size in range(1, r + 1):
        for Q in itertools.combinations(range(1, r + 1), size):
            if forced == 1:
                c = (-1) ** (size + 1)
            else:
                # count subsets S hitting exactly the classes Q, by size
                counts = [1]
                for q in Q:
                    m = mults[q - 1]
                    ways = [0] + [math.comb(m, i) for i in range(1, m + 1)]
                    nxt = [0] * (len(counts) + len(ways) - 1)
                    for i, a in enumerate(counts):
                        for j, w in enumerate(ways):
                            nxt[i + j] += a * w
                    counts = nxt
                c = sum(a * (-1) ** j * (j - 1) for j, a in enumerate(counts) if j >= 2)
            if c:
                out.append((Q, c))
    return tuple(out)




# -- normalization ---------------------------------------------------------

def _decompose(g: Graph):
    """Split ``g`` into its core graph, leaf counts and subdivided core edges.

    Leaves hanging on original vertices and subdivision vertices sitting on an
    edge between two original vertices are absorbed; every other vertex is
    core.  Returns ``(core, core_edges, leaves)`` with ``core`` sorted and
    ``core_edges`` including the edges that were drawn subdivided.
    """
    roles, adj = g.roles, g.adjacency
    leaves: dict[int, int] = defaultdict(int)
    sub_pairs = set()
    core = []
    for x in sorted(roles):
        r = roles[x]
        nbrs = adj[x]
        if r is Role.LEAF and len(nbrs) == 1:
            (v,) = nbrs
            if roles[v] is Role.ORIGINAL:
                leaves[v] += 1
                continue
        elif r is Role.SUBDIVISION and len(nbrs) == 2:
            e = tuple(sorted(nbrs))
            if (roles[e[0]] is Role.ORIGINAL and roles[e[1]] is Role.ORIGINAL
                    and e not in g.voting_edges and e not in sub_pairs):
                sub_pairs.add(e)
                continue
        core.append(x)
    core_set = set(core)
    edges = [e for e in g.voting_edges if e[0] in core_set and e[1] in core_set]
    edges.extend(sub_pairs)
    edges.sort()
    return core, edges, leaves


def _trimmed(count: int, forced: int, free: int) -> int:
    # leaves needed so that forced neighbours (leaves included) beat the free ones
    if forced <= free:
        return count
    return min(count, max(0, free - (forced - count) + 1))


def _assemble(roles: dict[int, Role], core: list[int], edges, root: dict[int, int],
              leaves: dict[int, int]) -> Graph:
    """Canonical drawing of core + classes + leaf counts."""
    new_roles = {x: roles[x] for x in core}
    voting = set()
    nxt = (core[-1] + 1) if core else 0
    for u, w in edges:
        if (root[u] == root[w] and roles[u] is Role.ORIGINAL
                and roles[w] is Role.ORIGINAL):
            new_roles[nxt] = Role.SUBDIVISION
            voting.add((u, nxt))
            voting.add((w, nxt))
            nxt += 1
        else:
            voting.add((u, w))
    for v in sorted(leaves):
        for _ in range(leaves[v]):
            new_roles[nxt] = Role.LEAF
            voting.add((v, nxt))
            nxt += 1
    h = Graph._make(new_roles, frozenset(voting), frozenset(), frozenset(), nxt)

    # redraw the same-color constraints the voting structure does not imply
    huf = forced_union_find(h)
    targets: dict[int, list[int]] = defaultdict(list)
    for x in core:
        targets[root[x]].append(x)
    for members in targets.values():
        seen: dict[int, int] = {}
        for x in members:
            seen.setdefault(huf.find(x), x)
        reps = sorted(seen.values())
        for t in reps[1:]:
            h = add_non_voting_edge(h, reps[0], t)
    return h


def normalize_graph(g: Graph, trim_leaves: bool = True) -> Graph:
    """Canonical representative with the same locally-optimal colorings.

    * every voting edge between two original vertices of one forced class is
      drawn subdivided (the subdivision only restates a forced equality);
    * a vertex whose forced neighbours would still be a strict majority keeps
      only as many of its leaves as that majority needs;
    * non-voting edges are redrawn as the fewest needed to restore the forced
      classes, as a star on the smallest vertex of each class;
    * subdivision and leaf vertices are renumbered after the core ones.
    """
    core, edges, leaves = _decompose(g)
    uf = forced_union_find(g)
    root = {x: uf.find(x) for x in core}
    if trim_leaves:
        adj = g.adjacency
        for v, count in list(leaves.items()):
            forced = sum(1 for w in adj[v] if uf.find(w) == root[v])
            leaves[v] = _trimmed(count, forced, len(adj[v]) - forced)
    return _assemble(g.roles, core, edges, root, leaves)


def normalize_term(t: Term, trim_leaves: bool = True) -> Term:
    """Rewrite a term's graph to its canonical representative; coefficient unchanged."""
    return Term(normalize_graph(t.graph, trim_leaves=trim_leaves), t.coeff)


# -- base case -------------------------------------------------------------

def base_case_value(g: Graph) -> IntPolynomial:
    """``k^p`` for a forced-dense graph with ``p`` forced classes."""
    if not g.roles:
        return IntPolynomial([1])
    a = _analyze(g)
    if a.nondense:
        raise EngineError(f"base case reached with non-dense vertex {a.nondense[0]}; "
                          "the graph was expanded insufficiently")
    return IntPolynomial.monomial(a.n_classes)


# -- one grouped step on graphs (reference path) ---------------------------

def _build(g: Graph, v: int, leaves: int, to_v: Iterable[int], ties: Iterable[list[int]]) -> Graph:
    """Hang leaves on ``v``, subdivide ``v w`` for ``w in to_v``, tie each list in ``ties``."""
    roles = dict(g.roles)
    voting = set(g.voting_edges)
    nxt = g.next_id
    for _ in range(leaves):
        roles[nxt] = Role.LEAF
        voting.add((v, nxt))
        nxt += 1
    for w in to_v:
        voting.discard(_pair(v, w))
        roles[nxt] = Role.SUBDIVISION
        voting.add(_pair(v, nxt))
        voting.add(_pair(w, nxt))
        nxt += 1
    non_voting = set(g.non_voting_edges)
    extra = set(g.constraints)
    for reps in ties:
        for t in reps[1:]:
            e = _pair(reps[0], t)
            (extra if e in voting else non_voting).add(e)
    return Graph._make(roles, frozenset(voting), frozenset(non_voting),
                       frozenset(extra), nxt)


def _step_plan(forced: int, n: int, mults: tuple[int, ...], leaf_rule: str):
    """Yield ``(leaves, blocks, coeff)`` for one grouped step.

    ``blocks`` partition (part of) the items ``0`` (centre) and ``1..r``
    (free classes); items sharing a block are merged.
    """
    r = len(mults)
    if forced < 2:
        if n < 3:
            raise EngineError(f"a vertex of degree {n} cannot be non-dense")
        for Q, c in any_degree_recipes(mults, forced):
            yield 0, ((0,) + Q,), c
        return
    ell = leaf_count(n, forced, leaf_rule)
    for parts, c in majority_recipes(mults, forced):
        yield ell, parts, c
    for size in range(1, r + 1):
        for Q in itertools.combinations(range(1, r + 1), size):
            yield 0, ((0,) + Q,), (-1) ** (size + 1)


def expand_grouped(g: Graph, v: int, leaf_rule: str = "minimal",
                   trim_leaves: bool = True) -> list[tuple[Graph, int]]:
    """One engine step at ``v`` on explicit graphs: normalized children, merged."""
    a = _analyze(g)
    n = len(g.adjacency[v])
    forced, groups = _free_groups(g, v, a.root)
    if forced > n - forced:
        raise EngineError(f"vertex {v} is already forced-dense")
    children: dict[Graph, int] = {}
    for ell, parts, c in _step_plan(forced, n, tuple(len(ws) for ws in groups), leaf_rule):
        to_v, ties = [], []
        for part in parts:
            if 0 in part:
                to_v.extend(w for i in part if i for w in groups[i - 1])
            elif len(part) > 1:
                ties.append([groups[i - 1][0] for i in part])
        h = normalize_graph(_build(g, v, ell, to_v, ties), trim_leaves=trim_leaves)
        children[h] = children.get(h, 0) + c
    return [(h, c) for h, c in children.items() if c]


# -- compact states --------------------------------------------------------

class _Frame:
    """Fixed core graph shared by every term of one expansion tree.

    A term is the pair ``(labels, leaves)``: ``labels[i]`` is the smallest
    core index in vertex ``i``'s forced class and ``leaves[i]`` the number of
    leaves on it.  Subdivisions and non-voting edges are implied by the
    labels, so this pair is exactly what :func:`normalize_graph` keeps.
    """

    def __init__(self, g: Graph, trim_leaves: bool = True):
        core, edges, leaves = _decompose(g)
        self.roles = g.roles
        self.core = core
        self.edges = edges
        self.trim = trim_leaves
        pos = {x: i for i, x in enumerate(core)}
        nbrs: list[list[int]] = [[] for _ in core]
        for u, w in edges:
            nbrs[pos[u]].append(pos[w])
            nbrs[pos[w]].append(pos[u])
        self.nbrs = [tuple(sorted(ns)) for ns in nbrs]
        uf = forced_union_find(g)
        first: dict[int, int] = {}
        labels = []
        for i, x in enumerate(core):
            labels.append(first.setdefault(uf.find(x), i))
        self.root = self._trim((tuple(labels), tuple(leaves.get(x, 0) for x in core)))

    def _trim(self, state):
        labels, leaves = state
        if not self.trim or not any(leaves):
            return state
        out = list(leaves)
        for i, count in enumerate(leaves):
            if count:
                same = sum(1 for j in self.nbrs[i] if labels[j] == labels[i])
                out[i] = _trimmed(count, same + count, len(self.nbrs[i]) - same)
        return labels, tuple(out)

    def analyze(self, state):
        """``(non-dense indices by (degree, id), number of classes)``."""
        labels, leaves = state
        nondense = []
        for i, ns in enumerate(self.nbrs):
            same = sum(1 for j in ns if labels[j] == labels[i])
            if same + leaves[i] <= len(ns) - same:
                nondense.append(i)
        nondense.sort(key=lambda i: (len(self.nbrs[i]) + leaves[i], self.core[i]))
        return nondense, len(set(labels))

    def children(self, state, i: int, leaf_rule: str):
        labels, leaves = state
        own = labels[i]
        forced = leaves[i]
        counts: dict[int, int] = {}
        for j in self.nbrs[i]:
            if labels[j] == own:
                forced += 1
            else:
                counts[labels[j]] = counts.get(labels[j], 0) + 1
        n = len(self.nbrs[i]) + leaves[i]
        if forced > n - forced:
            raise EngineError(f"vertex {self.core[i]} is already forced-dense")
        order = sorted(counts)         # class labels are their smallest member
        mults = tuple(counts[c] for c in order)
        items = [own] + order
        out: dict = {}
        for ell, parts, c in _step_plan(forced, n, mults, leaf_rule):
            relabel = {}
            for part in parts:
                if len(part) > 1:
                    target = min(items[p] for p in part)
                    for p in part:
                        relabel[items[p]] = target
            new_labels = tuple(relabel.get(x, x) for x in labels) if relabel else labels
            if ell:
                new_leaves = list(leaves)
                new_leaves[i] += ell
                new_leaves = tuple(new_leaves)
            else:
                new_leaves = leaves
            kid = self._trim((new_labels, new_leaves))
            out[kid] = out.get(kid, 0) + c
        return [(s, c) for s, c in out.items() if c]

    def to_graph(self, state) -> Graph:
        labels, leaves = state
        root = {x: self.core[labels[i]] for i, x in enumerate(self.core)}
        return _assemble(self.roles, self.core, self.edges, root,
                         {x: leaves[i] for i, x in enumerate(self.core) if leaves[i]})


_worker_frame: _Frame | None = None


def _init_worker(frame: _Frame) -> None:
    global _worker_frame
    _worker_frame = frame


def _expand_state(args):
    state, leaf_rule = args
    frame = _worker_frame
    nondense, _ = frame.analyze(state)
    return frame.children(state, nondense[0], leaf_rule)


# -- pipeline --------------------------------------------------------------

@dataclass
class EngineStats:
    expansions: int = 0
    children: int = 0
    base_terms: int = 0


def lo_polynomial(g: Graph, *, memo: bool = False, workers: int = 1,
                  budget_terms: int = DEFAULT_TERM_BUDGET,
                  leaf_rule: str = "minimal", trim_leaves: bool = True,
                  stats: EngineStats | None = None) -> IntPolynomial:
    """The LO-polynomial of ``g`` via the subdivision recurrences.

    Terms are expanded at their non-dense vertex of smallest voting degree
    (ties to the smaller id) and processed in decreasing order of (number of
    non-dense vertices, number of forced classes).  Every expansion strictly
    lowers that potential, so all contributions to a normalized term are
    merged before it is expanded.  ``memo=True`` evaluates depth-first with a
    cache keyed on the normalized term instead; the result is identical.

    Raises :class:`TermBudgetExceeded` once more than ``budget_terms`` terms
    have been expanded.
    """
    if leaf_rule not in LEAF_RULES:
        raise ValueError(f"unknown leaf rule {leaf_rule!r}")
    if stats is None:
        stats = EngineStats()
    if not g.roles:
        return IntPolynomial([1])
    if any(not nbrs for nbrs in g.adjacency.values()):
        return IntPolynomial()
    frame = _Frame(g, trim_leaves)
    if memo:
        return _lo_memo(frame, leaf_rule, budget_terms, stats)

    result: dict[int, int] = defaultdict(int)
    levels: dict[tuple[int, int], dict] = {}
    heap: list[tuple[int, int]] = []

    def push(state, c):
        nondense, n_classes = frame.analyze(state)
        if not nondense:
            stats.base_terms += 1
            result[n_classes] += c
            return
        p = (len(nondense), n_classes)
        bucket = levels.get(p)
        if bucket is None:
            bucket = levels[p] = {}
            heapq.heappush(heap, (-p[0], -p[1]))
        bucket[state] = bucket.get(state, 0) + c

    push(frame.root, 1)
    pool = None
    if workers > 1:
        pool = ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(frame,))
    try:
        while heap:
            neg = heapq.heappop(heap)
            bucket = levels.pop((-neg[0], -neg[1]))
            items = [(s, c) for s, c in bucket.items() if c]
            stats.expansions += len(items)
            if stats.expansions > budget_terms:
                raise TermBudgetExceeded(budget_terms)
            jobs = [(s, leaf_rule) for s, _ in items]
            if pool is not None and len(items) >= 4 * workers:
                expanded = pool.map(_expand_state, jobs,
                                    chunksize=max(1, len(jobs) // (4 * workers)))
            else:
                expanded = (frame.children(s, frame.analyze(s)[0][0], leaf_rule)
                            for s, _ in items)
            for (_, c), kids in zip(items, expanded):
                stats.children += len(kids)
                for kid, kc in kids:
                    push(kid, c * kc)
    finally:
        if pool is not None:
            pool.shutdown()
    top = max(result, default=-1)
    return IntPolynomial([result.get(i, 0) for i in range(top + 1)])


def _lo_memo(frame: _Frame, leaf_rule: str, budget: int, stats: EngineStats) -> IntPolynomial:
    cache: dict = {}

    def lo(state) -> dict[int, int]:
        hit = cache.get(state)
        if hit is not None:
            return hit
        nondense, n_classes = frame.analyze(state)
        if not nondense:
            stats.base_terms += 1
            val = {n_classes: 1}
        else:
            stats.expansions += 1
            if stats.expansions > budget:
                raise TermBudgetExceeded(budget)
            val: dict[int, int] = defaultdict(int)
            kids = frame.children(state, nondense[0], leaf_rule)
            stats.children += len(kids)
            for kid, c in kids:
                for p, a in lo(kid).items():
                    val[p] += c * a
        cache[state] = val
        return val

    poly = lo(frame.root)
    top = max(poly, default=-1)
    return IntPolynomial([poly.get(i, 0) for i in range(top + 1)])


def min_voting_degree(g: Graph) -> int:
    return min((len(n) for n in g.adjacency.values()), default=0)


def sg_polynomial(g: Graph, **kwargs) -> IntPolynomial:
    """Strict-gridlock polynomial: ``LO`` minus the consensus colorings.

    The ``k`` uniform colorings are locally optimal only when every vertex has
    a voting neighbour, so ``k`` is subtracted only then.  The empty graph has
    no coloring with two colors and gets ``0``.
    """
    if not g.roles:
        return IntPolynomial()
    lo = lo_polynomial(g, **kwargs)
    if min_voting_degree(g) >= 1:
        return lo - IntPolynomial([0, 1])
    return lo
