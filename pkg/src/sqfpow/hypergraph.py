"""Hypergraphs over a dense vertex universe and their basic invariants.

Vertex sets are plain ``int`` bitmasks: bit ``v`` set means vertex ``v`` is a
member.  The same mask doubles as the support of a squarefree monomial, which
is how the ideal modules consume it.

Naming note: ``induced_matching_number`` is the maximum size of an induced
matching.  The literature writes it both as nu(H) and nu_1(H); this module only
exposes the two explicit names ``matching_number`` and
``induced_matching_number`` to avoid the collision.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

MAX_VERTICES = 64

VertexSet = int


def vset(vertices: Iterable[int]) -> VertexSet:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def members(mask: VertexSet) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


def popcount(mask: VertexSet) -> int:
    return mask.bit_count()


def full_mask(n: int) -> VertexSet:
    return (1 << n) - 1


def submasks(mask: VertexSet) -> Iterator[VertexSet]:
    """All submasks of ``mask``, including 0 and ``mask`` itself (descending order)."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def minimalize_masks(masks: Iterable[VertexSet]) -> tuple[VertexSet, ...]:
    """Inclusion-minimal elements of ``masks``, sorted by (size, value)."""
    kept: list[VertexSet] = []
    for m in sorted(set(masks), key=lambda x: (x.bit_count(), x)):
        if not any(g & m == g for g in kept):
            kept.append(m)
    return tuple(kept)


def _as_mask(edge) -> VertexSet:
    if isinstance(edge, int):
        return edge
    return vset(edge)


@dataclass(frozen=True)
class Hypergraph:
    """A simple hypergraph on vertices ``0..n-1``.

    ``edges`` may be given as iterables of vertex indices or as bitmasks.  The
    stored edge tuple is sorted and deduplicated; containment between two
    distinct edges is rejected.
    """

    n: int
    edges: tuple[VertexSet, ...] = field(default=())

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise ValueError(f"vertex count must be in [0, {MAX_VERTICES}], got {self.n}")
        masks = sorted({_as_mask(e) for e in self.edges})
        universe = full_mask(self.n)
        for e in masks:
            if e == 0:
                raise ValueError("edges must be nonempty")
            if e & ~universe:
                raise ValueError(f"edge {members(e)} leaves the universe of {self.n} vertices")
        for a, b in combinations(masks, 2):
            if a & b in (a, b):
                raise ValueError(f"edges {members(a)} and {members(b)} are nested")
        object.__setattr__(self, "edges", tuple(masks))

    @property
    def vertex_mask(self) -> VertexSet:
        return full_mask(self.n)

    @property
    def is_graph(self) -> bool:
        return all(e.bit_count() == 2 for e in self.edges)

    def edge_lists(self) -> list[list[int]]:
        return [list(members(e)) for e in self.edges]

    def has_edge(self, u: int, v: int) -> bool:
        return ((1 << u) | (1 << v)) in self._edge_set

    @property
    def _edge_set(self) -> frozenset:
        return _edge_set(self.edges)

    def adjacency(self) -> tuple[VertexSet, ...]:
        """Neighbour masks, one per vertex (graphs; for hypergraphs, co-edge members)."""
        return _adjacency(self.n, self.edges)

    def degree(self, v: int) -> int:
        return self.adjacency()[v].bit_count()

    def to_json(self) -> dict:
        return {"n": self.n, "edges": self.edge_lists()}

    @classmethod
    def from_json(cls, data) -> "Hypergraph":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        return cls(int(data["n"]), [tuple(e) for e in data["edges"]])

    def __repr__(self):
        return f"Hypergraph(n={self.n}, edges={self.edge_lists()})"


@lru_cache(maxsize=4096)
def _edge_set(edges):
    return frozenset(edges)


@lru_cache(maxsize=4096)
def _adjacency(n, edges):
    adj = [0] * n
    for e in edges:
        for v in members(e):
            adj[v] |= e & ~(1 << v)
    return tuple(adj)


def graph(n: int, edges: Iterable[Sequence[int]]) -> Hypergraph:
    h = Hypergraph(n, [tuple(e) for e in edges])
    if not h.is_graph:
        raise ValueError("every edge of a graph has exactly two vertices")
    return h


# --- standard families -------------------------------------------------------

def complete_graph(n: int) -> Hypergraph:
    return Hypergraph(n, list(combinations(range(n), 2)))


def path_graph(n: int) -> Hypergraph:
    return Hypergraph(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Hypergraph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Hypergraph(n, [(i, (i + 1) % n) for i in range(n)])


def empty_graph(n: int) -> Hypergraph:
    return Hypergraph(n, ())


def disjoint_edges(t: int) -> Hypergraph:
    return Hypergraph(2 * t, [(2 * i, 2 * i + 1) for i in range(t)])


def star_graph(leaves: int) -> Hypergraph:
    return Hypergraph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complement(g: Hypergraph) -> Hypergraph:
    if not g.is_graph:
        raise ValueError("complement is defined for graphs only")
    present = set(g.edges)
    return Hypergraph(g.n, [e for e in (vset(p) for p in combinations(range(g.n), 2)) if e not in present])


# --- structural operations ---------------------------------------------------

def induced(h: Hypergraph, w: VertexSet) -> tuple[Hypergraph, tuple[int, ...]]:
    """Induced sub-hypergraph on ``w``, relabelled to ``0..|w|-1``.

    Returns the hypergraph and the order-preserving index map (new index ->
    original vertex).  Isolated vertices of ``w`` are kept.
    """
    if w & ~h.vertex_mask:
        raise ValueError("w is not a subset of the vertex universe")
    index_map = members(w)
    pos = {v: i for i, v in enumerate(index_map)}
    edges = [tuple(pos[v] for v in members(e)) for e in h.edges if e & w == e]
    return Hypergraph(len(index_map), edges), index_map


def edges_within(h: Hypergraph, w: VertexSet) -> tuple[VertexSet, ...]:
    """Edges of ``h`` contained in ``w``, on the original labels."""
    return tuple(e for e in h.edges if e & w == e)


def relabel_mask(mask: VertexSet, index_map: Sequence[int]) -> VertexSet:
    """Map a mask on the induced labels back to the original universe."""
    out = 0
    for i in members(mask):
        out |= 1 << index_map[i]
    return out


def disjoint_union(h1: Hypergraph, h2: Hypergraph) -> tuple[Hypergraph, int]:
    """``h1 + h2`` with ``h2`` shifted by ``h1.n``; returns the offset too."""
    offset = h1.n
    edges = list(h1.edges) + [e << offset for e in h2.edges]
    return Hypergraph(h1.n + h2.n, edges), offset


def neighborhoods(g: Hypergraph, a: VertexSet) -> tuple[VertexSet, VertexSet]:
    """Closed and open neighbourhoods ``(N[A], N(A))``."""
    adj = g.adjacency()
    closed = a
    for v in members(a):
        closed |= adj[v]
    return closed, closed & ~a


def connected_components(h: Hypergraph, w: VertexSet | None = None) -> list[VertexSet]:
    """Components of ``h[w]`` (all of ``h`` by default), isolated vertices included."""
    if w is None:
        w = h.vertex_mask
    edges = edges_within(h, w)
    comps: list[VertexSet] = []
    remaining = w
    while remaining:
        comp = remaining & -remaining
        grown = True
        while grown:
            grown = False
            for e in edges:
                if e & comp and e & ~comp:
                    comp |= e
                    grown = True
        comps.append(comp)
        remaining &= ~comp
    return comps


def is_connected(h: Hypergraph) -> bool:
    return h.n <= 1 or len(connected_components(h)) == 1


# --- matchings -----------------------------------------------------------------

def matchings(h: Hypergraph, k: int) -> Iterator[tuple[VertexSet, ...]]:
    """All ``k``-matchings, each as a tuple of edges in increasing order."""
    edges = h.edges

    def rec(start, used, chosen):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        for i in range(start, len(edges)):
            e = edges[i]
            if not e & used:
                chosen.append(e)
                yield from rec(i + 1, used | e, chosen)
                chosen.pop()

    if k < 0:
        return
    yield from rec(0, 0, [])


def matching_number(h: Hypergraph) -> int:
    edges = h.edges

    @lru_cache(maxsize=None)
    def best(avail):
        usable = [e for e in edges if e & avail == e]
        if not usable:
            return 0
        v = (usable[0] & -usable[0])
        # either v stays unmatched, or it is matched by some edge through it
        result = best(avail & ~v)
        for e in usable:
            if e & v:
                result = max(result, 1 + best(avail & ~e))
        return result

    return best(h.vertex_mask)


def is_induced_matching(h: Hypergraph, m: Sequence[VertexSet]) -> bool:
    union = 0
    for e in m:
        if e & union:
            return False
        union |= e
    return set(edges_within(h, union)) == set(m)


def induced_matching_number(h: Hypergraph) -> int:
    edges = h.edges
    best = 0

    def rec(start, union, chosen):
        nonlocal best
        best = max(best, len(chosen))
        for i in range(start, len(edges)):
            e = edges[i]
            if e & union:
                continue
            new_union = union | e
            # every edge inside the new union must already be chosen
            inside = [f for f in edges if f & new_union == f]
            if len(inside) == len(chosen) + 1:
                chosen.append(e)
                rec(i + 1, new_union, chosen)
                chosen.pop()

    rec(0, 0, [])
    return best


# --- covers and independent sets ---------------------------------------------

def _bron_kerbosch_independent(n: int, adj: Sequence[VertexSet]) -> list[VertexSet]:
    """Maximal independent sets of a graph as maximal cliques of its complement."""
    universe = full_mask(n)
    nonadj = [universe & ~adj[v] & ~(1 << v) for v in range(n)]
    found: list[VertexSet] = []

    def expand(r, p, x):
        if not p and not x:
            found.append(r)
            return
        pivot_pool = p | x
        u = max(members(pivot_pool), key=lambda w: (nonadj[w] & p).bit_count())
        for v in members(p & ~nonadj[u]):
            bit = 1 << v
            expand(r | bit, p & nonadj[v], x & nonadj[v])
            p &= ~bit
            x |= bit

    expand(0, universe, 0)
    return found


def _minimal_transversals(edges: Sequence[VertexSet]) -> tuple[VertexSet, ...]:
    """Berge's incremental algorithm; used for non-graph hypergraphs."""
    covers: tuple[VertexSet, ...] = (0,)
    for e in edges:
        grown = []
        for c in covers:
            if c & e:
                grown.append(c)
            else:
                grown.extend(c | (1 << v) for v in members(e))
        covers = minimalize_masks(grown)
    return covers


@lru_cache(maxsize=8192)
def _minimal_covers_cached(n: int, edges: tuple[VertexSet, ...]) -> tuple[VertexSet, ...]:
    if not edges:
        return (0,)
    if all(e.bit_count() == 2 for e in edges):
        universe = full_mask(n)
        covers = [universe & ~s for s in _bron_kerbosch_independent(n, _adjacency(n, edges))]
        return tuple(sorted(covers, key=lambda c: (c.bit_count(), c)))
    return _minimal_transversals(edges)


def minimal_vertex_covers(h: Hypergraph) -> tuple[VertexSet, ...]:
    """The antichain of inclusion-minimal vertex covers, sorted by (size, mask)."""
    return _minimal_covers_cached(h.n, h.edges)


def maximal_independent_sets(h: Hypergraph) -> tuple[VertexSet, ...]:
    universe = h.vertex_mask
    return tuple(sorted(universe & ~c for c in minimal_vertex_covers(h)))


def cover_number(h: Hypergraph) -> int:
    """beta(H): minimum size of a vertex cover (= height of the edge ideal)."""
    return min(c.bit_count() for c in minimal_vertex_covers(h))


def independence_number(h: Hypergraph) -> int:
    """alpha(H), obtained from ``cover_number`` by complementation."""
    return h.n - cover_number(h)


def is_independent(h: Hypergraph, s: VertexSet) -> bool:
    return not any(e & s == e for e in h.edges)


def is_vertex_cover(h: Hypergraph, c: VertexSet) -> bool:
    return all(e & c for e in h.edges)
