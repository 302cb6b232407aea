"""Graph-class recognizers with witnesses, block-graph structure, the
constructions used for block and complete-whisker graphs, and an
isomorphism-free enumerator of small graphs.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Sequence

from .errors import BudgetExceeded, InputClassError
from .hypergraph import (
    Hypergraph,
    complement,
    connected_components,
    full_mask,
    is_connected,
    members,
    vset,
)
from .io import to_graph6

ENUMERATION_CAP = 8
CANONICAL_LEAF_CAP = 200_000


def _require_graph(g: Hypergraph):
    if not g.is_graph:
        raise InputClassError("this recognizer needs a graph (all edges of size 2)")


# --- cliques and simplicial vertices -------------------------------------------

def maximal_cliques(g: Hypergraph) -> tuple[int, ...]:
    """All maximal cliques as masks, sorted; isolated vertices are singleton cliques."""
    _require_graph(g)
    adj = g.adjacency()
    out: list[int] = []

    def expand(r, p, x):
        if not p and not x:
            out.append(r)
            return
        pivot_pool = p | x
        u = max(members(pivot_pool), key=lambda w: (adj[w] & p).bit_count())
        for v in members(p & ~adj[u]):
            bit = 1 << v
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    if g.n:
        expand(0, full_mask(g.n), 0)
    return tuple(sorted(out))


def is_clique(g: Hypergraph, s: int) -> bool:
    adj = g.adjacency()
    return all(s & ~(1 << v) & ~adj[v] == 0 for v in members(s))


def simplicial_vertices(g: Hypergraph, within: int | None = None) -> int:
    """Vertices whose neighbourhood is a clique (in ``g[within]`` if given)."""
    _require_graph(g)
    adj = g.adjacency()
    w = g.vertex_mask if within is None else within
    out = 0
    for v in members(w):
        nb = adj[v] & w
        if all(nb & ~(1 << u) & ~adj[u] == 0 for u in members(nb)):
            out |= 1 << v
    return out


# --- induced cycles -------------------------------------------------------------

def shortest_induced_cycle(g: Hypergraph, min_length: int) -> list[int] | None:
    """A shortest induced cycle of length ``>= min_length``, or ``None``."""
    _require_graph(g)
    adj = g.adjacency()
    best: list[int] | None = None

    def extend(path, inside, limit):
        nonlocal best
        start, last = path[0], path[-1]
        length = len(path)
        if length >= min_length and adj[last] >> start & 1 and length >= 3:
            if best is None or length < len(best):
                best = list(path)
            return
        if length >= limit:
            return
        for v in members(adj[last] & ~inside):
            if v <= start:
                continue
            # v may touch the path only at `last`, and at `start` only when closing
            touching = adj[v] & inside & ~(1 << last)
            if touching & ~(1 << start):
                continue
            if touching and length + 1 < min_length:
                continue
            path.append(v)
            extend(path, inside | (1 << v), limit)
            path.pop()

    for limit in range(min_length, g.n + 1):
        for s in range(g.n):
            extend([s], 1 << s, limit)
        if best is not None:
            return best
    return None


def is_chordal(g: Hypergraph) -> tuple[bool, list[int]]:
    """Chordality with a witness: a perfect elimination ordering, or an induced cycle."""
    _require_graph(g)
    remaining = g.vertex_mask
    order = []
    while remaining:
        simp = simplicial_vertices(g, remaining)
        if not simp:
            return False, shortest_induced_cycle(g, 4)
        v = members(simp)[0]
        order.append(v)
        remaining &= ~(1 << v)
    return True, order


def is_perfect_elimination_ordering(g: Hypergraph, order: Sequence[int]) -> bool:
    adj = g.adjacency()
    later = g.vertex_mask
    for v in order:
        later &= ~(1 << v)
        if not is_clique(g, adj[v] & later):
            return False
    return later == 0 and sorted(order) == list(range(g.n))


def is_weakly_chordal(g: Hypergraph) -> tuple[bool, dict | None]:
    """No induced cycle of length >= 5 in ``g`` or its complement."""
    _require_graph(g)
    for where, h in (("graph", g), ("complement", complement(g))):
        cyc = shortest_induced_cycle(h, 5)
        if cyc is not None:
            return False, {"in": where, "cycle": cyc}
    return True, None


# --- blocks ---------------------------------------------------------------------

@dataclass(frozen=True)
class BlockDecomposition:
    """Biconnected pieces (with bridges and isolated vertices) and cut vertices."""

    blocks: tuple[int, ...]
    cut_vertices: int

    def to_json(self) -> dict:
        return {
            "blocks": [list(members(b)) for b in self.blocks],
            "cut_vertices": list(members(self.cut_vertices)),
        }


def block_decomposition(g: Hypergraph) -> BlockDecomposition:
    """Biconnected components via Tarjan's low-point DFS."""
    _require_graph(g)
    adj = g.adjacency()
    disc = [-1] * g.n
    low = [0] * g.n
    stack: list[tuple[int, int]] = []
    blocks: list[int] = []
    cuts = 0
    counter = 0

    def dfs(u, parent):
        nonlocal counter, cuts
        disc[u] = low[u] = counter
        counter += 1
        children = 0
        for v in members(adj[u]):
            if disc[v] == -1:
                children += 1
                stack.append((u, v))
                dfs(v, u)
                low[u] = min(low[u], low[v])
                if low[v] >= disc[u]:
                    if parent != -1 or children > 1:
                        cuts |= 1 << u
                    comp = 0
                    while True:
                        a, b = stack.pop()
                        comp |= (1 << a) | (1 << b)
                        if (a, b) == (u, v):
                            break
                    blocks.append(comp)
            elif v != parent and disc[v] < disc[u]:
                stack.append((u, v))
                low[u] = min(low[u], disc[v])

    for s in range(g.n):
        if disc[s] == -1:
            if not adj[s]:
                disc[s] = counter
                counter += 1
                blocks.append(1 << s)
            else:
                dfs(s, -1)
    return BlockDecomposition(tuple(sorted(blocks)), cuts)


def is_block_graph(g: Hypergraph) -> tuple[bool, BlockDecomposition]:
    """Block graph iff every biconnected component is a clique."""
    dec = block_decomposition(g)
    return all(is_clique(g, b) for b in dec.blocks), dec


# --- Cohen-Macaulay chordal -------------------------------------------------------

def cm_chordal_partition(g: Hypergraph) -> list[int] | None:
    """Partition of V into maximal cliques each holding a simplicial vertex, if any.

    A simplicial vertex lies in exactly one maximal clique, its closed
    neighbourhood, so the candidate parts are exactly those neighbourhoods.
    The exact-cover search takes the lowest uncovered vertex first and tries
    candidates in increasing mask order, so the first hit is deterministic.
    """
    _require_graph(g)
    adj = g.adjacency()
    simp = simplicial_vertices(g)
    candidates = sorted({adj[v] | (1 << v) for v in members(simp)})
    full = g.vertex_mask

    def search(covered, chosen):
        if covered == full:
            return list(chosen)
        low = (full & ~covered) & -(full & ~covered)
        for c in candidates:
            if c & low and not c & covered:
                chosen.append(c)
                got = search(covered | c, chosen)
                if got is not None:
                    return got
                chosen.pop()
        return None

    return search(0, [])


def validate_cm_partition(g: Hypergraph, parts: Sequence[int]) -> bool:
    """Re-check a CM-chordal witness without reusing the search."""
    cover = 0
    for p in parts:
        if p & cover:
            return False
        cover |= p
    if cover != g.vertex_mask:
        return False
    cliques = set(maximal_cliques(g))
    simp = simplicial_vertices(g)
    return all(p in cliques and p & simp for p in parts)


def is_cm_chordal(g: Hypergraph) -> tuple[bool, list[int] | None]:
    if not is_chordal(g)[0]:
        return False, None
    parts = cm_chordal_partition(g)
    return parts is not None, parts


def is_forest(g: Hypergraph) -> bool:
    _require_graph(g)
    return len(g.edges) == g.n - len(connected_components(g))


def is_complete(g: Hypergraph) -> bool:
    _require_graph(g)
    return len(g.edges) == g.n * (g.n - 1) // 2


# --- special blocks --------------------------------------------------------------

@dataclass(frozen=True)
class SpecialBlockWitness:
    """A special block with one valid ordering ``u_1..u_d``.

    ``attached_pendants`` maps each ``u_i`` (``i < d``) to the far endpoints of
    the two-vertex blocks meeting the block only at ``u_i`` (Type III only).
    """

    block: int
    block_type: str
    ordering: tuple[int, ...]
    attached_pendants: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "block": list(members(self.block)),
            "type": self.block_type,
            "ordering": list(self.ordering),
            "attached_pendants": {str(u): list(vs) for u, vs in sorted(self.attached_pendants.items())},
        }


def attached_blocks(blocks: Sequence[int], block: int, u: int) -> list[int]:
    """Blocks ``D != block`` with ``D ∩ block = {u}``."""
    return [d for d in blocks if d != block and d & block == 1 << u]


def special_blocks(g: Hypergraph) -> list[SpecialBlockWitness]:
    """Every special block of a block graph, with every valid ordering.

    The conditions only distinguish the last vertex ``u_d`` from the rest, so
    one witness is produced per valid choice of ``u_d`` with ``u_1..u_{d-1}``
    in increasing order.  Blocks are maximal cliques (isolated vertices count).
    """
    ok, _ = is_block_graph(g)
    if not ok:
        raise InputClassError("special blocks are defined for block graphs only")
    blocks = maximal_cliques(g)
    out = []
    for L in blocks:
        verts = members(L)
        d = len(verts)
        att = {u: attached_blocks(blocks, L, u) for u in verts}
        if d <= 2 and all(not att[u] for u in verts):
            out.append(SpecialBlockWitness(L, "I", verts))
            continue
        for last in verts:
            rest = tuple(u for u in verts if u != last)
            order = rest + (last,)
            if d >= 3 and all(not att[u] for u in rest):
                out.append(SpecialBlockWitness(L, "II", order))
            elif d >= 2 and any(att[u] for u in rest) and all(
                D.bit_count() == 2 for u in rest for D in att[u]
            ):
                pendants = {u: tuple(members(D & ~(1 << u))[0] for D in att[u]) for u in rest if att[u]}
                out.append(SpecialBlockWitness(L, "III", order, pendants))
    return out


def validate_special_block(g: Hypergraph, w: SpecialBlockWitness) -> bool:
    """Re-check a special-block witness directly from the definition."""
    blocks = maximal_cliques(g)
    if w.block not in blocks or vset(w.ordering) != w.block or len(w.ordering) != w.block.bit_count():
        return False
    d = len(w.ordering)
    att = [attached_blocks(blocks, w.block, u) for u in w.ordering]
    if w.block_type == "I":
        return d <= 2 and not any(att)
    if w.block_type == "II":
        return d >= 3 and not any(att[: d - 1])
    if w.block_type == "III":
        return d >= 2 and any(att[: d - 1]) and all(D.bit_count() == 2 for a in att[: d - 1] for D in a)
    return False


# --- constructions ----------------------------------------------------------------

def build_attach_Kn(g: Hypergraph, s: int, n: int) -> tuple[Hypergraph, tuple[int, ...]]:
    """``g`` plus a disjoint ``K_n`` on new vertices ``x_1..x_n``, with ``x_n`` joined to all of ``s``.

    Returns the graph and the new vertex indices ``(x_1, ..., x_n)``.
    """
    _require_graph(g)
    if n < 2:
        raise ValueError("the attached complete graph needs n >= 2")
    if s & ~g.vertex_mask:
        raise ValueError("s must be a subset of V(g)")
    m = g.n
    xs = tuple(range(m, m + n))
    edges = [members(e) for e in g.edges]
    edges += list(combinations(xs, 2))
    edges += [(u, xs[-1]) for u in members(s)]
    return Hypergraph(m + n, edges), xs


def build_whiskered_attach(g: Hypergraph, v: int, n: int) -> tuple[Hypergraph, tuple[int, ...], tuple[int, ...]]:
    """``g`` plus a whiskered ``K_n`` whose clique vertices are all joined to ``v``.

    Returns the graph, the clique vertices and their pendant partners.
    """
    _require_graph(g)
    if n < 1:
        raise ValueError("n must be at least 1")
    if not 0 <= v < g.n:
        raise ValueError("v must be a vertex of g")
    m = g.n
    xs = tuple(range(m, m + n))
    ys = tuple(range(m + n, m + 2 * n))
    edges = [members(e) for e in g.edges]
    edges += list(combinations(xs, 2))
    edges += list(zip(xs, ys))
    edges += [(v, x) for x in xs]
    return Hypergraph(m + 2 * n, edges), xs, ys


def whisker_complete(n: int) -> Hypergraph:
    """``K_n`` on ``0..n-1`` with a pendant vertex ``n+i`` hung on each ``i``."""
    if n < 1:
        raise ValueError("n must be at least 1")
    edges = list(combinations(range(n), 2)) + [(i, n + i) for i in range(n)]
    return Hypergraph(2 * n, edges)


def complete_with_pendants(n: int, r: int) -> Hypergraph:
    """``K_n`` with ``r`` pendants at the distinct vertices ``0..r-1``."""
    if not 0 <= r <= n:
        raise ValueError("need 0 <= r <= n")
    edges = list(combinations(range(n), 2)) + [(i, n + i) for i in range(r)]
    return Hypergraph(n + r, edges)


def add_two_pendants(g: Hypergraph, x: int) -> Hypergraph:
    """``g`` with two new degree-one vertices hung on ``x``."""
    _require_graph(g)
    if not 0 <= x < g.n:
        raise ValueError("x must be a vertex of g")
    edges = [members(e) for e in g.edges] + [(x, g.n), (x, g.n + 1)]
    return Hypergraph(g.n + 2, edges)


# --- canonical forms and enumeration -----------------------------------------------

def _refine(adj: Sequence[int], cells: list[list[int]]) -> list[list[int]]:
    """Equitable refinement of an ordered partition (1-dimensional colour refinement)."""
    while True:
        colour = {}
        for ci, cell in enumerate(cells):
            for v in cell:
                colour[v] = ci
        masks = [vset(c) for c in cells]
        new = []
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            groups: dict = {}
            for v in cell:
                sig = tuple((adj[v] & m).bit_count() for m in masks)
                groups.setdefault(sig, []).append(v)
            for sig in sorted(groups):
                new.append(groups[sig])
        if len(new) == len(cells):
            return new
        cells = new


def _bits_under(adj: Sequence[int], order: Sequence[int]) -> tuple[int, ...]:
    """Upper-triangle adjacency bits (graph6 column order) after relabelling by ``order``."""
    return tuple(
        (adj[order[j]] >> order[i]) & 1 for j in range(1, len(order)) for i in range(j)
    )


def canonical_order(g: Hypergraph, leaf_cap: int = CANONICAL_LEAF_CAP) -> tuple[int, ...]:
    """Canonical vertex order: the minimum adjacency bit-string over the
    leaves of an individualisation-refinement search tree.
    """
    _require_graph(g)
    adj = g.adjacency()
    n = g.n
    if n == 0:
        return ()
    degree_cells: dict = {}
    for v in range(n):
        degree_cells.setdefault(adj[v].bit_count(), []).append(v)
    start = _refine(adj, [degree_cells[d] for d in sorted(degree_cells)])
    best_bits = None
    best_order = None
    leaves = 0

    def search(cells):
        nonlocal best_bits, best_order, leaves
        target = next((i for i, c in enumerate(cells) if len(c) > 1), None)
        if target is None:
            leaves += 1
            if leaves > leaf_cap:
                raise BudgetExceeded(f"canonical labelling exceeded {leaf_cap} search leaves")
            order = [c[0] for c in cells]
            bits = _bits_under(adj, order)
            if best_bits is None or bits < best_bits:
                best_bits, best_order = bits, tuple(order)
            return
        cell = cells[target]
        for v in cell:
            split = cells[:target] + [[v], [u for u in cell if u != v]] + cells[target + 1:]
            search(_refine(adj, split))

    search(start)
    return best_order


def relabel(g: Hypergraph, order: Sequence[int]) -> Hypergraph:
    """The graph whose vertex ``i`` is ``order[i]`` of ``g``."""
    pos = {v: i for i, v in enumerate(order)}
    return Hypergraph(g.n, [tuple(pos[v] for v in members(e)) for e in g.edges])


def canonical_form(g: Hypergraph) -> Hypergraph:
    return relabel(g, canonical_order(g))


def canonical_graph6(g: Hypergraph) -> str:
    return to_graph6(canonical_form(g))


HEREDITARY = ("chordal", "block", "weakly_chordal")

CLASS_TESTS = {
    "chordal": lambda g: is_chordal(g)[0],
    "weakly_chordal": lambda g: is_weakly_chordal(g)[0],
    "block": lambda g: is_block_graph(g)[0],
    "cm_chordal": lambda g: is_cm_chordal(g)[0],
    "forest": is_forest,
    "complete": is_complete,
    "connected": is_connected,
}


@lru_cache(maxsize=None)
def _all_graphs(n: int, hereditary: tuple[str, ...]) -> tuple[Hypergraph, ...]:
    """Canonical representatives of all graphs on ``n`` vertices in the given
    hereditary classes, built by adding one vertex to the ``n-1`` list.
    """
    if n == 0:
        return (Hypergraph(0, ()),)
    seen: dict = {}
    for base in _all_graphs(n - 1, hereditary):
        base_edges = [members(e) for e in base.edges]
        for nb in range(1 << (n - 1)):
            g = Hypergraph(n, base_edges + [(u, n - 1) for u in members(nb)])
            if not all(CLASS_TESTS[c](g) for c in hereditary):
                continue
            c = canonical_form(g)
            if c.edges not in seen:
                seen[c.edges] = c
    reps = list(seen.values())
    reps.sort(key=lambda h: (len(h.edges), _bits_under(h.adjacency(), range(n))))
    return tuple(reps)


def enumerate_graphs(n: int, classes: Iterable[str] = (), connected: bool = False,
                     cap: int = ENUMERATION_CAP) -> Iterator[Hypergraph]:
    """One canonical representative per isomorphism class on ``n`` vertices.

    ``classes`` names entries of :data:`CLASS_TESTS`; hereditary ones prune the
    vertex-by-vertex construction.  Order: edge count, then adjacency bits.
    """
    if n > cap:
        raise BudgetExceeded(f"enumeration of {n}-vertex graphs exceeds the cap of {cap}")
    classes = tuple(classes)
    unknown = [c for c in classes if c not in CLASS_TESTS]
    if unknown:
        raise ValueError(f"unknown graph classes: {unknown}")
    hereditary = tuple(sorted(c for c in classes if c in HEREDITARY))
    for g in _all_graphs(n, hereditary):
        if connected and not is_connected(g):
            continue
        if all(CLASS_TESTS[c](g) for c in classes if c not in HEREDITARY):
            yield g


# --- report ---------------------------------------------------------------------

@dataclass
class GraphClassReport:
    flags: dict
    witnesses: dict

    def to_json(self) -> dict:
        return {"flags": dict(self.flags), "witnesses": dict(self.witnesses)}


def classify(g: Hypergraph) -> GraphClassReport:
    """All class flags for ``g`` with a checkable witness per flag where one exists."""
    if not g.is_graph:
        return GraphClassReport({"is_graph": False}, {})
    chordal, cw = is_chordal(g)
    weak, ww = is_weakly_chordal(g)
    block, dec = is_block_graph(g)
    cm, parts = is_cm_chordal(g)
    flags = {
        "is_graph": True,
        "is_chordal": chordal,
        "is_weakly_chordal": weak,
        "is_block_graph": block,
        "is_cm_chordal": cm,
        "is_forest": is_forest(g),
        "is_complete": is_complete(g),
    }
    witnesses = {
        "chordal": {"elimination_ordering": cw} if chordal else {"induced_cycle": cw},
        "weakly_chordal": ww,
        "block_graph": dec.to_json(),
        "cm_chordal": [list(members(p)) for p in parts] if parts else None,
    }
    return GraphClassReport(flags, witnesses)
