"""Squarefree ordinary and symbolic powers, filtrations, and mixed sums."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterable, Sequence

from .errors import UniverseMismatch
from .hypergraph import (
    Hypergraph,
    cover_number,
    disjoint_union,
    full_mask,
    induced,
    matching_number,
    matchings,
    members,
    minimal_vertex_covers,
)
from .ideals import SqfIdeal


class PowerKind(enum.Enum):
    ORDINARY = "ordinary"
    SYMBOLIC = "symbolic"

    @classmethod
    def parse(cls, value) -> "PowerKind":
        if isinstance(value, cls):
            return value
        return cls(str(value).lower())


# --- the two power functions ---------------------------------------------------

def sqf_power(h: Hypergraph, k: int) -> SqfIdeal:
    """``I(H)^[k]``: generated by the unions of the k-matchings of ``h``."""
    if k <= 0:
        return SqfIdeal.unit(h.n)
    return _sqf_power(h.n, h.edges, k)


@lru_cache(maxsize=16384)
def _sqf_power(n, edges, k):
    h = Hypergraph(n, edges)
    gens = []
    for m in matchings(h, k):
        u = 0
        for e in m:
            u |= e
        gens.append(u)
    return SqfIdeal(n, tuple(gens))


def _symbolic_generators(n: int, covers: Sequence[int], k: int) -> tuple[int, ...]:
    """Minimal vertex sets meeting every cover in at least ``k`` vertices.

    Branch and bound over vertices ordered by how many covers contain them.
    A branch is cut when some cover can no longer reach ``k``, and once every
    cover is satisfied the remaining vertices are forced out (anything larger
    would not be minimal).  Minimality is re-checked at each leaf.
    """
    cover_deg = [sum(1 for c in covers if c >> v & 1) for v in range(n)]
    order = sorted(range(n), key=lambda v: (-cover_deg[v], v))
    suffix = [0] * (n + 1)
    for i in range(n - 1, -1, -1):
        suffix[i] = suffix[i + 1] | (1 << order[i])
    found = []

    def satisfied(s):
        return all((s & c).bit_count() >= k for c in covers)

    def minimal(s):
        for v in members(s):
            if satisfied(s & ~(1 << v)):
                return False
        return True

    def rec(i, s):
        rest = suffix[i]
        for c in covers:
            if (s & c).bit_count() + (rest & c).bit_count() < k:
                return
        if satisfied(s):
            if minimal(s):
                found.append(s)
            return
        if i == n:
            return
        bit = 1 << order[i]
        rec(i + 1, s | bit)
        rec(i + 1, s)

    rec(0, 0)
    return tuple(found)


def sqf_symbolic_power(h: Hypergraph, k: int) -> SqfIdeal:
    """``I(H)^{k}``: squarefree monomials meeting each minimal cover in >= k vertices.

    ``k <= 0`` gives the unit ideal by convention.
    """
    if k <= 0:
        return SqfIdeal.unit(h.n)
    return _sqf_symbolic_power(h.n, h.edges, k)


@lru_cache(maxsize=16384)
def _sqf_symbolic_power(n, edges, k):
    covers = minimal_vertex_covers(Hypergraph(n, edges))
    if k > min(c.bit_count() for c in covers):
        return SqfIdeal.zero(n)
    return SqfIdeal(n, _symbolic_generators(n, covers, k))


def power(h: Hypergraph, k: int, kind: PowerKind) -> SqfIdeal:
    kind = PowerKind.parse(kind)
    if kind is PowerKind.ORDINARY:
        return sqf_power(h, k)
    return sqf_symbolic_power(h, k)


def nu_F(h: Hypergraph, kind: PowerKind) -> int:
    """Largest ``k`` with a nonzero power: matching number or cover number."""
    kind = PowerKind.parse(kind)
    if kind is PowerKind.ORDINARY:
        return matching_number(h)
    return cover_number(h)


def nu_F_by_search(h: Hypergraph, kind: PowerKind) -> int:
    """Same quantity as :func:`nu_F`, found by computing powers until zero."""
    k = 0
    while not power(h, k + 1, kind).is_zero:
        k += 1
    return k


def covers_each_vertex_at_size(h: Hypergraph, k: int) -> bool:
    """Every vertex lies in some minimal vertex cover of size exactly ``k``."""
    hit = 0
    for c in minimal_vertex_covers(h):
        if c.bit_count() == k:
            hit |= c
    return hit == h.vertex_mask


def is_principal_full_support(h: Hypergraph, kind: PowerKind) -> bool:
    """Whether ``F(H, nu_F(H))`` is the principal ideal of all vertices.

    For symbolic powers the vertex-cover criterion and the direct generator
    comparison are both evaluated; a disagreement raises ``AssertionError``.
    """
    kind = PowerKind.parse(kind)
    if not h.edges:
        raise ValueError("principality test needs at least one edge")
    k = nu_F(h, kind)
    direct = power(h, k, kind).gens == (h.vertex_mask,)
    if kind is PowerKind.SYMBOLIC:
        by_covers = covers_each_vertex_at_size(h, k)
        if by_covers != direct:
            raise AssertionError(
                f"cover criterion ({by_covers}) and generators ({direct}) disagree on {h!r}"
            )
    return direct


# --- filtrations -----------------------------------------------------------------

@dataclass(frozen=True)
class Filtration:
    """A decreasing sequence ``I_0 = R ⊋ I_1 ⊇ I_2 ⊇ ...`` that ends in zero.

    ``ideals`` lists ``I_0 .. I_nu``; every later term is the zero ideal.
    """

    ideals: tuple[SqfIdeal, ...]
    source: str = field(default="explicit", compare=False)

    def __post_init__(self):
        ideals = list(self.ideals)
        while len(ideals) > 1 and ideals[-1].is_zero:
            ideals.pop()
        object.__setattr__(self, "ideals", tuple(ideals))
        if not ideals or not ideals[0].is_unit:
            raise ValueError("a filtration starts with the unit ideal")
        if len(ideals) < 2 or ideals[1].is_zero or ideals[1].is_unit:
            raise ValueError("I_1 must be a nonzero proper ideal")
        n = ideals[0].n
        for i, (a, b) in enumerate(zip(ideals, ideals[1:]), start=1):
            if b.n != n:
                raise UniverseMismatch("all terms of a filtration share one universe")
            if not b.issubset(a):
                raise ValueError(f"filtration is not decreasing at step {i}")

    @property
    def n(self) -> int:
        return self.ideals[0].n

    @property
    def nu(self) -> int:
        return len(self.ideals) - 1

    def __getitem__(self, i: int) -> SqfIdeal:
        if i < 0:
            return SqfIdeal.unit(self.n)
        if i < len(self.ideals):
            return self.ideals[i]
        return SqfIdeal.zero(self.n)

    def support(self) -> int:
        out = 0
        for a in self.ideals:
            out |= a.support()
        return out

    @classmethod
    def of(cls, h: Hypergraph, kind: PowerKind) -> "Filtration":
        kind = PowerKind.parse(kind)
        nu = nu_F(h, kind)
        return cls(tuple(power(h, k, kind) for k in range(nu + 1)), source=kind.value)

    def to_json(self) -> dict:
        return {"source": self.source, "n": self.n, "ideals": [a.to_json()["gens"] for a in self.ideals]}


def check_del_condition(f: Filtration) -> list[bool]:
    """Per step ``k = 1..nu``: whether ``del_star(I_k) ⊆ I_{k-1}``.

    This is a sufficient condition for the inclusion to be Tor-vanishing; Tor
    itself is never computed.
    """
    out = []
    for k in range(1, f.nu + 1):
        ik = f[k]
        if ik.is_zero:
            out.append(True)
        else:
            out.append(ik.del_star().issubset(f[k - 1]))
    return out


def mixed_sum(fa: Filtration, fb: Filtration, n: int) -> SqfIdeal:
    """``Q_n = sum_i I_{n-i} J_i`` with ``fb`` placed after ``fa``'s variables.

    Only the window ``max(0, n - nu(I)) <= i <= min(n, nu(J))`` contributes; for
    ``n > nu(I) + nu(J)`` the window is empty and the zero ideal is returned.
    """
    if n < 0:
        raise ValueError("n must be nonnegative")
    total = fa.n + fb.n
    lo, hi = max(0, n - fa.nu), min(n, fb.nu)
    q = SqfIdeal.zero(total)
    for i in range(lo, hi + 1):
        left = SqfIdeal(total, fa[n - i].gens)
        right = fb[i].shift(fa.n, total)
        q = q + left.product(right)
    return q


def mixed_sum_full(fa: Filtration, fb: Filtration, n: int) -> SqfIdeal:
    """``Q_n`` over the untruncated range ``0 <= i <= n``; a check on :func:`mixed_sum`."""
    total = fa.n + fb.n
    q = SqfIdeal.zero(total)
    for i in range(0, n + 1):
        a, b = fa[n - i], fb[i]
        if a.is_zero or b.is_zero:
            continue
        q = q + SqfIdeal(total, a.gens).product(b.shift(fa.n, total))
    return q


# --- axiom checks ----------------------------------------------------------------

PowerFunction = Callable[[Hypergraph, int], SqfIdeal]


def _as_function(kind) -> tuple[PowerFunction, str]:
    if callable(kind) and not isinstance(kind, PowerKind):
        return kind, getattr(kind, "__name__", "custom")
    kind = PowerKind.parse(kind)
    return (lambda h, k: power(h, k, kind)), kind.value


@dataclass
class AxiomReport:
    kind: str
    checked: dict = field(default_factory=lambda: {"a": 0, "b": 0, "c": 0, "d": 0})
    violations: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json(self) -> dict:
        return {"kind": self.kind, "ok": self.ok, "checked": dict(self.checked), "violations": list(self.violations)}


def _label(h: Hypergraph) -> str:
    from .io import hypergraph_label
    return hypergraph_label(h)


def _max_k(F: PowerFunction, h: Hypergraph) -> int:
    k = 0
    while not F(h, k + 1).is_zero:
        k += 1
        if k > h.n:
            break
    return k


def check_splf_axioms(
    samples: Iterable[Hypergraph],
    kind,
    max_union_vertices: int = 6,
    induced_subgraphs: bool = True,
) -> AxiomReport:
    """Check the four squarefree-power-like axioms on ``samples``.

    (a) normalisation, (b) ``del_star`` descent, (c) restriction to every
    induced sub-hypergraph, (d) the convolution formula for disjoint unions
    (over all sample pairs whose union has at most ``max_union_vertices``).
    ``kind`` is a :class:`PowerKind` or any callable ``F(h, k)``.
    """
    F, name = _as_function(kind)
    report = AxiomReport(name)
    samples = list(samples)

    def fail(axiom, h, k, detail):
        report.violations.append({"axiom": axiom, "hypergraph": _label(h), "k": k, "detail": detail})

    for h in samples:
        top = _max_k(F, h)
        # (a)
        report.checked["a"] += 1
        if not F(h, 0).is_unit:
            fail("a", h, 0, "F(H,0) is not the unit ideal")
        if F(h, 1) != SqfIdeal.edge_ideal(h):
            fail("a", h, 1, f"F(H,1) = {F(h, 1)!r} differs from I(H)")
        for k in range(0, top + 2):
            if F(h, k).support() & ~h.vertex_mask:
                fail("a", h, k, "generator outside K[V(H)]")
        # (b)
        for k in range(1, top + 1):
            report.checked["b"] += 1
            fk = F(h, k)
            if fk.is_zero or fk.is_unit:
                continue
            bad = [g for g in fk.del_star().gens if g not in F(h, k - 1)]
            if bad:
                fail("b", h, k, f"del_star generator {list(members(bad[0]))} not in F(H,{k - 1})")
        # (c)
        if induced_subgraphs:
            for w in range(full_mask(h.n) + 1):
                sub, index_map = induced(h, w)
                for k in range(0, top + 2):
                    report.checked["c"] += 1
                    lhs = F(h, k).restrict(w)
                    rhs = F(sub, k).embed(index_map, h.n)
                    if lhs != rhs:
                        fail("c", h, k, f"restriction to {list(index_map)}: {lhs!r} vs {rhs!r}")
                        break

    # (d)
    for h1 in samples:
        for h2 in samples:
            if h1.n + h2.n > max_union_vertices:
                continue
            union, offset = disjoint_union(h1, h2)
            top = _max_k(F, h1) + _max_k(F, h2)
            for k in range(1, top + 2):
                report.checked["d"] += 1
                rhs = SqfIdeal.zero(union.n)
                for i in range(0, k + 1):
                    a = SqfIdeal(union.n, F(h1, i).gens)
                    b = F(h2, k - i).shift(offset, union.n)
                    if a.is_zero or b.is_zero:
                        continue
                    rhs = rhs + a.product(b)
                lhs = F(union, k)
                if lhs != rhs:
                    fail("d", union, k, f"{lhs!r} vs convolution {rhs!r}")
    return report
