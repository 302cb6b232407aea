"""Squarefree monomial ideals, and a small general monomial arithmetic.

A :class:`SqfIdeal` is stored as the antichain of its minimal generators, each
a vertex bitmask.  The zero ideal has no generators; the unit ideal is
generated by the empty monomial (mask 0).

:class:`GenIdeal` handles arbitrary exponent vectors.  It exists to provide an
independent route to squarefree symbolic powers (intersections of powers of
prime ideals) and is not used on any production path.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Iterable, Sequence

from .errors import BudgetExceeded, UniverseMismatch
from .hypergraph import Hypergraph, full_mask, members, minimalize_masks, vset

INFINITY = math.inf

DEFAULT_GENERATOR_CAP = 10**6
MAX_EXPONENT = 255


@dataclass(frozen=True)
class SqfIdeal:
    n: int
    gens: tuple[int, ...] = ()

    def __post_init__(self):
        gens = [g if isinstance(g, int) else vset(g) for g in self.gens]
        universe = full_mask(self.n)
        for g in gens:
            if g & ~universe:
                raise ValueError(f"generator {members(g)} leaves the universe of {self.n} variables")
        object.__setattr__(self, "gens", minimalize_masks(gens))

    # constructors
    @classmethod
    def zero(cls, n: int) -> "SqfIdeal":
        return cls(n, ())

    @classmethod
    def unit(cls, n: int) -> "SqfIdeal":
        return cls(n, (0,))

    @classmethod
    def principal(cls, n: int, mask: int) -> "SqfIdeal":
        return cls(n, (mask,))

    @classmethod
    def variables(cls, n: int, mask: int) -> "SqfIdeal":
        """The prime ideal generated by the variables in ``mask``."""
        return cls(n, tuple(1 << v for v in members(mask)))

    @classmethod
    def edge_ideal(cls, h: Hypergraph) -> "SqfIdeal":
        return cls(h.n, h.edges)

    @property
    def is_zero(self) -> bool:
        return not self.gens

    @property
    def is_unit(self) -> bool:
        return self.gens == (0,)

    def _check(self, other: "SqfIdeal"):
        if self.n != other.n:
            raise UniverseMismatch(f"universes differ: {self.n} vs {other.n}")

    def __contains__(self, m: int) -> bool:
        return any(g & m == g for g in self.gens)

    def contains(self, m: int) -> bool:
        return m in self

    def issubset(self, other: "SqfIdeal") -> bool:
        """Ideal containment ``self ⊆ other``."""
        self._check(other)
        return all(g in other for g in self.gens)

    def __le__(self, other: "SqfIdeal") -> bool:
        return self.issubset(other)

    def __add__(self, other: "SqfIdeal") -> "SqfIdeal":
        self._check(other)
        return SqfIdeal(self.n, self.gens + other.gens)

    def product(self, other: "SqfIdeal") -> "SqfIdeal":
        """Product of ideals in disjoint variable blocks (stays squarefree)."""
        self._check(other)
        if self.support() & other.support():
            raise UniverseMismatch(
                "squarefree product needs disjoint variable blocks; use GenIdeal for overlapping supports"
            )
        return SqfIdeal(self.n, tuple(a | b for a in self.gens for b in other.gens))

    def __mul__(self, other: "SqfIdeal") -> "SqfIdeal":
        return self.product(other)

    def intersect(self, other: "SqfIdeal") -> "SqfIdeal":
        self._check(other)
        return SqfIdeal(self.n, tuple(a | b for a in self.gens for b in other.gens))

    def __and__(self, other: "SqfIdeal") -> "SqfIdeal":
        return self.intersect(other)

    def colon(self, m: int) -> "SqfIdeal":
        """``(I : x_m)`` for a squarefree monomial ``x_m``."""
        return SqfIdeal(self.n, tuple(g & ~m for g in self.gens))

    def restrict(self, m: int) -> "SqfIdeal":
        """``I^{<= m}``: the ideal generated by the monomials of ``I`` dividing ``x_m``."""
        return SqfIdeal(self.n, tuple(g for g in self.gens if g & m == g))

    def del_star(self) -> "SqfIdeal":
        """The ideal generated by ``g / x`` for every generator ``g`` and ``x | g``."""
        if self.is_zero or self.is_unit:
            raise ValueError("del_star is undefined for the zero and unit ideals")
        return SqfIdeal(self.n, tuple(g & ~(1 << v) for g in self.gens for v in members(g)))

    def delta(self):
        """Minimal generator degree; ``math.inf`` for the zero ideal."""
        if self.is_zero:
            return INFINITY
        return min(g.bit_count() for g in self.gens)

    def support(self) -> int:
        out = 0
        for g in self.gens:
            out |= g
        return out

    def embed(self, index_map: Sequence[int], n: int) -> "SqfIdeal":
        """Move an ideal on relabelled variables back into a universe of size ``n``."""
        out = []
        for g in self.gens:
            m = 0
            for i in members(g):
                m |= 1 << index_map[i]
            out.append(m)
        return SqfIdeal(n, tuple(out))

    def shift(self, offset: int, n: int) -> "SqfIdeal":
        return SqfIdeal(n, tuple(g << offset for g in self.gens))

    def to_json(self) -> dict:
        gens = sorted((list(members(g)) for g in self.gens), key=lambda s: (len(s), s))
        return {"n": self.n, "gens": gens}

    def canonical(self) -> str:
        """Byte-stable serialisation; used as the cache key."""
        return json.dumps(self.to_json(), separators=(",", ":"), sort_keys=True)

    @classmethod
    def from_json(cls, data) -> "SqfIdeal":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        return cls(int(data["n"]), tuple(vset(g) for g in data["gens"]))

    def __repr__(self):
        if self.is_zero:
            return f"SqfIdeal(n={self.n}, ZERO)"
        if self.is_unit:
            return f"SqfIdeal(n={self.n}, UNIT)"
        names = ", ".join("".join(f"x{v}" for v in members(g)) for g in self.gens)
        return f"SqfIdeal(n={self.n}, ({names}))"


def equals(a: SqfIdeal, b: SqfIdeal) -> bool:
    return a.n == b.n and a.gens == b.gens


def membership(a: SqfIdeal, m: int) -> bool:
    return m in a


def delta_min_degree(a: SqfIdeal):
    return a.delta()


# --- general monomial ideals (oracle only) -----------------------------------

Monomial = tuple[int, ...]


def _divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _minimalize_monomials(monos: Iterable[Monomial], cap: int) -> tuple[Monomial, ...]:
    uniq = set(monos)
    if len(uniq) > cap:
        raise BudgetExceeded(f"{len(uniq)} intermediate generators exceed the cap of {cap}")
    kept: list[Monomial] = []
    for m in sorted(uniq, key=lambda x: (sum(x), x)):
        if not any(_divides(g, m) for g in kept):
            kept.append(m)
    return tuple(kept)


@dataclass(frozen=True)
class GenIdeal:
    n: int
    gens: tuple[Monomial, ...] = ()
    cap: int = DEFAULT_GENERATOR_CAP

    def __post_init__(self):
        gens = []
        for g in self.gens:
            g = tuple(int(x) for x in g)
            if len(g) != self.n:
                raise UniverseMismatch(f"exponent vector {g} has the wrong length for n={self.n}")
            if any(x < 0 or x > MAX_EXPONENT for x in g):
                raise ValueError(f"exponents must lie in [0, {MAX_EXPONENT}]")
            gens.append(g)
        object.__setattr__(self, "gens", _minimalize_monomials(gens, self.cap))

    @classmethod
    def prime(cls, n: int, mask: int, cap: int = DEFAULT_GENERATOR_CAP) -> "GenIdeal":
        gens = []
        for v in members(mask):
            e = [0] * n
            e[v] = 1
            gens.append(tuple(e))
        return cls(n, tuple(gens), cap)

    @classmethod
    def from_sqf(cls, a: SqfIdeal) -> "GenIdeal":
        return cls(a.n, tuple(tuple((g >> v) & 1 for v in range(a.n)) for g in a.gens))

    @property
    def is_zero(self) -> bool:
        return not self.gens


def gen_intersect(a: GenIdeal, b: GenIdeal) -> GenIdeal:
    if a.n != b.n:
        raise UniverseMismatch(f"universes differ: {a.n} vs {b.n}")
    cap = min(a.cap, b.cap)
    lcms = [tuple(max(x, y) for x, y in zip(p, q)) for p in a.gens for q in b.gens]
    if len(lcms) > cap:
        raise BudgetExceeded(f"{len(lcms)} intermediate generators exceed the cap of {cap}")
    return GenIdeal(a.n, tuple(lcms), cap)


def gen_product(a: GenIdeal, b: GenIdeal) -> GenIdeal:
    if a.n != b.n:
        raise UniverseMismatch(f"universes differ: {a.n} vs {b.n}")
    cap = min(a.cap, b.cap)
    prods = [tuple(x + y for x, y in zip(p, q)) for p in a.gens for q in b.gens]
    if len(prods) > cap:
        raise BudgetExceeded(f"{len(prods)} intermediate generators exceed the cap of {cap}")
    return GenIdeal(a.n, tuple(prods), cap)


def gen_power(a: GenIdeal, k: int) -> GenIdeal:
    """``a^k`` by multiset products of generators, then minimalisation."""
    if k < 1:
        raise ValueError("gen_power needs k >= 1")
    count = math.comb(len(a.gens) + k - 1, k)
    if count > a.cap:
        raise BudgetExceeded(f"{count} products exceed the cap of {a.cap}")
    prods = []
    for combo in combinations_with_replacement(a.gens, k):
        prods.append(tuple(sum(col) for col in zip(*combo)))
    return GenIdeal(a.n, tuple(prods), a.cap)


def sqf_part(a: GenIdeal) -> SqfIdeal:
    """The ideal generated by the squarefree monomials of ``a``."""
    keep = [g for g in a.gens if all(x <= 1 for x in g)]
    return SqfIdeal(a.n, tuple(vset(i for i, x in enumerate(g) if x) for g in keep))


def symbolic_power_oracle(covers: Sequence[int], n: int, k: int) -> SqfIdeal:
    """``sqf(p_1^k ∩ ... ∩ p_r^k)`` with each ``p_i`` generated by a cover."""
    if k <= 0:
        return SqfIdeal.unit(n)
    acc: GenIdeal | None = None
    for c in covers:
        if c == 0:
            return SqfIdeal.zero(n)
        pk = gen_power(GenIdeal.prime(n, c), k)
        acc = pk if acc is None else gen_intersect(acc, pk)
    if acc is None:
        return SqfIdeal.unit(n)
    return sqf_part(acc)
