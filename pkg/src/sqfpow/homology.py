"""Exact ranks of boundary matrices and reduced simplicial homology.

Faces are vertex bitmasks.  A complex is given by the collection of its faces;
the reduced chain complex includes the empty face in dimension -1.  Two
conventions matter downstream and are pinned here:

* the *void* complex (no faces at all) has no reduced homology in any degree;
* the complex ``{∅}`` has reduced homology of rank 1 in degree -1 and nothing else.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import BudgetExceeded
from .hypergraph import members


@dataclass(frozen=True)
class FieldChoice:
    """Coefficient field: ``p == 0`` for the rationals, otherwise GF(p)."""

    p: int = 0

    def __post_init__(self):
        if self.p < 0 or (self.p and any(self.p % d == 0 for d in range(2, math.isqrt(self.p) + 1))):
            raise ValueError(f"{self.p} is not a prime")
        if self.p == 1:
            raise ValueError("1 is not a prime")

    @classmethod
    def rationals(cls) -> "FieldChoice":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "FieldChoice":
        return cls(p)

    @classmethod
    def parse(cls, text) -> "FieldChoice":
        if isinstance(text, FieldChoice):
            return text
        t = str(text).strip().lower()
        if t in ("q", "qq", "rationals", "0"):
            return cls(0)
        if t.startswith("gf"):
            return cls(int(t[2:]))
        raise ValueError(f"unknown field {text!r}; use q, gf2, gf3, ...")

    @property
    def name(self) -> str:
        return "q" if self.p == 0 else f"gf{self.p}"


QQ = FieldChoice(0)


class Deadline:
    """Cooperative time budget, polled from inner loops."""

    def __init__(self, budget_ms=None):
        self.expires = None if budget_ms is None else time.monotonic() + budget_ms / 1000.0
        self.budget_ms = budget_ms

    def check(self):
        if self.expires is not None and time.monotonic() > self.expires:
            raise BudgetExceeded(f"time budget of {self.budget_ms} ms exhausted")


NO_DEADLINE = Deadline(None)


def rank(columns: Iterable[dict], field: FieldChoice = QQ) -> int:
    """Rank of a sparse integer matrix given column by column.

    Columns are dicts ``row -> entry``.  Over the rationals the reduction is
    fraction-free: a column is replaced by ``b*col - a*pivot`` and divided by
    the gcd of its entries, which keeps every entry an exact integer.
    """
    p = field.p
    pivots: dict = {}
    for col in columns:
        col = {r: v % p if p else v for r, v in col.items()}
        col = {r: v for r, v in col.items() if v}
        while col:
            r = max(col)
            piv = pivots.get(r)
            if piv is None:
                pivots[r] = col
                break
            a, b = col[r], piv[r]
            if p:
                factor = a * pow(b, -1, p) % p
                for rr, vv in piv.items():
                    nv = (col.get(rr, 0) - factor * vv) % p
                    if nv:
                        col[rr] = nv
                    else:
                        col.pop(rr, None)
            else:
                new = {rr: b * vv for rr, vv in col.items()}
                for rr, vv in piv.items():
                    nv = new.get(rr, 0) - a * vv
                    if nv:
                        new[rr] = nv
                    else:
                        new.pop(rr, None)
                if new:
                    g = 0
                    for vv in new.values():
                        g = math.gcd(g, vv)
                    if g > 1:
                        new = {rr: vv // g for rr, vv in new.items()}
                col = new
    return len(pivots)


def rank_dense(matrix: Sequence[Sequence[int]], field: FieldChoice = QQ) -> int:
    """Rank of a dense integer matrix (rows); convenience wrapper around :func:`rank`."""
    if not matrix:
        return 0
    ncols = len(matrix[0])
    cols = []
    for j in range(ncols):
        cols.append({i: row[j] for i, row in enumerate(matrix) if row[j]})
    return rank(cols, field)


def _boundary_columns(faces_d: Sequence[int], index_lower: dict) -> list[dict]:
    cols = []
    for f in faces_d:
        col = {}
        for pos, v in enumerate(members(f)):
            col[index_lower[f & ~(1 << v)]] = -1 if pos & 1 else 1
        cols.append(col)
    return cols


def reduced_homology(faces: Iterable[int], field: FieldChoice = QQ, deadline: Deadline = NO_DEADLINE) -> dict[int, int]:
    """Ranks of nonzero reduced homology groups, ``{degree: rank}``.

    ``faces`` must be downward closed (not checked).
    """
    by_dim: dict[int, list[int]] = {}
    for f in faces:
        by_dim.setdefault(f.bit_count() - 1, []).append(f)
    if not by_dim:
        return {}
    for fs in by_dim.values():
        fs.sort()
    top = max(by_dim)
    index = {d: {f: i for i, f in enumerate(fs)} for d, fs in by_dim.items()}
    # ranks[d] = rank of the boundary C_d -> C_{d-1}
    ranks = {}
    for d in range(0, top + 1):
        deadline.check()
        if d in by_dim and d - 1 in by_dim:
            ranks[d] = rank(_boundary_columns(by_dim[d], index[d - 1]), field)
        else:
            ranks[d] = 0
    out = {}
    for d in range(-1, top + 1):
        dim_c = len(by_dim.get(d, ()))
        h = dim_c - ranks.get(d, 0) - ranks.get(d + 1, 0)
        if h:
            out[d] = h
    return out


def reduced_homology_from(faces: Iterable[int], degrees: Iterable[int], field: FieldChoice = QQ,
                          deadline: Deadline = NO_DEADLINE) -> dict[int, int]:
    """Like :func:`reduced_homology` but only for the requested degrees."""
    by_dim: dict[int, list[int]] = {}
    for f in faces:
        by_dim.setdefault(f.bit_count() - 1, []).append(f)
    out = {}
    cache = {}

    def bd_rank(d):
        if d not in cache:
            deadline.check()
            if d in by_dim and d - 1 in by_dim:
                lower = sorted(by_dim[d - 1])
                idx = {f: i for i, f in enumerate(lower)}
                cache[d] = rank(_boundary_columns(sorted(by_dim[d]), idx), field)
            else:
                cache[d] = 0
        return cache[d]

    for d in degrees:
        dim_c = len(by_dim.get(d, ()))
        if not dim_c:
            continue
        h = dim_c - bd_rank(d) - bd_rank(d + 1)
        if h:
            out[d] = h
    return out
