"""Multigraded Betti numbers and Castelnuovo-Mumford regularity.

Two independent formulations are provided:

* :func:`betti_table` (Hochster): ``beta_{i,s}(S/I) = dim H~_{|s|-i-1}(D_s)``
  where ``D`` is the Stanley-Reisner complex of ``I`` (faces = non-members)
  and ``D_s`` its restriction to ``s``.
* :func:`betti_table_koszul` (upper Koszul complex):
  ``beta_{i,s}(I) = dim H~_{i-1}(K^s)`` with ``K^s = {t ⊆ s : x_{s∖t} ∈ I}``.

They agree after the shift ``beta_{i,s}(I) = beta_{i+1,s}(S/I)``.  Only
multidegrees in the lcm lattice (unions of generators) are visited.

Conventions: ``reg(0) = 0`` and ``reg(R) = 0``.
"""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
from dataclasses import dataclass, field
from pathlib import Path

from .errors import BudgetExceeded
from .homology import QQ, Deadline, FieldChoice, reduced_homology, reduced_homology_from
from .hypergraph import members, submasks
from .ideals import SqfIdeal
from .powers import Filtration, check_del_condition, mixed_sum

DEFAULT_UNIVERSE_CAP = 12


@dataclass
class BettiTable:
    """Multigraded Betti numbers ``{(i, multidegree mask): rank}``.

    ``level`` is ``"quotient"`` for ``S/I`` or ``"ideal"`` for ``I`` itself.
    """

    n: int
    level: str
    entries: dict = field(default_factory=dict)

    def ideal_table(self) -> "BettiTable":
        if self.level == "ideal":
            return self
        shifted = {(i - 1, s): r for (i, s), r in self.entries.items() if i >= 1}
        return BettiTable(self.n, "ideal", shifted)

    def coarse(self) -> dict:
        out: dict = {}
        for (i, s), r in self.entries.items():
            key = (i, s.bit_count())
            out[key] = out.get(key, 0) + r
        return out

    def totals(self) -> list[int]:
        if not self.entries:
            return []
        top = max(i for i, _ in self.entries)
        out = [0] * (top + 1)
        for (i, _), r in self.entries.items():
            out[i] += r
        return out

    def regularity(self) -> int:
        table = self.ideal_table()
        if not table.entries:
            return 0
        return max(s.bit_count() - i for i, s in table.entries)

    def to_json(self) -> dict:
        rows = sorted(
            ([i, list(members(s)), r] for (i, s), r in self.entries.items()),
            key=lambda row: (row[0], len(row[1]), row[1]),
        )
        return {"n": self.n, "level": self.level, "entries": rows}

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.n == other.n and self.level == other.level and self.entries == other.entries


def lcm_lattice(a: SqfIdeal) -> set[int]:
    """All unions of nonempty sets of minimal generators."""
    lattice: set[int] = set()
    for g in a.gens:
        lattice |= {g | x for x in lattice}
        lattice.add(g)
    return lattice


def _guard(a: SqfIdeal, cap: int):
    if a.n > cap:
        raise BudgetExceeded(f"universe of {a.n} variables exceeds the cap of {cap}")


def _restricted_faces(a: SqfIdeal, sigma: int) -> list[int]:
    gens = [g for g in a.gens if g & sigma == g]
    return [t for t in submasks(sigma) if not any(g & t == g for g in gens)]


def _koszul_faces(a: SqfIdeal, sigma: int) -> list[int]:
    gens = [g for g in a.gens if g & sigma == g]
    return [t for t in submasks(sigma) if any(g & (sigma & ~t) == g for g in gens)]


def betti_table(a: SqfIdeal, field: FieldChoice = QQ, cap: int = DEFAULT_UNIVERSE_CAP,
                budget_ms=None) -> BettiTable:
    """Multigraded Betti table of ``S/a`` via Hochster's formula."""
    _guard(a, cap)
    deadline = Deadline(budget_ms)
    entries = {}
    for sigma in sorted(lcm_lattice(a) | {0}):
        hom = reduced_homology(_restricted_faces(a, sigma), field, deadline)
        size = sigma.bit_count()
        for r, rk in hom.items():
            entries[(size - r - 1, sigma)] = rk
    return BettiTable(a.n, "quotient", entries)


def betti_table_koszul(a: SqfIdeal, field: FieldChoice = QQ, cap: int = DEFAULT_UNIVERSE_CAP,
                       budget_ms=None) -> BettiTable:
    """Multigraded Betti table of the ideal ``a`` via upper Koszul complexes."""
    _guard(a, cap)
    deadline = Deadline(budget_ms)
    entries = {}
    for sigma in sorted(lcm_lattice(a)):
        hom = reduced_homology(_koszul_faces(a, sigma), field, deadline)
        for r, rk in hom.items():
            entries[(r + 1, sigma)] = rk
    return BettiTable(a.n, "ideal", entries)


def _regularity_uncached(a: SqfIdeal, field: FieldChoice, deadline: Deadline) -> int:
    if a.is_zero or a.is_unit:
        return 0
    # reg(I) = 2 + max{r : H~_r(D_s) != 0}; generators alone give reg >= max degree.
    best = max(g.bit_count() for g in a.gens)
    for sigma in sorted(lcm_lattice(a), key=lambda s: (-s.bit_count(), s)):
        if sigma.bit_count() <= best:
            break
        faces = _restricted_faces(a, sigma)
        top = max(f.bit_count() for f in faces) - 1
        if top + 2 <= best:
            continue
        for r in range(top, best - 2, -1):
            if reduced_homology_from(faces, [r], field, deadline):
                best = r + 2
                break
    return best


class RegularityCache:
    """Content-addressed store of regularity values, one JSON file per key.

    Keys hash the canonical ideal serialisation together with the field, so
    concurrent readers are safe and writers only ever replace whole files.
    """

    def __init__(self, directory):
        self.directory = Path(directory)
        self.hits = 0
        self.misses = 0
        self._memory: dict = {}

    @staticmethod
    def key(a: SqfIdeal, field: FieldChoice) -> str:
        return hashlib.sha256(f"{a.canonical()}|{field.name}".encode()).hexdigest()

    def _path(self, key: str) -> Path:
        return self.directory / "reg" / key[:2] / f"{key}.json"

    def get(self, a: SqfIdeal, field: FieldChoice):
        key = self.key(a, field)
        if key in self._memory:
            self.hits += 1
            return self._memory[key]
        path = self._path(key)
        try:
            data = json.loads(path.read_text())
            if data.get("ideal") != a.canonical() or data.get("field") != field.name:
                raise ValueError("cache entry does not match its key")
            value = int(data["reg"])
        except (OSError, ValueError, KeyError, TypeError):
            self.misses += 1
            return None
        self._memory[key] = value
        self.hits += 1
        return value

    def put(self, a: SqfIdeal, field: FieldChoice, value: int):
        key = self.key(a, field)
        self._memory[key] = value
        path = self._path(key)
        path.parent.mkdir(parents=True, exist_ok=True)
        payload = json.dumps({"ideal": a.canonical(), "field": field.name, "reg": value}, sort_keys=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            fh.write(payload)
        os.replace(tmp, path)

    def entries(self):
        root = self.directory / "reg"
        if not root.exists():
            return []
        return sorted(root.glob("*/*.json"))

    def stats(self) -> dict:
        files = self.entries()
        return {
            "directory": str(self.directory),
            "entries": len(files),
            "bytes": sum(f.stat().st_size for f in files),
            "session_hits": self.hits,
            "session_misses": self.misses,
        }

    def gc(self) -> dict:
        """Drop unreadable or mismatched entries and stray temp files."""
        removed = 0
        root = self.directory / "reg"
        if root.exists():
            for tmp in root.glob("*/*.tmp"):
                tmp.unlink()
                removed += 1
            for f in self.entries():
                try:
                    data = json.loads(f.read_text())
                    a = SqfIdeal.from_json(data["ideal"])
                    ok = self.key(a, FieldChoice.parse(data["field"])) == f.stem
                    int(data["reg"])
                except (OSError, ValueError, KeyError, TypeError):
                    ok = False
                if not ok:
                    f.unlink()
                    removed += 1
        return {"removed": removed, **self.stats()}


_memo: dict = {}


def regularity(a: SqfIdeal, field: FieldChoice = QQ, cache: RegularityCache | None = None,
               budget_ms=None, cap: int = DEFAULT_UNIVERSE_CAP) -> int:
    """``reg(a)``; the zero and unit ideals both have regularity 0."""
    _guard(a, cap)
    field = FieldChoice.parse(field)
    memo_key = (a.n, a.gens, field.p)
    if memo_key in _memo:
        if cache is not None:
            cache.hits += 1
        return _memo[memo_key]
    if cache is not None:
        hit = cache.get(a, field)
        if hit is not None:
            _memo[memo_key] = hit
            return hit
    value = _regularity_uncached(a, field, Deadline(budget_ms))
    _memo[memo_key] = value
    if cache is not None:
        cache.put(a, field, value)
    return value


# --- mixed sums -------------------------------------------------------------------

@dataclass
class MixedSumReport:
    n: int
    direct: int
    formula: int
    formula_trimmed: int
    window: tuple
    window_trimmed: tuple

    @property
    def ok(self) -> bool:
        return self.direct == self.formula == self.formula_trimmed

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "reg_direct": self.direct,
            "reg_formula": self.formula,
            "reg_formula_trimmed": self.formula_trimmed,
            "i_window": list(self.window[0]),
            "j_window": list(self.window[1]),
            "i_window_trimmed": list(self.window_trimmed[0]),
            "j_window_trimmed": list(self.window_trimmed[1]),
            "ok": self.ok,
        }


def _formula(regs_a, regs_b, n, i_lo, i_hi, j_lo, j_hi):
    vals = [regs_a(n - i) + regs_b(i) for i in range(i_lo, i_hi + 1)]
    vals += [regs_a(n - j + 1) + regs_b(j) - 1 for j in range(j_lo, j_hi + 1)]
    # an empty window only happens at n = 0, where Q_0 = R and reg(R) = 0
    return max(vals, default=0)


def verify_mixed_sum_regularity(fa: Filtration, fb: Filtration, n: int, field: FieldChoice = QQ,
                                cache: RegularityCache | None = None, budget_ms=None) -> MixedSumReport:
    """Compare ``reg(Q_n)`` with both forms of the Tor-vanishing max formula.

    With ``a = max(0, n - nu(I))`` and ``b = min(n, nu(J))`` the first form
    ranges over ``i in [a, b]`` and ``j in [a+1, b]``; the trimmed form uses
    ``i in [max(1, n - nu(I)), min(n-1, nu(J))]`` with the same ``j`` window.
    """
    if not (all(check_del_condition(fa)) and all(check_del_condition(fb))):
        raise ValueError("both filtrations must satisfy the del_star condition")
    if not 0 <= n <= fa.nu + fb.nu:
        raise ValueError(f"n must lie in [0, {fa.nu + fb.nu}]")
    memo_a, memo_b = {}, {}

    def reg_a(i):
        if i not in memo_a:
            memo_a[i] = regularity(fa[i], field, cache, budget_ms)
        return memo_a[i]

    def reg_b(j):
        if j not in memo_b:
            memo_b[j] = regularity(fb[j], field, cache, budget_ms)
        return memo_b[j]

    a, b = max(0, n - fa.nu), min(n, fb.nu)
    a2, b2 = max(1, n - fa.nu), min(n - 1, fb.nu)
    direct = regularity(mixed_sum(fa, fb, n), field, cache, budget_ms)
    return MixedSumReport(
        n=n,
        direct=direct,
        formula=_formula(reg_a, reg_b, n, a, b, a + 1, b),
        formula_trimmed=_formula(reg_a, reg_b, n, a2, b2, a + 1, b),
        window=((a, b), (a + 1, b)),
        window_trimmed=((a2, b2), (a + 1, b)),
    )
