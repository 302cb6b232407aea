"""k-admissible F-sets, the admissible number adm^F(H, k), and its symbolic
specialisation ind(H, k), each returned with a checkable certificate.

Search strategy.  Condition (2) forces every connected component of H[C] into
a single part, and condition (4) rules out parts holding a vertex isolated in
H[C] (no generator of F(H[C_i], nu) can contain it).  So a candidate C has no
isolated vertices and each part is a union of components of H[C].  Because
nu_F is additive over disjoint unions and F of a disjoint union at its top
index is the product of the top pieces, a part satisfies (4) exactly when each
of its components does, and the score |C| - sum nu does not depend on the
grouping.  Grouping only changes r, and the upper bound in (3) loosens as r
grows; hence C is admissible iff its components all satisfy (4) and
``k <= sum nu <= (#components) + k - 1``.  The certificate uses the fewest
parts that still satisfy (3).  :func:`adm_number_by_partitions` enumerates all
groupings explicitly and serves as a cross-check.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .homology import QQ, FieldChoice
from .hypergraph import (
    Hypergraph,
    connected_components,
    edges_within,
    independence_number,
    induced,
    members,
    submasks,
    vset,
)
from .powers import PowerKind, is_principal_full_support, nu_F, power
from .regularity import regularity


@dataclass(frozen=True)
class AdmissibleCertificate:
    C: int
    parts: tuple[int, ...]
    nu: tuple[int, ...]
    kind: PowerKind
    k: int
    score: int

    def to_json(self, h: Hypergraph | None = None) -> dict:
        out = {
            "C": list(members(self.C)),
            "parts": [list(members(p)) for p in self.parts],
            "nu": list(self.nu),
            "kind": self.kind.value,
            "k": self.k,
            "score": self.score,
        }
        if h is not None:
            out["hypergraph"] = h.to_json()
        return out

    @classmethod
    def from_json(cls, data) -> "AdmissibleCertificate":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        return cls(
            C=vset(data["C"]),
            parts=tuple(vset(p) for p in data["parts"]),
            nu=tuple(int(x) for x in data["nu"]),
            kind=PowerKind.parse(data["kind"]),
            k=int(data["k"]),
            score=int(data["score"]),
        )


def _sub(h: Hypergraph, w: int) -> Hypergraph:
    return induced(h, w)[0]


@lru_cache(maxsize=65536)
def _piece_data(n: int, edges: tuple[int, ...], kind: PowerKind) -> tuple[int, bool]:
    """``(nu_F, F(H, nu_F) == (x_V))`` for a connected piece with at least one edge."""
    h = Hypergraph(n, edges)
    return nu_F(h, kind), is_principal_full_support(h, kind)


def _piece(h: Hypergraph, w: int, kind: PowerKind) -> tuple[int, bool]:
    sub = _sub(h, w)
    return _piece_data(sub.n, sub.edges, kind)


def validate_certificate(cert: AdmissibleCertificate, h: Hypergraph) -> tuple[bool, str | None]:
    """Re-check a certificate from scratch; returns ``(ok, first violated condition)``.

    Condition ids: ``"partition"``, ``"1"``-``"4"``, ``"nu"`` (stored nu values
    wrong), ``"score"``, ``"range"`` (k outside ``1..nu_F``).
    """
    kind = cert.kind
    if cert.C & ~h.vertex_mask or not 1 <= cert.k <= nu_F(h, kind):
        return False, "range"
    union = 0
    for p in cert.parts:
        if not p or p & union:
            return False, "partition"
        union |= p
    if union != cert.C or len(cert.nu) != len(cert.parts):
        return False, "partition"
    if any(not edges_within(h, p) for p in cert.parts):
        return False, "1"
    for e in edges_within(h, cert.C):
        if not any(e & p == e for p in cert.parts):
            return False, "2"
    subs = [_sub(h, p) for p in cert.parts]
    nus = [nu_F(s, kind) for s in subs]
    if list(cert.nu) != nus:
        return False, "nu"
    total, r = sum(nus), len(cert.parts)
    if not cert.k <= total <= r + cert.k - 1:
        return False, "3"
    if not all(is_principal_full_support(s, kind) for s in subs):
        return False, "4"
    if cert.score != cert.C.bit_count() - total:
        return False, "score"
    if kind is PowerKind.SYMBOLIC:
        # principal top power forces nu = beta; the score is then alpha(H[C])
        if cert.score != independence_number(_sub(h, cert.C)):
            return False, "score"
    return True, None


def _order_key(c: int) -> tuple[int, ...]:
    return members(c)


def _group(components: Sequence[int], r: int) -> tuple[int, ...]:
    """Deterministic grouping into ``r`` parts: singletons first, remainder merged."""
    parts = list(components[: r - 1])
    rest = 0
    for c in components[r - 1:]:
        rest |= c
    parts.append(rest)
    return tuple(parts)


def adm_number(h: Hypergraph, k: int, kind: PowerKind) -> tuple[int, AdmissibleCertificate]:
    """``adm^F(H, k)`` with a certificate.

    Ties go to the lexicographically smallest ``C`` (as a sorted vertex list),
    then to the fewest parts.
    """
    kind = PowerKind.parse(kind)
    top = nu_F(h, kind)
    if not 1 <= k <= top:
        raise ValueError(f"k must lie in [1, {top}], got {k}")
    best = None
    for C in submasks(h.vertex_mask):
        if not C:
            continue
        comps = sorted(connected_components(h, C), key=_order_key)
        if any(c.bit_count() == 1 for c in comps):
            continue
        total = 0
        ok = True
        nus = []
        for comp in comps:
            nu, principal = _piece(h, comp, kind)
            if not principal:
                ok = False
                break
            nus.append(nu)
            total += nu
        if not ok or not k <= total <= len(comps) + k - 1:
            continue
        score = C.bit_count() - total
        if best is not None and (score < best[0] or (score == best[0] and _order_key(C) >= _order_key(best[1]))):
            continue
        r = max(1, total - k + 1)
        parts = _group(comps, r)
        part_nus = tuple(sum(nus[i] for i, c in enumerate(comps) if c & p) for p in parts)
        best = (score, C, parts, part_nus)
    if best is None:
        raise RuntimeError(f"no {k}-admissible set found for {h!r}")
    score, C, parts, part_nus = best
    return score, AdmissibleCertificate(C, parts, part_nus, kind, k, score)


def _set_partitions(items: Sequence[int]):
    if not items:
        yield []
        return
    first, rest = items[0], items[1:]
    for part in _set_partitions(rest):
        for i in range(len(part)):
            yield part[:i] + [part[i] | first] + part[i + 1:]
        yield [first] + part


def adm_number_by_partitions(h: Hypergraph, k: int, kind: PowerKind) -> int:
    """Reference value of ``adm^F(H, k)``: every C without isolated vertices and
    every grouping of its components is validated with :func:`validate_certificate`.
    """
    kind = PowerKind.parse(kind)
    best = None
    for C in submasks(h.vertex_mask):
        if not C:
            continue
        comps = connected_components(h, C)
        if any(c.bit_count() == 1 for c in comps):
            continue
        for parts in _set_partitions(comps):
            nus = tuple(nu_F(_sub(h, p), kind) for p in parts)
            score = C.bit_count() - sum(nus)
            cert = AdmissibleCertificate(C, tuple(parts), nus, kind, k, score)
            if validate_certificate(cert, h)[0]:
                best = score if best is None else max(best, score)
                break
    return best


# --- symbolic specialisation ---------------------------------------------------------

def _brute_minimal_covers(h: Hypergraph) -> list[int]:
    covers = [c for c in range(1 << h.n) if all(e & c for e in h.edges)]
    return [c for c in covers if not any(d != c and d & c == d for d in covers)]


def _brute_alpha(h: Hypergraph) -> int:
    return max(s.bit_count() for s in range(1 << h.n) if not any(e & s == e for e in h.edges))


def ind_number(g: Hypergraph, k: int) -> tuple[int, AdmissibleCertificate]:
    """``ind(G, k)`` phrased with beta and alpha, independent of the power engine.

    Per-component cover numbers and the principality test come from a
    brute-force list of minimal covers (every vertex must lie in a minimal
    cover of size beta); the score is alpha(G[C]) by exhaustive search.
    """
    beta = min(c.bit_count() for c in _brute_minimal_covers(g)) if g.edges else 0
    if not 1 <= k <= beta:
        raise ValueError(f"k must lie in [1, {beta}], got {k}")
    piece_cache: dict = {}
    best = None
    for C in range(1, 1 << g.n):
        comps = sorted(connected_components(g, C), key=_order_key)
        if any(c.bit_count() == 1 for c in comps):
            continue
        betas = []
        for comp in comps:
            if comp not in piece_cache:
                sub = _sub(g, comp)
                covers = _brute_minimal_covers(sub)
                b = min(c.bit_count() for c in covers)
                hit = 0
                for c in covers:
                    if c.bit_count() == b:
                        hit |= c
                piece_cache[comp] = (b, hit == sub.vertex_mask)
            b, principal = piece_cache[comp]
            if not principal:
                break
            betas.append(b)
        else:
            total = sum(betas)
            if not k <= total <= len(comps) + k - 1:
                continue
            score = _brute_alpha(_sub(g, C))
            if best is None or score > best[0] or (score == best[0] and _order_key(C) < _order_key(best[1])):
                r = max(1, total - k + 1)
                parts = _group(comps, r)
                part_betas = tuple(sum(betas[i] for i, c in enumerate(comps) if c & p) for p in parts)
                best = (score, C, parts, part_betas)
    if best is None:
        raise RuntimeError(f"no {k}-admissible set found for {g!r}")
    score, C, parts, part_betas = best
    return score, AdmissibleCertificate(C, parts, part_betas, PowerKind.SYMBOLIC, k, score)


# --- lower bound --------------------------------------------------------------------

@dataclass
class LowerBoundReport:
    k: int
    kind: PowerKind
    reg: int
    adm: int
    certificate: AdmissibleCertificate

    @property
    def slack(self) -> int:
        return self.reg - (self.adm + self.k)

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "kind": self.kind.value,
            "reg": self.reg,
            "adm": self.adm,
            "slack": self.slack,
            "certificate": self.certificate.to_json(),
        }


def lower_bound_check(h: Hypergraph, k: int, kind: PowerKind, field: FieldChoice = QQ,
                      cache=None, budget_ms=None) -> LowerBoundReport:
    """Both sides of ``reg(F(H, k)) >= adm^F(H, k) + k``."""
    kind = PowerKind.parse(kind)
    adm, cert = adm_number(h, k, kind)
    reg = regularity(power(h, k, kind), field, cache, budget_ms)
    return LowerBoundReport(k, kind, reg, adm, cert)
