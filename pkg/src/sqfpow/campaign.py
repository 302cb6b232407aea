"""Verification campaigns over graph families, and the audit of stored certificates."""

from __future__ import annotations

import hashlib
import json
import os
import tempfile
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from .admissible import AdmissibleCertificate, adm_number, validate_certificate
from .errors import BudgetExceeded
from .graph_classes import enumerate_graphs
from .homology import QQ, FieldChoice
from .hypergraph import (
    Hypergraph,
    complete_graph,
    disjoint_edges,
    induced_matching_number,
)
from .io import hypergraph_label
from .powers import PowerKind, nu_F, power
from .regularity import RegularityCache, regularity

FAMILIES = ("all", "chordal", "block", "cm_chordal", "complete", "disjoint_edges", "custom")

DEFAULT_REG_BUDGET_MS = 5_000
DEFAULT_CAMPAIGN_BUDGET_MS = 600_000

EXIT_OK = 0
EXIT_VIOLATION = 2
EXIT_BUDGET = 3


def default_cache_dir() -> str | None:
    return os.environ.get("SQFPOW_CACHE_DIR")


@dataclass
class CampaignSpec:
    family: str = "all"
    min_n: int = 1
    max_n: int = 5
    connected: bool = False
    kind: PowerKind = PowerKind.SYMBOLIC
    field: FieldChoice = QQ
    k: int | None = None
    budget_ms: int | None = DEFAULT_REG_BUDGET_MS
    campaign_budget_ms: int | None = DEFAULT_CAMPAIGN_BUDGET_MS
    workers: int = 1
    cache_dir: str | None = None
    graphs: Sequence[Hypergraph] = ()
    timings: bool = False

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown family {self.family!r}; choose from {', '.join(FAMILIES)}")
        self.kind = PowerKind.parse(self.kind)
        self.field = FieldChoice.parse(self.field)
        if self.min_n < 0 or self.max_n < self.min_n:
            raise ValueError("need 0 <= min_n <= max_n")
        for b in (self.budget_ms, self.campaign_budget_ms):
            if b is not None and b <= 0:
                raise ValueError("budgets must be positive")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "min_n": self.min_n,
            "max_n": self.max_n,
            "connected": self.connected,
            "kind": self.kind.value,
            "field": self.field.name,
            "k": self.k,
            "budget_ms": self.budget_ms,
        }


def family_graphs(spec: CampaignSpec) -> list[Hypergraph]:
    """The instances of a campaign, in deterministic order."""
    if spec.family == "custom":
        return list(spec.graphs)
    if spec.family == "complete":
        return [complete_graph(n) for n in range(max(spec.min_n, 1), spec.max_n + 1)]
    if spec.family == "disjoint_edges":
        return [disjoint_edges(n // 2) for n in range(max(spec.min_n, 2), spec.max_n + 1) if n % 2 == 0]
    classes = {"all": (), "chordal": ("chordal",), "block": ("block",), "cm_chordal": ("cm_chordal",)}[spec.family]
    out = []
    for n in range(spec.min_n, spec.max_n + 1):
        out.extend(enumerate_graphs(n, classes, connected=spec.connected))
    return out


def expects_equality(family: str, kind: PowerKind, k: int) -> bool:
    """Whether a row should meet the lower bound exactly."""
    if family in ("chordal", "block", "complete"):
        return kind is PowerKind.SYMBOLIC
    if family == "cm_chordal":
        return kind is PowerKind.SYMBOLIC and k == 2
    return family == "disjoint_edges"


def certificate_ref(cert_json: dict) -> str:
    payload = json.dumps(cert_json, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(payload.encode()).hexdigest()


def store_certificate(cache_dir, cert_json: dict) -> str:
    ref = certificate_ref(cert_json)
    path = Path(cache_dir) / "certs" / f"{ref}.json"
    if not path.exists():
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        with os.fdopen(fd, "w") as fh:
            json.dump(cert_json, fh, sort_keys=True, indent=1)
        os.replace(tmp, path)
    return ref


def _graph_rows(g: Hypergraph, spec: CampaignSpec, deadline: float | None) -> tuple[list[dict], dict]:
    cache = RegularityCache(spec.cache_dir) if spec.cache_dir else None
    label = hypergraph_label(g)
    top = nu_F(g, spec.kind)
    ks = range(1, top + 1) if spec.k is None else ([spec.k] if 1 <= spec.k <= top else [])
    nu_induced = induced_matching_number(g) if g.is_graph else None
    rows = []
    for k in ks:
        row = {"graph6": label, "n": g.n, "kind": spec.kind.value, "k": k,
               "k_le_nu": None if nu_induced is None else k <= nu_induced}
        equality = expects_equality(spec.family, spec.kind, k)
        row["expect"] = "equality" if equality else "lower_bound"
        start = time.monotonic()
        try:
            if deadline is not None and time.time() > deadline:
                raise BudgetExceeded("campaign budget exhausted")
            adm, cert = adm_number(g, k, spec.kind)
            reg = regularity(power(g, k, spec.kind), spec.field, cache, spec.budget_ms)
        except BudgetExceeded as exc:
            row.update({"reg": None, "adm_or_ind": None, "slack": None, "status": "skipped",
                        "reason": str(exc), "certificate": None})
        else:
            slack = reg - (adm + k)
            cert_json = cert.to_json(g)
            if slack < 0 or (equality and slack != 0):
                status = "violation"
            else:
                status = "equal" if slack == 0 else "strict"
            row.update({"reg": reg, "adm_or_ind": adm, "slack": slack, "status": status,
                        "certificate": certificate_ref(cert_json)})
            if spec.cache_dir:
                store_certificate(spec.cache_dir, cert_json)
        if spec.timings:
            row["elapsed_ms"] = round(1000 * (time.monotonic() - start), 3)
        rows.append(row)
    counters = {"hits": cache.hits, "misses": cache.misses} if cache else {"hits": 0, "misses": 0}
    return rows, counters


def _worker(args):
    return _graph_rows(*args)


@dataclass
class CampaignReport:
    spec: dict
    rows: list = field(default_factory=list)
    cache: dict = field(default_factory=dict)

    @property
    def summary(self) -> dict:
        count = lambda s: sum(1 for r in self.rows if r["status"] == s)  # noqa: E731
        return {
            "instances": len({r["graph6"] for r in self.rows}),
            "rows": len(self.rows),
            "equalities": count("equal"),
            "strict_inequalities": count("strict"),
            "violations": count("violation"),
            "skipped": count("skipped"),
            "range_beyond_induced_matching": sum(1 for r in self.rows if r["k_le_nu"] is False),
        }

    @property
    def exit_code(self) -> int:
        s = self.summary
        if s["violations"]:
            return EXIT_VIOLATION
        if s["skipped"]:
            return EXIT_BUDGET
        return EXIT_OK

    def to_json(self) -> dict:
        return {"spec": self.spec, "rows": self.rows, "summary": self.summary, "cache": self.cache}


CSV_FIELDS = ("graph6", "n", "kind", "k", "reg", "adm_or_ind", "slack", "status", "expect", "k_le_nu", "certificate")


def run_campaign(spec: CampaignSpec) -> CampaignReport:
    graphs = family_graphs(spec)
    deadline = None if spec.campaign_budget_ms is None else time.time() + spec.campaign_budget_ms / 1000
    jobs = [(g, spec, deadline) for g in graphs]
    if spec.workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=spec.workers) as pool:
            results = list(pool.map(_worker, jobs, chunksize=4))
    else:
        results = [_worker(j) for j in jobs]
    report = CampaignReport(spec.to_json())
    hits = misses = 0
    for rows, counters in results:
        report.rows.extend(rows)
        hits += counters["hits"]
        misses += counters["misses"]
    if spec.cache_dir:
        report.cache = {"hits": hits, "misses": misses}
    return report


# --- audit -------------------------------------------------------------------------

def audit_certificates(cache_dir) -> list[dict]:
    """Re-validate every stored certificate; one result per file, sorted by name."""
    root = Path(cache_dir) / "certs"
    out = []
    for path in sorted(root.glob("*.json")) if root.exists() else []:
        entry = {"file": path.name}
        try:
            data = json.loads(path.read_text())
            h = Hypergraph.from_json(data["hypergraph"])
            cert = AdmissibleCertificate.from_json(data)
            ok, violated = validate_certificate(cert, h)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            ok, violated = False, f"unreadable: {exc}"
        entry["ok"] = ok
        entry["violated"] = violated
        out.append(entry)
    return out


def cache_stats(cache_dir) -> dict:
    stats = RegularityCache(cache_dir).stats()
    certs = Path(cache_dir) / "certs"
    stats["certificates"] = len(list(certs.glob("*.json"))) if certs.exists() else 0
    return stats


def iter_kinds(kind: str) -> Iterable[PowerKind]:
    if kind == "both":
        return (PowerKind.ORDINARY, PowerKind.SYMBOLIC)
    return (PowerKind.parse(kind),)
