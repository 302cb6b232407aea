"""Command-line front end: ``sqfpow invariants|verify|mixed-sum|axioms|cache``.

Exit codes: 0 all checks hold, 2 a bound or axiom violation (or a bad
certificate in ``cache audit``), 3 budget exhausted without a violation,
1 usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from pathlib import Path

from .admissible import adm_number
from .campaign import (
    CSV_FIELDS,
    DEFAULT_CAMPAIGN_BUDGET_MS,
    DEFAULT_REG_BUDGET_MS,
    EXIT_BUDGET,
    EXIT_OK,
    EXIT_VIOLATION,
    FAMILIES,
    CampaignSpec,
    audit_certificates,
    cache_stats,
    default_cache_dir,
    family_graphs,
    iter_kinds,
    run_campaign,
)
from .errors import BudgetExceeded, ParseError, SqfpowError
from .homology import FieldChoice
from .hypergraph import (
    cover_number,
    independence_number,
    induced_matching_number,
    matching_number,
)
from .io import hypergraph_label, monomial_name, parse_graph, read_graphs
from .powers import Filtration, check_splf_axioms, nu_F, power
from .regularity import RegularityCache, regularity, verify_mixed_sum_regularity


def _dump(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True)


def _read_inputs(args) -> list:
    if getattr(args, "graphs", None):
        return [parse_graph(g, line=i) for i, g in enumerate(args.graphs, start=1)]
    source = Path(args.input).read_text().splitlines(True) if getattr(args, "input", None) else sys.stdin
    return list(read_graphs(source))


def _cache(args):
    d = args.cache_dir or default_cache_dir()
    return RegularityCache(d) if d else None


def cmd_invariants(args) -> int:
    graphs = _read_inputs(args)
    if not graphs:
        raise ParseError("no input graph given")
    cache = _cache(args)
    out = []
    status = EXIT_OK
    for g in graphs:
        entry = {
            "graph": hypergraph_label(g),
            "n": g.n,
            "edges": len(g.edges),
            "alpha": independence_number(g),
            "beta": cover_number(g),
            "matching_number": matching_number(g),
            "induced_matching_number": induced_matching_number(g) if g.is_graph else None,
            "kinds": {},
        }
        for kind in iter_kinds(args.kind):
            top = nu_F(g, kind)
            ks = range(1, top + 1) if args.k is None else [args.k]
            powers = []
            for k in ks:
                a = power(g, k, kind)
                row = {"k": k, "generators": [monomial_name(m) for m in a.gens]}
                if 1 <= k <= top:
                    try:
                        row["reg"] = regularity(a, args.field, cache, args.budget_ms)
                    except BudgetExceeded as exc:
                        row["reg"] = None
                        row["skipped"] = str(exc)
                        status = EXIT_BUDGET
                    adm, cert = adm_number(g, k, kind)
                    row["adm" if kind.value == "ordinary" else "ind"] = adm
                    row["certificate"] = cert.to_json()
                powers.append(row)
            entry["kinds"][kind.value] = {"nu_F": top, "powers": powers}
        out.append(entry)
    print(_dump(out[0] if len(out) == 1 else out))
    return status


def _spec(args, kind, graphs=()) -> CampaignSpec:
    return CampaignSpec(
        family=args.family,
        min_n=args.min_n,
        max_n=args.max_n,
        connected=args.connected,
        kind=kind,
        field=args.field,
        k=args.k,
        budget_ms=args.budget_ms,
        campaign_budget_ms=args.campaign_budget_ms,
        workers=args.workers,
        cache_dir=args.cache_dir or default_cache_dir(),
        graphs=graphs,
        timings=args.timings,
    )


def cmd_verify(args) -> int:
    graphs = _read_inputs(args) if args.family == "custom" else ()
    reports = [run_campaign(_spec(args, kind, graphs)) for kind in iter_kinds(args.kind)]
    codes = {r.exit_code for r in reports}
    code = EXIT_VIOLATION if EXIT_VIOLATION in codes else EXIT_BUDGET if EXIT_BUDGET in codes else EXIT_OK
    if args.format == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, extrasaction="ignore", lineterminator="\n")
        writer.writeheader()
        for r in reports:
            writer.writerows(r.rows)
        sys.stdout.write(buf.getvalue())
    else:
        print(_dump({"campaigns": [r.to_json() for r in reports], "exit_code": code}))
    return code


def cmd_mixed_sum(args) -> int:
    graphs = _read_inputs(args)
    if len(graphs) != 2:
        raise ParseError(f"mixed-sum needs exactly two graphs, got {len(graphs)}")
    cache = _cache(args)
    out = []
    code = EXIT_OK
    for kind in iter_kinds(args.kind):
        fa, fb = Filtration.of(graphs[0], kind), Filtration.of(graphs[1], kind)
        ns = range(0, fa.nu + fb.nu + 1) if args.n is None else [args.n]
        for n in ns:
            try:
                rep = verify_mixed_sum_regularity(fa, fb, n, args.field, cache, args.budget_ms)
            except BudgetExceeded as exc:
                out.append({"kind": kind.value, "n": n, "status": "skipped", "reason": str(exc)})
                if code == EXIT_OK:
                    code = EXIT_BUDGET
                continue
            row = {"kind": kind.value, **rep.to_json()}
            if not rep.ok:
                code = EXIT_VIOLATION
            out.append(row)
    print(_dump({"graphs": [hypergraph_label(g) for g in graphs], "rows": out, "exit_code": code}))
    return code


def cmd_axioms(args) -> int:
    if args.family == "custom":
        samples = _read_inputs(args)
    else:
        samples = family_graphs(CampaignSpec(family=args.family, min_n=args.min_n, max_n=args.max_n,
                                             connected=args.connected))
    reports = [check_splf_axioms(samples, kind, max_union_vertices=args.max_union) for kind in iter_kinds(args.kind)]
    code = EXIT_OK if all(r.ok for r in reports) else EXIT_VIOLATION
    print(_dump({"samples": len(samples), "reports": [r.to_json() for r in reports], "exit_code": code}))
    return code


def cmd_cache(args) -> int:
    d = args.cache_dir or default_cache_dir()
    if not d:
        raise SqfpowError("no cache directory: pass --cache-dir or set SQFPOW_CACHE_DIR")
    if args.action == "stats":
        print(_dump(cache_stats(d)))
        return EXIT_OK
    if args.action == "gc":
        print(_dump(RegularityCache(d).gc()))
        return EXIT_OK
    results = audit_certificates(d)
    bad = [r for r in results if not r["ok"]]
    print(_dump({"certificates": len(results), "invalid": bad}))
    for r in bad:
        print(f"invalid certificate {r['file']}: violates condition {r['violated']}", file=sys.stderr)
    return EXIT_VIOLATION if bad else EXIT_OK


def _add_common(p, kinds_default="symbolic"):
    p.add_argument("--kind", choices=("ordinary", "symbolic", "both"), default=kinds_default)
    p.add_argument("--field", type=FieldChoice.parse, default=FieldChoice(0),
                   help="coefficient field: q (default), gf2, gf3, ...")
    p.add_argument("--budget-ms", type=int, default=DEFAULT_REG_BUDGET_MS,
                   help="time budget per regularity computation")
    p.add_argument("--cache-dir", default=None, help="persistent cache (default: $SQFPOW_CACHE_DIR)")


def _add_family(p):
    p.add_argument("--family", choices=FAMILIES, default="all")
    p.add_argument("--min-n", type=int, default=1)
    p.add_argument("--max-n", type=int, default=5)
    p.add_argument("--connected", action="store_true", help="only connected graphs")
    p.add_argument("--input", help="file of graph6 lines or a JSON graph (family=custom; default stdin)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="sqfpow", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="invariants, powers, reg and adm/ind for given graphs")
    p.add_argument("graphs", nargs="*", help="graph6 strings or JSON (default: read stdin)")
    p.add_argument("--k", type=int, default=None)
    _add_common(p, "both")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("verify", help="run a verification campaign over a graph family")
    _add_family(p)
    p.add_argument("--k", type=int, default=None, help="fixed k (default: every valid k)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--campaign-budget-ms", type=int, default=DEFAULT_CAMPAIGN_BUDGET_MS)
    p.add_argument("--timings", action="store_true", help="include per-row elapsed times")
    _add_common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("mixed-sum", help="reg(Q_n) against the max formula for two graphs")
    p.add_argument("graphs", nargs="*", help="two graphs (default: first two lines of stdin)")
    p.add_argument("--n", type=int, default=None)
    _add_common(p, "both")
    p.set_defaults(func=cmd_mixed_sum)

    p = sub.add_parser("axioms", help="check the squarefree-power-like axioms")
    _add_family(p)
    p.add_argument("--max-union", type=int, default=6,
                   help="largest disjoint union checked for the convolution axiom")
    _add_common(p, "both")
    p.set_defaults(func=cmd_axioms)

    p = sub.add_parser("cache", help="cache maintenance")
    p.add_argument("action", choices=("stats", "gc", "audit"))
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=cmd_cache)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors, which is reserved for violations here
        return 0 if exc.code in (0, None) else 1
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"sqfpow: parse error: {exc}", file=sys.stderr)
        return 1
    except (SqfpowError, ValueError) as exc:
        print(f"sqfpow: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
