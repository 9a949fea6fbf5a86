"""Command-line surface: verify, family, extend, mgr, ads, octic, reproduce.

Exit codes: 0 found/pass, 1 usage or parse error, 2 legitimate negative
(NONE verdicts), 3 budget exhausted (TIMEOUT results).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import adsearch, cyclotomy, extend, families, mgr, reproduce
from .diffcore import classify
from .groups import GroupSpec
from .report import STATUS_NONE, STATUS_TIMEOUT

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NEGATIVE = 2
EXIT_BUDGET = 3


def _default_jobs() -> int:
    env = os.environ.get("DIFFSET_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            pass
    return 1


def _emit(payload) -> None:
    json.dump(payload, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _parse_record(raw: dict) -> tuple[GroupSpec, list]:
    G = GroupSpec(raw["group"])
    elems = G.coerce_set(raw["set"])
    return G, elems


def _load_record(args) -> tuple[GroupSpec, list]:
    if args.group is not None and args.set is not None:
        return _parse_record({"group": json.loads(args.group), "set": json.loads(args.set)})
    text = sys.stdin.read() if args.record in (None, "-") else Path(args.record).read_text()
    return _parse_record(json.loads(text))


# --- subcommand handlers ------------------------------------------------------


def cmd_verify(args) -> int:
    try:
        G, elems = _load_record(args)
    except (ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    cls = classify(elems, G)
    _emit(cls.to_json())
    return EXIT_OK if cls.kind != "NONE" else EXIT_NEGATIVE


def cmd_family(args) -> int:
    try:
        spec = families.FamilySpec(
            name=args.name.upper(),
            p=args.p,
            q=args.q,
            sporadic_id=args.id,
            with_zero=args.with_zero,
        )
        G, D, cls = families.generate_classified(spec)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit({
        "group": G.to_json(),
        "set": [G.element_to_json(e) for e in D],
        "classification": cls.to_json(),
    })
    return EXIT_OK


def cmd_extend(args) -> int:
    if args.record == "scan":  # `diffset extend scan --db file.json`
        if not args.db:
            print("error: extend scan needs --db", file=sys.stderr)
            return EXIT_USAGE
        return cmd_extend_scan(args)
    try:
        G, elems = _load_record(args)
        rep = extend.extension_report(elems, G)
    except (ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(rep.to_json())
    if rep.error:
        return EXIT_NEGATIVE
    return EXIT_OK if rep.addable or rep.removable else EXIT_NEGATIVE


def cmd_extend_scan(args) -> int:
    try:
        raw = json.loads(Path(args.db).read_text())
        records = [_parse_record(r) for r in raw]
    except (ValueError, KeyError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    reports = extend.scan_database(records, jobs=args.jobs)
    _emit([r.to_json() for r in reports])
    return EXIT_OK if reports else EXIT_NEGATIVE


def cmd_mgr_search(args) -> int:
    mode = "all" if args.all else ("count" if args.count else "exists")
    rep = mgr.search_mgr(
        args.v, args.k, mode,
        prune=not args.no_prune,
        node_limit=args.node_limit,
        time_limit=args.timeout,
        jobs=args.jobs,
    )
    _emit(rep.to_json())
    if rep.status == STATUS_TIMEOUT:
        return EXIT_BUDGET
    return EXIT_OK if rep.status != STATUS_NONE else EXIT_NEGATIVE


def cmd_mgr_spectrum(args) -> int:
    try:
        sp = mgr.spectrum(
            args.k,
            prune=not args.no_prune,
            node_limit=args.node_limit,
            time_limit=args.timeout,
            jobs=args.jobs,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(sp.to_json())
    return EXIT_BUDGET if sp.timeouts else EXIT_OK


def cmd_ads_search(args) -> int:
    mode = "all" if args.all else ("count" if args.count else "exists")
    try:
        rep = adsearch.search_ads(
            args.v, args.k, mode,
            node_limit=args.node_limit, time_limit=args.timeout,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit(rep.to_json())
    if rep.status == STATUS_TIMEOUT:
        return EXIT_BUDGET
    return EXIT_OK if rep.status != STATUS_NONE else EXIT_NEGATIVE


def cmd_ads_grid(args) -> int:
    cells = adsearch.existence_grid(
        args.vmax, args.kmin, args.kmax,
        node_limit=args.node_limit, time_limit=args.timeout,
    )
    csv_text = adsearch.grid_to_csv(cells)
    if args.out:
        Path(args.out).write_text(csv_text)
        print(f"wrote {args.out} ({len(cells)} cells)")
    else:
        sys.stdout.write(csv_text)
    if args.text:
        print(adsearch.grid_to_text(cells))
    timeouts = any(c.status == STATUS_TIMEOUT for c in cells)
    return EXIT_BUDGET if timeouts else EXIT_OK


def cmd_octic_table(args) -> int:
    try:
        if args.e == 8 and not args.raw:
            reps, table = cyclotomy.sign_normalization(args.p, args.g)
            closed = cyclotomy.octic_closed_form(args.p, reps)
            _emit({
                "enumerated": table.to_json(),
                "closed_form_matches": closed.numbers == table.numbers,
                "representations": {
                    "x": reps.x, "y": reps.y, "a": reps.a, "b": reps.b,
                    "sign_convention": reps.sign_convention,
                },
                "case": {
                    "p_mod_16": args.p % 16,
                    "two_quartic_residue": cyclotomy.two_is_quartic_residue(args.p),
                },
            })
        else:
            table = cyclotomy.cyclotomic_numbers(args.p, args.e, args.g)
            _emit(table.to_json())
    except (ValueError, AssertionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_octic_classify(args) -> int:
    try:
        o = cyclotomy.classify_type_O(args.p, verify_limit=args.verify_limit)
        o0 = cyclotomy.classify_type_O0(args.p, verify_limit=args.verify_limit)
        ds = cyclotomy.octic_ds_test(args.p)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit({
        "p": args.p,
        "type_O_ads": list(o.as_tuple()) if o else None,
        "type_O0_ads": list(o0.as_tuple()) if o0 else None,
        "octic_ds_lambda": ds,
        "verified_directly": args.p <= args.verify_limit,
    })
    return EXIT_OK if (o or o0 or ds is not None) else EXIT_NEGATIVE


def cmd_octic_scan(args) -> int:
    rows = []
    found = False
    for p in range(17, args.max + 1, 8):
        if not cyclotomy.is_prime(p):
            continue
        o = cyclotomy.classify_type_O(p, verify_limit=args.verify_limit)
        o0 = cyclotomy.classify_type_O0(p, verify_limit=args.verify_limit)
        if o or o0:
            found = True
            rows.append({
                "p": p,
                "type_O_ads": list(o.as_tuple()) if o else None,
                "type_O0_ads": list(o0.as_tuple()) if o0 else None,
            })
    _emit(rows)
    return EXIT_OK if found else EXIT_NEGATIVE


def cmd_octic_norms(args) -> int:
    try:
        sols = cyclotomy.enumerate_norm_solutions(
            args.N, max_results=args.count, a=args.a, x=args.x
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    _emit([s.to_json() for s in sols])
    return EXIT_OK if sols else EXIT_NEGATIVE


def cmd_octic_systems(args) -> int:
    mod16 = 9 if args.case.startswith("9") else 1
    two_qr = args.case.endswith("qr") and not args.case.endswith("nqr")
    rows = cyclotomy.solve_octic_systems(mod16, two_qr, args.target)
    _emit([r.to_json() for r in rows])
    return EXIT_OK if rows else EXIT_NEGATIVE


def cmd_reproduce(args) -> int:
    target = args.target
    budget_hit = False
    if target == "table2":
        ok, lines, artifacts = reproduce.reproduce_table2()
    elif target == "table1-scan":
        ok, lines, artifacts = reproduce.reproduce_table1_scan()
    elif target == "mgr-spectra":
        ok, lines, artifacts = reproduce.reproduce_mgr_spectra(
            kmax=args.kmax, time_limit=args.timeout, jobs=args.jobs
        )
        budget_hit = any("TIMEOUT" in l for l in lines)
    elif target == "octic-tables":
        ok, lines, artifacts = reproduce.reproduce_octic_tables()
    elif target == "grid":
        ok, lines, artifacts, budget_hit = reproduce.reproduce_grid(
            vmax=args.vmax, node_limit=args.node_limit, time_limit=args.timeout
        )
    else:
        print(f"error: unknown target {target!r}; known: {reproduce.TARGETS}", file=sys.stderr)
        return EXIT_USAGE
    outdir = Path(args.out)
    outdir.mkdir(parents=True, exist_ok=True)
    for name, payload in artifacts.items():
        path = outdir / name
        if isinstance(payload, str):
            path.write_text(payload)
        else:
            path.write_text(json.dumps(payload, indent=2) + "\n")
        lines.append(f"wrote {path}")
    for line in lines:
        print(line)
    if budget_hit:
        return EXIT_BUDGET
    return EXIT_OK if ok else EXIT_NEGATIVE


# --- parser -------------------------------------------------------------------


def _add_record_args(p: argparse.ArgumentParser):
    p.add_argument("record", nargs="?", help="SetRecord JSON file, or - for stdin")
    p.add_argument("--group", help="inline group spec, e.g. '[4,4]'")
    p.add_argument("--set", help="inline element list JSON")


def _add_budget_args(p: argparse.ArgumentParser):
    p.add_argument("--timeout", type=float, default=None, help="seconds per search")
    p.add_argument("--node-limit", type=int, default=None)


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="diffset",
        description="difference sets, almost difference sets and modular Golomb rulers",
    )
    sub = top.add_subparsers(dest="command", required=True)
    jobs_default = _default_jobs()

    p = sub.add_parser("verify", help="classify a set record as DS/ADS/NONE")
    _add_record_args(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("family", help="generate a named family instance")
    p.add_argument("name", help="PALEY|QUARTIC_B|QUARTIC_B0|OCTIC_O|OCTIC_O0|SINGER|SPORADIC")
    p.add_argument("--p", type=int, help="prime modulus for residue families")
    p.add_argument("--q", type=int, help="prime order for SINGER")
    p.add_argument("--id", help="sporadic record id")
    p.add_argument("--with-zero", action="store_true")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("extend", help="addable/removable element report; 'extend scan --db F' for batches")
    _add_record_args(p)
    p.add_argument("--db", help="record database for 'extend scan'")
    p.add_argument("--jobs", type=int, default=jobs_default)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("mgr", help="modular Golomb ruler search")
    mgr_sub = p.add_subparsers(dest="mgr_command", required=True)
    q = mgr_sub.add_parser("search")
    q.add_argument("--v", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--all", action="store_true")
    q.add_argument("--count", action="store_true")
    q.add_argument("--no-prune", action="store_true", help="disable canonicity pruning")
    q.add_argument("--jobs", type=int, default=jobs_default)
    _add_budget_args(q)
    q.set_defaults(func=cmd_mgr_search)
    q = mgr_sub.add_parser("spectrum")
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--no-prune", action="store_true")
    q.add_argument("--jobs", type=int, default=jobs_default)
    _add_budget_args(q)
    q.set_defaults(func=cmd_mgr_spectrum)

    p = sub.add_parser("ads", help="almost difference set search")
    ads_sub = p.add_subparsers(dest="ads_command", required=True)
    q = ads_sub.add_parser("search")
    q.add_argument("--v", type=int, required=True)
    q.add_argument("--k", type=int, required=True)
    q.add_argument("--all", action="store_true")
    q.add_argument("--count", action="store_true")
    _add_budget_args(q)
    q.set_defaults(func=cmd_ads_search)
    q = ads_sub.add_parser("grid")
    q.add_argument("--vmax", type=int, required=True)
    q.add_argument("--kmin", type=int, default=2)
    q.add_argument("--kmax", type=int, default=None)
    q.add_argument("--out", help="CSV output path (stdout if omitted)")
    q.add_argument("--text", action="store_true", help="also render a text grid")
    _add_budget_args(q)
    q.set_defaults(func=cmd_ads_grid)

    p = sub.add_parser("octic", help="order-8 cyclotomy tools")
    oct_sub = p.add_subparsers(dest="octic_command", required=True)
    q = oct_sub.add_parser("table")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--e", type=int, default=8)
    q.add_argument("--g", type=int, default=None, help="primitive root override")
    q.add_argument("--raw", action="store_true", help="enumeration only, no closed form")
    q.set_defaults(func=cmd_octic_table)
    q = oct_sub.add_parser("classify")
    q.add_argument("--p", type=int, required=True)
    q.add_argument("--verify-limit", type=int, default=10**6)
    q.set_defaults(func=cmd_octic_classify)
    q = oct_sub.add_parser("scan")
    q.add_argument("--max", type=int, required=True)
    q.add_argument("--verify-limit", type=int, default=10**6)
    q.set_defaults(func=cmd_octic_scan)
    q = oct_sub.add_parser("norms")
    q.add_argument("--N", type=int, required=True)
    q.add_argument("--count", type=int, default=20)
    q.add_argument("--a", type=int, default=None, help="family p = a^2 + 2b^2")
    q.add_argument("--x", type=int, default=None, help="family p = x^2 + 4y^2")
    q.set_defaults(func=cmd_octic_norms)
    q = oct_sub.add_parser("systems")
    q.add_argument("--case", choices=["1qr", "1nqr", "9qr", "9nqr"], required=True)
    q.add_argument("--target", choices=["O", "O0"], default="O")
    q.set_defaults(func=cmd_octic_systems)

    p = sub.add_parser("reproduce", help="re-derive embedded expected results")
    p.add_argument("target", choices=reproduce.TARGETS)
    p.add_argument("--kmax", type=int, default=8, help="mgr-spectra depth")
    p.add_argument("--vmax", type=int, default=16, help="grid size")
    p.add_argument("--out", default="reproduce-out")
    p.add_argument("--jobs", type=int, default=jobs_default)
    _add_budget_args(p)
    p.set_defaults(func=cmd_reproduce)

    return top


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
