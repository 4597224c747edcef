"""Command-line front end: ``excmaps <subcommand> ...``.

Exit codes: 0 decided / all agree, 1 a violation sentinel fired
(a disagreement or a violation that must never happen), 2 usage or input
error, 3 inconclusive verdict.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from math import gcd
from pathlib import Path

from jsonschema import ValidationError

from excmaps import __version__
from excmaps.errors import ExcMapsError
from excmaps.algebra.fields import ENUMERATION_CAP, field_of_order, make_field
from excmaps.algebra.parse import format_map, parse_ratfunc
from excmaps.exceptionality import (
    CENSUS_CANDIDATE_CAP,
    carlitz_wan_scan,
    census_size,
    check_gcw,
    is_exceptional,
)
from excmaps.groups import (
    GROUP_CAP,
    intermediate_subgroups,
    nt_ram_battery,
    subext_check,
    triple_from_json,
    validate_triple,
)
from excmaps.laurent import (
    DEFAULT_PREC,
    coprime_battery,
    format_series,
    nth_root_one_unit,
    parse_series,
    tame_monodromy_triple,
)
from excmaps import reports

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_INCONCLUSIVE = 0, 1, 2, 3
DEFAULT_QS = (2, 3, 4, 5, 7, 8, 9, 11, 13)
SCAN_CHUNK = 4096


class UsageError(Exception):
    pass


class Emitter:
    """Writes envelopes to stdout (json or text) and appends them to ``--out``."""

    def __init__(self, args, config):
        self.config = config
        self.format = args.format
        self.path = None
        if args.out:
            out = Path(args.out)
            out.mkdir(parents=True, exist_ok=True)
            self.path = out / f"{args.command}.jsonl"

    def emit(self, payload, summary, elapsed=0.0, echo=True):
        env = reports.envelope(self.config, payload, summary, elapsed)
        line = reports.dumps(env)
        if self.path is not None:
            with open(self.path, "a") as fh:
                fh.write(line + "\n")
        if echo:
            print(line if self.format == "json" else summary)
        return env


# -- helpers --------------------------------------------------------------------------------


def _field_args(args):
    if args.q is not None:
        F = field_of_order(args.q)
    elif args.p is not None:
        F = make_field(args.p, args.n or 1)
    else:
        return None
    return F


def _field_echo(F):
    return None if F is None else {"q": F.q, "p": F.p, "n": F.n}


def _read_map(args):
    text = args.map
    F = _field_args(args)
    if " over " not in f" {text} ":
        if F is None:
            raise UsageError("give the field with 'over GF(q)' or --q / --p")
        text = f"{text} over GF({F.q})"
    f = parse_ratfunc(text)
    if F is not None and f.field != F:
        raise UsageError(f"literal is over {f.field} but the flags say {F}")
    return f


def _config(args, **extra):
    skip = {"func", "format", "out"}
    cfg = {k: v for k, v in sorted(vars(args).items()) if k not in skip}
    cfg.update(extra)
    return cfg


def _verdict_kwargs(args):
    return {"window_override": args.window, "strict": args.strict_bound, "cap": args.cap or ENUMERATION_CAP}


def _jobs(args):
    return args.jobs if args.jobs else (os.cpu_count() or 1)


def _verdict_summary(payload):
    head = f"{payload['map']}: {payload['verdict']}"
    if payload["witness_k"] is not None:
        head += f" (bijective at k={payload['witness_k']})"
    col = payload["collision"]
    if payload["verdict"] == "not_exceptional" and col:
        head += f" (collision {col['a']} ~ {col['b']} at k={col['k']}; scanned {payload['scanned_k']})"
    if payload["verdict"] == "inconclusive":
        head += f" (scanned {payload['scanned_k']}, window {payload['window']} not reached)"
    return head


# -- subcommands -------------------------------------------------------------------------------


def cmd_exceptional(args):
    f = _read_map(args)
    em = Emitter(args, _config(args, field=_field_echo(f.field)))
    t0 = time.perf_counter()
    verdict = is_exceptional(f, **_verdict_kwargs(args))
    payload = {"record": "verdict", **reports.verdict_fields(f, verdict)}
    em.emit(payload, _verdict_summary(payload), time.perf_counter() - t0)
    return EXIT_INCONCLUSIVE if verdict.kind == "inconclusive" else EXIT_OK


def cmd_ramify(args):
    f = _read_map(args)
    em = Emitter(args, _config(args, field=_field_echo(f.field)))
    t0 = time.perf_counter()
    report = check_gcw(f, **_verdict_kwargs(args))
    payload = {
        "record": "ramify",
        "map": format_map(f),
        "q": f.field.q,
        "verdict": report.verdict.kind,
        "profile": reports.profile_rows(report),
        "violations": list(report.violations),
    }
    ram = ", ".join(f"e({r['point']})={r['e']}" for r in payload["profile"] if r["e"] > 1) or "unramified"
    summary = f"{payload['map']}: {payload['verdict']}; {ram}; violations={len(report.violations)}"
    em.emit(payload, summary, time.perf_counter() - t0)
    if report.violations:
        return EXIT_VIOLATION
    return EXIT_INCONCLUSIVE if report.verdict.kind == "inconclusive" else EXIT_OK


def _read_cursor(path):
    if path is None or not Path(path).exists():
        return 0
    try:
        return int(Path(path).read_text().strip() or 0)
    except ValueError as exc:
        raise UsageError(f"cursor file {path} is not an integer") from exc


def cmd_scan(args):
    F = _field_args(args)
    if F is None or args.degree is None:
        raise UsageError("scan needs --q (or --p/--n) and --degree")
    cap = args.cap or CENSUS_CANDIDATE_CAP
    total = census_size(F.q, args.degree, args.full)
    em = Emitter(args, _config(args, field=_field_echo(F)))
    start = _read_cursor(args.cursor)
    kwargs = {"window_override": args.window, "strict": args.strict_bound}
    jobs = _jobs(args) if total - start > SCAN_CHUNK else 1
    t0 = time.perf_counter()
    exceptional, violations = [], []
    for lo in range(start, total, SCAN_CHUNK):
        hi = min(lo + SCAN_CHUNK, total)
        rep = carlitz_wan_scan(
            F.q, args.degree, full=args.full, jobs=jobs, candidate_cap=cap, start=lo, stop=hi, **kwargs
        )
        for i, r in enumerate(rep.results, start=lo):
            payload = {"record": "candidate", "index": i, **reports.verdict_fields(r.f, r.verdict)}
            payload["gcw"] = None
            if r.gcw is not None:
                payload["gcw"] = {"profile": reports.profile_rows(r.gcw), "violations": list(r.gcw.violations)}
                exceptional.append(payload["map"])
            em.emit(payload, f"[{i}] {_verdict_summary(payload)}", echo=args.rows)
        violations.extend(rep.violations)
        if args.cursor:
            Path(args.cursor).write_text(f"{hi}\n")
    payload = {
        "record": "scan_summary",
        "q": F.q,
        "degree": args.degree,
        "normalization": rep.normalization if total > start else "",
        "total": total,
        "start": start,
        "stop": total,
        "exceptional": exceptional,
        "violations": violations,
    }
    summary = (
        f"GF({F.q}) degree {args.degree}: {len(exceptional)} exceptional of "
        f"{total - start} candidates; violations={len(violations)}"
    )
    em.emit(payload, summary, time.perf_counter() - t0)
    return EXIT_VIOLATION if violations else EXIT_OK


def _load_triple(path):
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
        data = json.loads(text)
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read triple: {exc}") from exc
    try:
        reports.validator("triple_input").validate(data)
    except ValidationError as exc:
        raise UsageError(f"triple file does not match the schema: {exc.message}") from exc
    return data


def cmd_triple(args):
    data = _load_triple(args.file)
    t = triple_from_json(data, cap=args.cap or GROUP_CAP)
    diag = validate_triple(t, require_totally_ramified=True)
    em = Emitter(args, _config(args))
    t0 = time.perf_counter()
    report = nt_ram_battery(t)
    payload = {
        "record": "triple",
        "triple": t.to_json(),
        "flags": diag.flags,
        "items": report.items,
        "agreement": report.agreement,
        "value": report.value,
    }
    bits = " ".join(f"{k}={'T' if v else 'F'}" for k, v in report.items.items())
    summary = f"degree {t.n}, |A|={t.A.order}, |G|={t.G.order}: {bits}; agreement={report.agreement}"
    em.emit(payload, summary, time.perf_counter() - t0)
    return EXIT_OK if report.agreement else EXIT_VIOLATION


def tame_row(n, q, with_subext=False):
    rep = coprime_battery(n, q)
    row = {
        "record": "tame",
        "n": n,
        "q": q,
        "items": [rep.items[k] for k in ("(1)", "(2)", "(3)", "(4)")],
        "agree": rep.agreement,
        "value": rep.value,
        "subext": None,
    }
    if with_subext:
        t = tame_monodromy_triple(n, q)
        checks = [subext_check(t, B) for B in intermediate_subgroups(t)]
        row["subext"] = {"checked": len(checks), "failures": sum(not c.holds for c in checks)}
        row["agree"] = row["agree"] and nt_ram_battery(t).agreement
    return row


def _tame_summary(row):
    bits = "".join("T" if b else "F" for b in row["items"])
    s = f"n={row['n']} q={row['q']}: items {bits} agree={row['agree']}"
    if row["subext"] is not None:
        s += f" subext {row['subext']['checked']} checked, {row['subext']['failures']} failed"
    return s


def cmd_tame(args):
    if args.n is None or args.q is None:
        raise UsageError("tame needs --n and --q")
    field_of_order(args.q)
    em = Emitter(args, _config(args))
    t0 = time.perf_counter()
    row = tame_row(args.n, args.q)
    em.emit(row, _tame_summary(row), time.perf_counter() - t0)
    return EXIT_OK if row["agree"] else EXIT_VIOLATION


def _sweep_task(nq):
    return tame_row(*nq, with_subext=True)


def cmd_sweep(args):
    qs = DEFAULT_QS if args.q_list is None else tuple(int(x) for x in args.q_list.split(","))
    for q in qs:
        field_of_order(q)
    n_max = args.n or 12
    pairs = [(n, q) for q in qs for n in range(1, n_max + 1) if gcd(n, q) == 1]
    em = Emitter(args, _config(args, q_values=list(qs), n_max=n_max))
    t0 = time.perf_counter()
    jobs = _jobs(args)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            rows = list(pool.map(_sweep_task, pairs, chunksize=4))
    else:
        rows = [_sweep_task(nq) for nq in pairs]
    for row in rows:
        em.emit(row, _tame_summary(row), echo=args.rows)
    bad = sum(not r["agree"] for r in rows)
    sub_bad = sum(r["subext"]["failures"] for r in rows)
    payload = {"record": "sweep_summary", "rows": len(rows), "disagreements": bad, "subext_failures": sub_bad}
    summary = f"{len(rows)} (n, q) pairs: {bad} disagreements, {sub_bad} tower failures"
    em.emit(payload, summary, time.perf_counter() - t0)
    return EXIT_VIOLATION if bad or sub_bad else EXIT_OK


def cmd_root(args):
    text = args.series
    if args.prec is not None and " prec " not in f" {text} ":
        text = f"{text} prec {args.prec}"
    u = parse_series(text)
    em = Emitter(args, _config(args))
    t0 = time.perf_counter()
    v = nth_root_one_unit(u, args.m)
    ok = (v**args.m).agrees_with(u)
    payload = {
        "record": "root",
        "input": format_series(u),
        "m": args.m,
        "root": format_series(v),
        "precision": v.precision,
        "verified": ok,
    }
    em.emit(payload, f"({payload['input']})^(1/{args.m}) = {payload['root']}", time.perf_counter() - t0)
    return EXIT_OK if ok else EXIT_VIOLATION


# -- parser ------------------------------------------------------------------------------------


def _common(p):
    p.add_argument("--format", choices=("json", "text"), default="json", help="stdout format")
    p.add_argument("--out", help="directory; envelopes are appended to <out>/<subcommand>.jsonl")


def _field_flags(p):
    p.add_argument("--q", type=int, help="field order (prime power)")
    p.add_argument("--p", type=int, help="field characteristic")
    p.add_argument("--n", type=int, help="extension degree over F_p (with --p)")


def _verdict_flags(p):
    p.add_argument("--window", type=int, help="override the number of k values scanned")
    p.add_argument("--strict-bound", action="store_true", help="start at q^k > d^4 instead of >=")
    p.add_argument("--cap", type=int, help=f"largest field enumerated (default {ENUMERATION_CAP})")


def build_parser():
    parser = argparse.ArgumentParser(prog="excmaps", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"excmaps {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("exceptional", help="decide exceptionality of a rational map")
    p.add_argument("map", help="e.g. 'x^3 over GF(5)'")
    _field_flags(p)
    _verdict_flags(p)
    _common(p)
    p.set_defaults(func=cmd_exceptional)

    p = sub.add_parser("ramify", help="ramification indices at rational points, with the coprimality check")
    p.add_argument("map")
    _field_flags(p)
    _verdict_flags(p)
    _common(p)
    p.set_defaults(func=cmd_ramify)

    p = sub.add_parser("scan", help="census of normalized degree-d polynomials")
    _field_flags(p)
    p.add_argument("--degree", type=int, help="polynomial degree")
    p.add_argument("--full", action="store_true", help="all polynomials, not only normalized ones")
    p.add_argument("--window", type=int)
    p.add_argument("--strict-bound", action="store_true")
    p.add_argument("--cap", type=int, help=f"candidate cap (default {CENSUS_CANDIDATE_CAP})")
    p.add_argument("--jobs", type=int, help="worker processes (default: all cores)")
    p.add_argument("--cursor", help="resume file holding the next candidate index")
    p.add_argument("--rows", action="store_true", help="also print one line per candidate")
    _common(p)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("triple", help="run the group-level criteria battery on a triple file")
    p.add_argument("file", help="JSON triple file, or - for stdin")
    p.add_argument("--cap", type=int, help=f"group size cap (default {GROUP_CAP})")
    _common(p)
    p.set_defaults(func=cmd_triple)

    p = sub.add_parser("tame", help="coprimality battery for the tame extension of degree n")
    p.add_argument("--n", type=int, help="extension degree")
    p.add_argument("--q", type=int, help="residue field order")
    _common(p)
    p.set_defaults(func=cmd_tame)

    p = sub.add_parser("sweep", help="tame batteries and tower checks over a range of (n, q)")
    p.add_argument("--n", type=int, help="largest degree (default 12)")
    p.add_argument("--q", dest="q_list", help="comma-separated field orders (default 2,3,4,5,7,8,9,11,13)")
    p.add_argument("--jobs", type=int, help="worker processes (default: all cores)")
    p.add_argument("--rows", action="store_true", help="also print one line per pair")
    _common(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("root", help="m-th root of a 1-unit Laurent series")
    p.add_argument("series", help="e.g. '1 + t over GF(5) prec 64'")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prec", type=int, help=f"precision when the literal has none (default {DEFAULT_PREC})")
    _common(p)
    p.set_defaults(func=cmd_root)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ExcMapsError) as exc:
        print(f"excmaps {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
