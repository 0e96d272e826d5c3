"""Command line front-end: ``golodtight analyze|gen|oracle|hochster|tight|golod|fm``."""
from __future__ import annotations

import argparse
import json
import logging
import os
import sys

from . import __version__
from .complex import SimplicialComplex
from .errors import BudgetExceeded, GolodTightError, InputError, UnknownGenerator
from .generators import boundary_simplex, connected_sum, cycle, stacked_sphere
from .complex import join
from .hochster import hochster_table, is_weakly_golod, rzk_betti_predicted, zk_betti
from .io import format_json, format_text, load
from .linalg import GF2, QQ, Field
from .oracle import RZK_MAX_VERTICES, ZK_MAX_VERTICES, rzk_betti_oracle, zk_betti_oracle
from .report import _fm_dict, _golod_dict, _tight_dict, analyze, exit_status
from .fm import verify_FM
from .tightness import is_tight

EXIT_PARSE, EXIT_BUDGET, EXIT_AUDIT, EXIT_ERROR, EXIT_ORACLE = 2, 3, 4, 5, 6

GENERATORS = ("boundary-simplex", "cycle", "stacked-sphere", "join", "connected-sum")


def _fields(values) -> list[Field]:
    if not values:
        return [GF2, QQ]
    out = []
    for v in values:
        F = Field.parse(v)
        if F not in out:
            out.append(F)
    return out


def _emit(doc: dict, fmt: str, text_fn):
    if fmt == "structured":
        print(json.dumps(doc, indent=2, sort_keys=True))
    else:
        text_fn(doc)


def _facet(text: str) -> list[int]:
    return [int(x) for x in text.replace(",", " ").split()]


def _matching(text: str | None):
    if not text:
        return None
    pairs = [p.split(":") for p in text.replace(",", " ").split()]
    return {int(a): int(b) for a, b in pairs}


# ------------------------------------------------------------------ commands

def cmd_gen(args) -> int:
    name, params = args.name, args.params
    try:
        if name == "boundary-simplex":
            K = boundary_simplex(int(params[0]))
        elif name == "cycle":
            K = cycle(int(params[0]))
        elif name == "stacked-sphere":
            K = stacked_sphere(int(params[0]), int(params[1]))
        elif name == "join":
            K = join(load(params[0]), load(params[1]))
            K = SimplicialComplex(K.m, K.facets)
        elif name == "connected-sum":
            K1, K2 = load(params[0]), load(params[2])
            K = connected_sum(K1, _facet(params[1]), K2, _facet(params[3]), _matching(args.matching))
        else:
            raise UnknownGenerator(f"unknown generator {name!r}; choose from {', '.join(GENERATORS)}")
    except (IndexError, ValueError) as exc:
        raise InputError(f"bad parameters for {name}: {exc}") from None
    text = format_json(K) if args.format == "json" else format_text(K)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_hochster(args) -> int:
    K = load(args.file, args.allow_isolated)
    doc = {}
    for F in _fields(args.field):
        t = hochster_table(K, F, max_vertices=args.max_vertices)
        doc[F.name] = [[list(I), p, r] for I, p, r in t.nonzero_rows()]

    def text(d):
        for name, rows in d.items():
            print(f"field {name}")
            for I, p, r in rows:
                print(f"  I={{{','.join(map(str, I))}}} p={p} rank={r}")
    _emit(doc, args.report, text)
    return 0


def cmd_oracle(args) -> int:
    K = load(args.file, args.allow_isolated)
    ok = True
    doc = {"which": args.which, "fields": {}}
    for F in _fields(args.field):
        if args.which == "rzk":
            pred, comp = rzk_betti_predicted(K, F), rzk_betti_oracle(K, F, min(args.max_vertices, RZK_MAX_VERTICES))
        else:
            pred, comp = zk_betti(K, F), zk_betti_oracle(K, F, min(args.max_vertices, ZK_MAX_VERTICES))
        doc["fields"][F.name] = {"predicted": list(pred), "computed": list(comp), "pass": pred == comp}
        ok &= pred == comp

    def text(d):
        for name, r in d["fields"].items():
            verdict = "PASS" if r["pass"] else "FAIL"
            print(f"{d['which']} {name}: predicted {tuple(r['predicted'])} computed {tuple(r['computed'])} {verdict}")
    _emit(doc, args.report, text)
    return 0 if ok else EXIT_ORACLE


def cmd_tight(args) -> int:
    K = load(args.file, args.allow_isolated)
    doc = {F.name: _tight_dict(is_tight(K, F, prune=not args.no_prune, max_vertices=args.max_vertices))
           for F in _fields(args.field)}

    def text(d):
        for name, r in d.items():
            w = r.get("witness")
            extra = f" witness I={set(w['I'])} degree {w['degree']}" if w else ""
            print(f"{name}: {'tight' if r['tight'] else 'not tight'}{extra} "
                  f"(checked {r['checked']}, pruned {r['pruned']})")
    _emit(doc, args.report, text)
    return 0


def cmd_golod(args) -> int:
    K = load(args.file, args.allow_isolated)
    doc = {F.name: _golod_dict(is_weakly_golod(K, F, prune=not args.no_prune, max_vertices=args.max_vertices))
           for F in _fields(args.field)}

    def text(d):
        for name, r in d.items():
            w = r.get("witness")
            if w:
                print(f"{name}: not weakly Golod, witness I={set(w['I'])} J={set(w['J'])} "
                      f"degree {w['degree']} (p,q)={tuple(w['bidegree'])} rank {w['rank']}")
            else:
                print(f"{name}: weakly Golod ({r['pairs_computed']} pairs computed, "
                      f"{r['pairs_prefiltered']} prefiltered)")
    _emit(doc, args.report, text)
    return 0


def cmd_fm(args) -> int:
    K = load(args.file, args.allow_isolated)
    r = verify_FM(K, _fields(args.field) if args.field else (QQ, GF2, Field(3), Field(5)))
    doc = _fm_dict(r)

    def text(d):
        print(f"F(M): {d['FM_facets']} facets, |S(M)| = {len(d['SM'])}")
        for name, b in d["betti"].items():
            print(f"  reduced Betti over {name}: {tuple(b)}")
        for claim, c in d["claims"].items():
            extra = f" witness {c['witness']}" if c["witness"] is not None else ""
            print(f"  {'PASS' if c['passed'] else 'FAIL'} {claim}{extra}")
    _emit(doc, args.report, text)
    return 0 if r.passed else EXIT_ERROR


def _print_analysis(doc: dict):
    inp = doc["input"]
    print(f"golodtight {doc['tool']['version']}")
    print(f"m = {inp['m']}, dim = {inp['dim']}, f-vector {tuple(inp['f_vector'])}, connected {inp['connected']}")
    print(f"facets sha256 {inp['facet_sha256']}")
    print(f"neighborly: {doc['neighborly']} (k-neighborly up to k = {doc['neighborliness']})")
    man = doc["manifold"]
    if man["status"] == "ok":
        v = man["value"]
        print(f"manifold: valid {v['valid']}, certified {v['certified']}, "
              f"closed pseudomanifold {v['closed_pseudomanifold']}, orientable over {v['orientable_over']}")
    ls = doc["locally_stacked"]
    if ls["status"] == "ok":
        verdicts = set(ls["value"].values())
        print(f"locally stacked: {', '.join(sorted(verdicts))}")
    else:
        print(f"locally stacked: {ls['status']} ({ls['reason']})")
    for name, blk in doc["fields"].items():
        print(f"-- field {name}")
        for key in ("homology", "tight", "weakly_golod", "tight_neighborly", "zk_betti", "rzk_betti_predicted",
                    "rzk_oracle", "zk_oracle"):
            if key not in blk:
                continue
            b = blk[key]
            if b["status"] != "ok":
                print(f"  {key}: {b['status']} ({b.get('reason', '')})")
                continue
            val = b["value"]
            if key == "tight":
                w = val.get("witness")
                print(f"  tight: {val['tight']}" + (f", witness I={w['I']} degree {w['degree']}" if w else ""))
            elif key == "weakly_golod":
                w = val.get("witness")
                print(f"  weakly Golod: {val['weakly_golod']}" + (
                    f", witness I={w['I']} J={w['J']} degree {w['degree']} (p,q)={w['bidegree']} rank {w['rank']}"
                    if w else ""))
            elif key == "tight_neighborly":
                print(f"  tight-neighborly: {val['holds']} (C({val['m']}-{val['d']}-1,2) = {val['lhs']}, "
                      f"C({val['d']}+2,2)*{val['beta1']} = {val['rhs']})")
            else:
                print(f"  {key}: {tuple(val) if isinstance(val, list) else val}")
        h = blk["hochster"]
        if h["status"] == "ok":
            print(f"  hochster rows: {len(h['value']['nonzero_rows'])} nonzero")
        s = blk["series"]
        if s["status"] == "ok":
            print(f"  Tor series: {s['value']['tor']}")
            print(f"  Golod bound: {s['value']['golod_bound']}")
    if "fm" in doc:
        fm = doc["fm"]
        if fm["status"] == "ok":
            v = fm["value"]
            failed = [k for k, c in v["claims"].items() if not c["passed"]]
            print(f"F(M): passed {v['passed']}, |S(M)| = {len(v['SM'])}" + (f", failed {failed}" if failed else ""))
        else:
            print(f"F(M): {fm['status']} ({fm.get('reason', '')})")
    a = doc["audit"]
    print(f"audit: {'clean' if a['clean'] else 'FINDINGS'}")
    for f in a["findings"]:
        print(f"  [{f['field']}] {f['statement']}: {f['detail']}; {f['note']}")
    for w in a["warnings"]:
        print(f"  warning: {w['check']}: {w['values']}")


def cmd_analyze(args) -> int:
    K = load(args.file, args.allow_isolated)
    threads = int(os.environ.get("GOLODTIGHT_THREADS", args.parallel))
    report, timing = analyze(K, _fields(args.field), prune=not args.no_prune, max_vertices=args.max_vertices,
                             truncate=args.truncate, oracles=not args.no_oracles, parallel=threads)
    if args.report == "structured":
        print(json.dumps({"report": report, "timing": timing}, indent=2, sort_keys=True))
    else:
        _print_analysis(report)
        if args.timing:
            print("timing (s): " + ", ".join(f"{k} {v:.3f}" for k, v in sorted(timing.items())))
    return exit_status(report)


# ------------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--field", action="append", help="q or a prime; repeatable (default: 2 and q)")
    common.add_argument("--max-vertices", type=int, default=20, help="subset enumeration cap")
    common.add_argument("--report", choices=("text", "structured"), default="text")
    common.add_argument("--allow-isolated", action="store_true", help="warn instead of failing on unused labels")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="golodtight", description=__doc__)
    p.add_argument("--version", action="version", version=f"golodtight {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common], help="run every predicate and the consistency audit")
    a.add_argument("file")
    a.add_argument("--truncate", type=int, default=12, help="series truncation degree")
    a.add_argument("--no-prune", action="store_true", help="disable all pruning (audit mode)")
    a.add_argument("--no-oracles", action="store_true", help="skip the brute-force cell models")
    a.add_argument("--parallel", type=int, default=1)
    a.add_argument("--timing", action="store_true", help="print timings after a text report")
    a.set_defaults(func=cmd_analyze)

    g = sub.add_parser("gen", help="write a generated complex")
    g.add_argument("name", help=" | ".join(GENERATORS))
    g.add_argument("params", nargs="*")
    g.add_argument("-o", "--out")
    g.add_argument("--format", choices=("text", "json"), default="text")
    g.add_argument("--matching", help="connected-sum matching as 'a:b,...' (K2 label : K1 label)")
    g.add_argument("-v", "--verbose", action="store_true")
    g.set_defaults(func=cmd_gen, allow_isolated=False)

    o = sub.add_parser("oracle", parents=[common], help="compare predicted and brute-force Betti numbers")
    o.add_argument("which", choices=("rzk", "zk"))
    o.add_argument("file")
    o.set_defaults(func=cmd_oracle)

    for name, fn, helptext in (("hochster", cmd_hochster, "dump the nonzero Hochster rows"),
                               ("tight", cmd_tight, "tightness with witness"),
                               ("golod", cmd_golod, "weak Golodness with witness"),
                               ("fm", cmd_fm, "build and verify F(M)")):
        s = sub.add_parser(name, parents=[common], help=helptext)
        s.add_argument("file")
        if name in ("tight", "golod"):
            s.add_argument("--no-prune", action="store_true")
        s.set_defaults(func=fn)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if getattr(args, "field", None) is not None:
        try:
            _fields(args.field)
        except ValueError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PARSE
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GolodTightError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
