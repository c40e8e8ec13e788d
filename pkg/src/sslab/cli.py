"""Command-line entry point: ``sslab eval|analyze|verify|enumerate``."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .document import Document, DocumentError, parse_document
from .oracle import enumerate_pairs
from .report import QueryFailure, execute, render_report
from .spaces import FinitePoset, cb_rank
from .verify import SUITES, run_suite

EXIT_OK, EXIT_QUERY, EXIT_PARSE = 0, 1, 2


def _load(path: str) -> Document:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc.strerror}", 0, 0) from None
    return parse_document(text)


def _parse_error(path: str, exc: DocumentError) -> int:
    print(f"{path}:{exc.line}:{exc.col}: error: {exc.message}", file=sys.stderr)
    return EXIT_PARSE


def cmd_eval(args) -> int:
    try:
        doc = _load(args.file)
    except DocumentError as exc:
        return _parse_error(args.file, exc)
    report = execute(doc)
    if args.dot:
        try:
            Path(args.dot).write_bytes(render_report(report, "dot"))
        except QueryFailure as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_QUERY
    sys.stdout.write(render_report(report, "json" if args.json else "text").decode("utf-8"))
    return EXIT_QUERY if report.failures else EXIT_OK


def cmd_analyze(args) -> int:
    try:
        doc = _load(args.file)
    except DocumentError as exc:
        return _parse_error(args.file, exc)
    counts = ", ".join(f"{v} {k}" for k, v in doc.summary().items())
    print(f"{args.file}: {counts}")
    for name, sp in doc.spaces.items():
        rank = cb_rank(sp, sp.max_part())
        extra = f"{len(sp.points)} points" if isinstance(sp, FinitePoset) else f"cb-rank(max)={rank}"
        scat = "min-scattered" if sp.min_scattered else "not min-scattered"
        print(f"  space {name}: {sp.kind}, {extra}, {scat}")
    for name, (sp, value) in doc.sets.items():
        print(f"  set {name}: {sp.render(value)}")
    for name, d in doc.descriptors.items():
        print(f"  prufer {name}: {d.describe()}")
    for name, op in doc.ops.items():
        print(f"  op {name}: {op.describe()}")
    for name in doc.maps:
        print(f"  map {name}")
    for q in doc.queries:
        print(f"  query {q.name}: {q.kind} (line {q.line})")
    return EXIT_OK


def cmd_enumerate(args) -> int:
    try:
        doc = _load(args.file)
    except DocumentError as exc:
        return _parse_error(args.file, exc)
    found = False
    for name, d in doc.descriptors.items():
        if not isinstance(d.space, FinitePoset):
            print(f"{name}: skipped (enumeration runs on finite posets only)")
            continue
        found = True
        pairs = enumerate_pairs(d)
        print(f"{name}: {len(pairs)} stable pairs")
        for p in pairs:
            print(f"  {p.describe()}")
    if not found:
        print("no finite-poset descriptors to enumerate", file=sys.stderr)
        return EXIT_QUERY
    return EXIT_OK


def cmd_verify(args) -> int:
    suites = SUITES if args.suite == "all" else (args.suite,)
    bad = 0
    for name in suites:
        res = run_suite(name, seed=args.seed, poset_size=args.poset_size)
        print(f"{name}: {'PASS' if res.ok else 'FAIL'} ({res.checks} checks, {len(res.failures)} failures)")
        for f in res.failures:
            print(f"  {f}")
        bad += not res.ok
    return EXIT_QUERY if bad else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="sslab", description="Spectral, radical and stable operation toolkit.")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="run every query of a document")
    e.add_argument("file")
    e.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    e.add_argument("--dot", metavar="OUT", help="write the Hasse diagram of enumerated pairs to OUT")
    e.set_defaults(func=cmd_eval)

    a = sub.add_parser("analyze", help="parse a document and list its entities")
    a.add_argument("file")
    a.set_defaults(func=cmd_analyze)

    v = sub.add_parser("verify", help="run built-in consistency suites")
    v.add_argument("--suite", choices=SUITES + ("all",), default="all")
    v.add_argument("--seed", type=int, default=0)
    v.add_argument("--poset-size", type=int, default=4, help="largest catalog poset (points)")
    v.set_defaults(func=cmd_verify)

    n = sub.add_parser("enumerate", help="list all stable pairs of each finite descriptor")
    n.add_argument("file")
    n.set_defaults(func=cmd_enumerate)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
