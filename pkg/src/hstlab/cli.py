"""Command line front end.

    hstlab check FILE [--json OUT] [--suite basic|full] [--lab]
    hstlab example r8|su3|s3t5 [--json OUT]
    hstlab jacobi FILE

Exit status: 0 when the verdict passes, 1 when it fails, 2 on usage or
input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

from . import document, report
from .algebroid import jacobi_defect
from .errors import HstError, JacobiRequired, ParseError, Singular, UnknownExample
from .hst import full_report, suite_passed

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="hstlab", description="Exact checks of hypersymplectic structures with torsion.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", help="check an input document")
    c.add_argument("file")
    c.add_argument("--json", metavar="OUT", help="also write the JSON report here ('-' for stdout)")
    c.add_argument("--suite", choices=["basic", "full"], default=None, help="theorem suite size (default from file)")
    c.add_argument("--lab", action="store_true", help="run on brackets that fail the Jacobi identity")

    e = sub.add_parser("example", help="run a bundled example with the full suite")
    e.add_argument("name")
    e.add_argument("--json", metavar="OUT")

    j = sub.add_parser("jacobi", help="print {mu, mu} for the algebra of a document")
    j.add_argument("file")
    return p


def _emit_json(data: dict, dest: str | None, out):
    if dest is None:
        return
    text = json.dumps(data, indent=2)
    if dest == "-":
        print(text, file=out)
    else:
        Path(dest).write_text(text + "\n")


def _run(doc: document.Document, name: str, suite: str, strict: bool, json_dest, out, err) -> int:
    t0 = time.perf_counter()
    try:
        rep = full_report(doc.inp, strict=strict, suite=suite)
    except JacobiRequired as exc:
        print(f"error: {exc} (basis triple {exc.witness})", file=err)
        return EXIT_INPUT
    except Singular as exc:
        idx = "" if exc.index is None else f" (form {exc.index + 1})"
        kernel = [str(x) for x in exc.kernel] if exc.kernel else None
        print(f"error: degenerate form{idx}; kernel vector {kernel}", file=err)
        return EXIT_INPUT
    elapsed = time.perf_counter() - t0
    if json_dest != "-":
        print(report.to_text(rep, name), file=out)
    _emit_json(report.to_dict(rep, elapsed), json_dest, out)
    ok = rep.verdict and (rep.suite is None or suite_passed(rep.suite))
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_check(args, out, err) -> int:
    try:
        doc = document.load(args.file)
    except FileNotFoundError:
        print(f"error: no such file: {args.file}", file=err)
        return EXIT_INPUT
    suite = args.suite or doc.suite
    strict = doc.strict and not args.lab
    return _run(doc, Path(args.file).name, suite, strict, args.json, out, err)


def cmd_example(args, out, err) -> int:
    doc = document.load_example(args.name)
    return _run(doc, args.name, "full", True, args.json, out, err)


def cmd_jacobi(args, out, err) -> int:
    try:
        doc = document.load(args.file)
    except FileNotFoundError:
        print(f"error: no such file: {args.file}", file=err)
        return EXIT_INPUT
    L = doc.L
    defect = jacobi_defect(L)
    print(f"{{mu, mu}} = {defect.format(L.labels)}", file=out)
    if defect:
        i, j, k = L.jacobi_witness
        print(f"Jacobi identity fails on ({L.labels[i]}, {L.labels[j]}, {L.labels[k]})", file=out)
        return EXIT_FAIL
    return EXIT_PASS


def main(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_PASS
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR, format="%(levelname)s %(name)s: %(message)s")
    handlers = {"check": cmd_check, "example": cmd_example, "jacobi": cmd_jacobi}
    try:
        return handlers[args.command](args, out, err)
    except UnknownExample as exc:
        print(f"error: {exc.args[0]}", file=err)
        return EXIT_INPUT
    except ParseError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT
    except HstError as exc:
        print(f"error: {exc}", file=err)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
