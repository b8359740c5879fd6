"""Command-line interface.

Code files are plain text::

    # comment lines start with '#'
    q k n
    g11 g12 ... g1n
    ...
    gk1 gk2 ... gkn

Entries are field elements in [0, q), encoded as integers whose base-p
digits are the polynomial-basis coefficients (little-endian).

Exit codes: 0 success, 1 parse or usage error, 2 internal cross-check
mismatch, 3 enumeration cap exceeded, 4 a search found a VIOLATION.
Caps can be raised with ``CCDIM_CAPS="codewords=...,subspaces=...,subsets=..."``.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .algebra import FieldError, MatrixGF, field_from_order, rank
from .caps import get_caps
from .claims import CLAIMS, run_claim
from .code import (
    INFINITY,
    LinearCode,
    covering_dimension_avoidance,
    covering_dimension_subcode,
    support_weight_distribution,
)
from .construct import (
    BlockSpec,
    binary_parity_dual,
    block_points,
    code_from_points,
    dual_hamming,
    is_minimal_block,
    reed_solomon,
)
from .errors import CapExceeded, CrossCheckError
from .matroid import MatroidView, characteristic_polynomial, critical_exponent
from .search import SearchParams, SearchReport, classify, run_search

log = logging.getLogger("ccdim")

EXIT_OK, EXIT_PARSE, EXIT_CROSSCHECK, EXIT_CAP, EXIT_VIOLATION = range(5)


class CodeFileError(ValueError):
    pass


def parse_code_file(text: str) -> LinearCode:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise CodeFileError("empty code file")
    try:
        q, k, n = (int(t) for t in lines[0].split())
    except ValueError:
        raise CodeFileError(f"bad header {lines[0]!r}; expected 'q k n'") from None
    try:
        f = field_from_order(q)
    except FieldError as exc:
        raise CodeFileError(str(exc)) from None
    rows = lines[1:]
    if len(rows) != k:
        raise CodeFileError(f"header declares k={k} rows, found {len(rows)}")
    try:
        G = np.array([[int(t) for t in row.split()] for row in rows], dtype=np.int64)
    except ValueError:
        raise CodeFileError("matrix entries must be integers") from None
    if G.ndim != 2 or G.shape != (k, n):
        raise CodeFileError(f"every row must hold n={n} entries")
    if k < 1 or n < 1:
        raise CodeFileError("need k >= 1 and n >= 1")
    if G.min() < 0 or G.max() >= q:
        raise CodeFileError(f"entries must lie in [0, {q})")
    M = MatrixGF(f, G)
    if rank(M) != k:
        raise CodeFileError(f"generator rows are dependent (rank {rank(M)} < {k})")
    return LinearCode(f, M)


def format_code_file(C: LinearCode, comments=()) -> str:
    out = [f"# {c}" for c in comments]
    out.append(f"{C.q} {C.k} {C.n}")
    out += [" ".join(map(str, row)) for row in C.G.tolist()]
    return "\n".join(out) + "\n"


def _fmt(x) -> str:
    return "inf" if x == INFINITY else str(x)


def analyze(C: LinearCode, charpoly=False, swd=None, witness=False) -> dict:
    """Everything ``ccdim analyze`` reports, as a JSON-ready dict."""
    sub = covering_dimension_subcode(C)
    avoid = covering_dimension_avoidance(C)
    Mv = MatroidView.of(C)
    crit = critical_exponent(Mv)
    if not sub.value == avoid.value == crit:
        raise CrossCheckError(f"gamma disagrees: subcode {sub}, avoidance {avoid}, critical exponent {_fmt(crit)}")
    verdict = classify(C, gamma=sub.value)
    out = {
        "q": C.q,
        "n": C.n,
        "k": C.k,
        "d": C.min_weight,
        "d_perp": verdict.d_perp,
        "gamma": _fmt(sub.value),
        "critical_exponent": _fmt(crit),
        "kung_slack": verdict.kung_slack,
        "class": verdict.conjecture_class.value,
        "regime": verdict.regime,
    }
    if charpoly:
        out["charpoly"] = str(characteristic_polynomial(Mv))
    if swd is not None:
        out["swd"] = {str(i): c for i, c in support_weight_distribution(C, swd).nonzero().items()}
    if witness:
        out["witness"] = {
            "subcode": sub.witness.tolist() if sub.witness is not None else None,
            "avoiding_subspace": avoid.witness.tolist() if avoid.witness is not None else None,
        }
    return out


def cmd_analyze(args) -> int:
    C = parse_code_file(Path(args.input).read_text(encoding="utf-8"))
    rep = analyze(C, args.charpoly, args.swd, args.witness)
    if args.json:
        print(json.dumps(rep, indent=1))
        return EXIT_OK
    for key in ("q", "n", "k", "d", "d_perp", "gamma", "critical_exponent", "kung_slack", "class", "regime"):
        print(f"{key}: {_fmt(rep[key]) if rep[key] is not None else '-'}")
    if "charpoly" in rep:
        print(f"charpoly: {rep['charpoly']}")
    if "swd" in rep:
        print(f"A_i^({args.swd}):")
        for i, c in rep["swd"].items():
            print(f"  {i}: {c}")
    if "witness" in rep:
        for name, rows in rep["witness"].items():
            print(f"{name} witness:")
            if not rows:
                print("  (zero subspace)")
            for row in rows or []:
                print("  " + " ".join(map(str, row)))
    return EXIT_OK


def _need(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise CodeFileError(f"{args.family} needs " + ", ".join("--" + m for m in missing))


def _parse_point(text: str) -> tuple[int, ...]:
    return tuple(int(t) for t in text.replace(",", " ").split())


def cmd_construct(args) -> int:
    fam = args.family
    comments = [f"family {fam}"]
    report = []
    if fam == "dual-hamming":
        _need(args, "q", "k")
        C = dual_hamming(args.q, args.k)
    elif fam == "rs":
        _need(args, "q", "n", "k")
        C = reed_solomon(args.q, args.n, args.k)
    elif fam == "parity-dual":
        _need(args, "n")
        C = binary_parity_dual(args.n)
    else:
        _need(args, "q", "k", "m")
        V = [_parse_point(v) for v in args.V] if args.V else None
        spec = BlockSpec(args.q, args.k, args.m, T=tuple(args.T) if args.T else None, V=V)
        P = block_points(spec)
        C = code_from_points(P)
        comments.append(f"q={spec.q} k={spec.k} m={spec.m} T={list(spec.T)} V={[list(v) for v in spec.V]}")
        comments.append(f"{len(P)} points, one per column:")
        comments += ["point " + " ".join(map(str, p)) for p in P.tolist()]
        if args.verify:
            v = is_minimal_block(P, spec.r)
            line = f"is (k-m)-block: {str(v.is_block).lower()}; minimal: {str(v.minimal).lower()}"
            comments.append(line)
            report.append(line)
            for p in v.untouched:
                report.append(f"no tangent through {list(p)}")
    text = format_code_file(C, comments)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
        print(f"wrote [{C.n},{C.k}] code over GF({C.q}) to {args.output}")
        for line in report:
            print(line)
    else:
        sys.stdout.write(text)
        for line in report:
            print(line, file=sys.stderr)
    return EXIT_OK


def cmd_search(args) -> int:
    params = SearchParams(args.q, k_max=args.k_max, n_max=args.n_max, simple_only=args.simple)
    resume = SearchReport.from_json(Path(args.resume).read_text(encoding="utf-8")) if args.resume else None
    report = run_search(params, workers=args.workers, resume=resume)
    text = report.to_json()
    if args.report:
        Path(args.report).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    if args.csv:
        Path(args.csv).write_text(report.to_csv(), encoding="utf-8")
    summary = ", ".join(f"{k}={v}" for k, v in report.summary.items())
    print(f"search q={args.q}: {summary} ({report.timing:.1f}s)", file=sys.stderr)
    if report.cursor is not None:
        print(f"interrupted; resume with --resume at cursor {report.cursor}", file=sys.stderr)
    return EXIT_VIOLATION if report.violations else EXIT_OK


def cmd_verify_paper(args) -> int:
    if args.list:
        for c in CLAIMS:
            print(f"{c.name}\t{c.description}")
        return EXIT_OK
    names = {c.name for c in CLAIMS}
    unknown = set(args.only or ()) - names
    if unknown:
        raise CodeFileError(f"unknown claim(s): {', '.join(sorted(unknown))}")
    chosen = [c for c in CLAIMS if not args.only or c.name in args.only]
    ok = True
    for c in chosen:
        res = run_claim(c, args.seed)
        ok &= res.passed
        print(f"{'PASS' if res.passed else 'FAIL'}  {res.name:<12} {res.seconds:7.2f}s  {res.detail}", flush=True)
    return EXIT_OK if ok else EXIT_CROSSCHECK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_PARSE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="ccdim", description="Covering dimension of linear codes over finite fields.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("-v", "--verbose", action="count", default=0)
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    a = sub.add_parser("analyze", help="report n, k, d, d_perp, gamma and the conjecture class of a code file")
    a.add_argument("input")
    a.add_argument("--json", action="store_true")
    a.add_argument("--charpoly", action="store_true", help="print the characteristic polynomial")
    a.add_argument("--swd", type=int, metavar="R", help="print the support weight distribution A_i^(R)")
    a.add_argument("--witness", action="store_true", help="print witnesses for gamma")
    a.set_defaults(func=cmd_analyze)

    c = sub.add_parser("construct", help="write a code file for a named family")
    c.add_argument("family", choices=["dual-hamming", "rs", "parity-dual", "block"])
    c.add_argument("--q", type=int)
    c.add_argument("--k", type=int)
    c.add_argument("--n", type=int)
    c.add_argument("--m", type=int)
    c.add_argument("--T", type=int, nargs="+", help="block: m coordinates (0-based)")
    c.add_argument("--V", action="append", help="block: a point vanishing on T, e.g. '1,0,0,0' (repeat m-1 times)")
    c.add_argument("--verify", action="store_true", help="block: check the block and minimality properties")
    c.add_argument("-o", "--output")
    c.set_defaults(func=cmd_construct)

    s = sub.add_parser("search", help="classify every small code")
    s.add_argument("q", type=int)
    s.add_argument("--n-max", type=int, required=True)
    s.add_argument("--k-max", type=int, required=True)
    s.add_argument("--simple", action="store_true", help="distinct projective points only")
    s.add_argument("--workers", type=int, default=1)
    s.add_argument("--report", help="write the JSON report here instead of stdout")
    s.add_argument("--csv", help="also write verdict rows as CSV")
    s.add_argument("--resume", help="continue an interrupted report")
    s.set_defaults(func=cmd_search)

    v = sub.add_parser("verify-paper", help="run every acceptance claim")
    v.add_argument("--only", action="append", metavar="CLAIM")
    v.add_argument("--list", action="store_true")
    v.add_argument("--seed", type=int, default=0)
    v.set_defaults(func=cmd_verify_paper)
    return ap


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.WARNING - 10 * args.verbose, format="%(levelname)s %(name)s: %(message)s")
    try:
        get_caps()
    except ValueError as exc:
        print(f"ccdim: {exc}", file=sys.stderr)
        return EXIT_PARSE
    try:
        return args.func(args)
    except CrossCheckError as exc:
        print(f"ccdim: cross-check failed: {exc}", file=sys.stderr)
        return EXIT_CROSSCHECK
    except CapExceeded as exc:
        print(f"ccdim: cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ValueError, OSError) as exc:
        print(f"ccdim: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
