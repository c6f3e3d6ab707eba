"""Command-line interface: ``frieze generate|classify|realize|verify|render|oracle``.

Exit codes: 0 success, 2 mathematical rejection or failed verification,
64 usage error, 65 malformed input data.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from . import serialize
from .annulus import (
    DEFAULT_WINDING_BOUND,
    AnnulusTriangulation,
    PuncturedDisc,
    check_triangulation,
    disc_to_annulus,
    outer_quiddity,
    realize,
)
from .classifier import TriangulatedPolygon, classify
from .core import QuiddityRow, entry_recurrence, fragment
from .matchings import NotApplicable, count_by_recurrence, count_matchings, verify_matching_theorem
from .strip import (
    OutsideCore,
    RoundLimitExceeded,
    StripError,
    StripTriangulation,
    check_strip,
    realize_strip,
    strip_quiddity,
)
from .svg import render

EXIT_OK = 0
EXIT_REJECT = 2
EXIT_USAGE = 64
EXIT_DATA = 65


class UsageError(Exception):
    pass


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# -- input helpers --------------------------------------------------------------------


def _parse_ints(tokens) -> list[int]:
    out = []
    for tok in tokens:
        for part in tok.replace(",", " ").split():
            try:
                v = int(part)
            except ValueError:
                raise UsageError(f"not an integer: {part!r}") from None
            if v < 1:
                raise UsageError(f"entries must be positive, got {v}")
            out.append(v)
    return out


def _sequence(args) -> list[int] | None:
    tokens = list(args.seq or [])
    if tokens == ["-"]:
        tokens = [sys.stdin.read()]
    if not tokens:
        return None
    seq = _parse_ints(tokens)
    if not seq:
        raise UsageError("empty sequence")
    return seq


def _window(args) -> QuiddityRow | None:
    if args.window is None:
        return None
    entries = _parse_ints([args.window])
    if not entries:
        raise UsageError("empty window")
    return QuiddityRow.windowed(entries, lo=args.lo)


def _read_payload(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as e:
        raise UsageError(f"cannot read {path}: {e.strerror}") from None


def _load(path: str):
    try:
        return serialize.loads(_read_payload(path))
    except serialize.SchemaError as e:
        raise DataError(str(e)) from None


def _write(text: str, path: str | None):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)


# -- generate -------------------------------------------------------------------------


def _columns(text: str) -> range:
    try:
        a, b = (int(v) for v in text.split(":"))
    except ValueError:
        raise UsageError(f"--columns expects a:b, got {text!r}") from None
    if b < a:
        raise UsageError("--columns range is empty")
    return range(a, b + 1)


def frieze_table(q: QuiddityRow, cols: range, depth: int, label: str) -> str:
    f = fragment(q, cols, depth)
    lines = [f"# quiddity {label}", "# d\t" + "\t".join(f"i={i}" for i in cols)]
    for d in range(-2, depth + 1):
        lines.append("\t".join([str(d)] + [str(v) for v in f.row(d)]))
    return "\n".join(lines) + "\n"


def cmd_generate(args) -> int:
    seq = _sequence(args)
    q = _window(args)
    if (seq is None) == (q is None):
        raise UsageError("give either a sequence or --window")
    if args.depth < -2:
        raise UsageError("--depth must be >= -2")
    if seq is not None:
        q = QuiddityRow.periodic(seq)
        label = "periodic " + " ".join(map(str, seq))
        cols = range(0, max(len(seq), 6))
        if not args.force:
            c = classify(seq)
            if not (c.is_finite or c.is_infinite):
                print(f"not a frieze: {c.reason}; use --force to tabulate anyway", file=sys.stderr)
                return EXIT_REJECT
    else:
        label = f"window lo={q.lo} " + " ".join(map(str, q.window)) + " (2 outside)"
        cols = range(q.lo - args.depth - 2, q.hi + 3)
        if not args.force:
            try:
                realize_strip(q, peel_cap=args.peel_cap)
            except StripError as e:
                print(f"not an infinite frieze row: {e}; use --force to tabulate anyway", file=sys.stderr)
                return EXIT_REJECT
    if args.columns:
        cols = _columns(args.columns)
    _write(frieze_table(q, cols, args.depth, label), args.output)
    return EXIT_OK


# -- classify -------------------------------------------------------------------------


def cmd_classify(args) -> int:
    seq = _sequence(args)
    if seq is None:
        raise UsageError("classify needs a sequence")
    c = classify(seq)
    _write(serialize.dumps(c.to_dict()), args.output)
    return EXIT_OK if (c.is_finite or c.is_infinite) else EXIT_REJECT


# -- realize --------------------------------------------------------------------------


def cmd_realize(args) -> int:
    seq = _sequence(args)
    q = _window(args)
    if (seq is None) == (q is None):
        raise UsageError("give either a sequence or --window")
    if q is not None:
        if args.polygon:
            raise UsageError("--polygon needs a periodic sequence")
        try:
            obj = realize_strip(q, peel_cap=args.peel_cap)
        except RoundLimitExceeded as e:
            print(f"{e}; possible generic-arc regime, nothing constructed", file=sys.stderr)
            return EXIT_REJECT
        except StripError as e:
            print(str(e), file=sys.stderr)
            return EXIT_REJECT
    else:
        c = classify(seq)
        if args.polygon:
            if not c.is_finite:
                print(f"{tuple(seq)} is {c.outcome}; no polygon triangulation", file=sys.stderr)
                return EXIT_REJECT
            obj = c.polygon
        elif c.is_finite:
            print(f"{tuple(seq)} gives a finite frieze of order {c.polygon_order}; "
                  "try realize --polygon", file=sys.stderr)
            return EXIT_REJECT
        elif not c.is_infinite:
            print(f"not a frieze: {c.reason}", file=sys.stderr)
            return EXIT_REJECT
        elif args.strip:
            obj = realize_strip(QuiddityRow.periodic(seq))
        else:
            obj = realize(seq)
    _write(serialize.dumps(serialize.to_json(obj)), args.output)
    if args.svg:
        _write(render(obj), args.svg)
    return EXIT_OK


# -- verify ---------------------------------------------------------------------------


def _sweep_chunk(payload: str, depth: int, points: list[int]) -> tuple[int, list]:
    rep = verify_matching_theorem(serialize.loads(payload), depth=depth, i_range=points)
    return rep.checked, rep.mismatches


def _matching_sweep(obj, payload: str, depth: int, jobs: int, points: list[int]) -> tuple[int, list]:
    """Matching-theorem sweep, optionally split over worker processes; the
    result does not depend on ``jobs``."""
    if jobs <= 1 or len(points) < 2:
        rep = verify_matching_theorem(obj, depth=depth, i_range=points)
        return rep.checked, rep.mismatches
    chunks = [points[k::jobs] for k in range(jobs) if points[k::jobs]]
    with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
        parts = list(pool.map(_sweep_chunk, [payload] * len(chunks), [depth] * len(chunks), chunks))
    checked = sum(c for c, _ in parts)
    mismatches = sorted(x for _, part in parts for x in part)
    return checked, mismatches


def _verify_annulus(T, report, args, payload):
    check = check_triangulation(T, args.winding_bound)
    report["valid"] = check.ok
    if not check.ok:
        report["problems"] = check.problems
        return False
    q = outer_quiddity(T)
    report["quiddity"] = list(q)
    c = classify(q)
    report["classification"] = c.outcome
    ok = c.is_infinite
    if not ok:
        report["problems"] = [f"outer quiddity classifies as {c.outcome}"]
        return False
    checked, mismatches = _matching_sweep(T, payload, args.depth, args.jobs, list(range(T.n)))
    report["matching_checked"] = checked
    report["matching_mismatches"] = [list(x) for x in mismatches]
    return not mismatches


def _verify_strip(S, report, args, payload):
    problems = check_strip(S)
    report["valid"] = not problems
    if problems:
        report["problems"] = problems
        return False
    q = strip_quiddity(S)
    report["core"] = list(S.core)
    report["quiddity"] = list(q)
    ok = True
    if S.source is not None:
        want = [S.source[i] for i in range(S.core[0], S.core[1] + 1)]
        report["matches_source"] = want == list(q)
        ok = want == list(q)
    points = list(range(S.core[0], S.core[1] + 1))
    checked, mismatches = _matching_sweep(S, payload, args.depth, args.jobs, points)
    report["matching_checked"] = checked
    report["matching_mismatches"] = [list(x) for x in mismatches]
    return ok and not mismatches


def _verify_polygon(P, report):
    problems = P.problems()
    report["valid"] = not problems
    if problems:
        report["problems"] = problems
        return False
    q = P.quiddity()
    report["quiddity"] = list(q)
    c = classify(q)
    report["classification"] = c.outcome
    ok = c.is_finite and c.polygon_order == P.n
    if not ok:
        report["problems"] = [f"quiddity classifies as {c.outcome}"]
    return ok


def cmd_verify(args) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    payload = _read_payload(args.path)
    try:
        obj = serialize.loads(payload)
    except serialize.SchemaError as e:
        raise DataError(str(e)) from None
    report = {"surface": None}
    if isinstance(obj, PuncturedDisc):
        report["surface"] = "disc"
        try:
            obj = disc_to_annulus(obj)
        except ValueError as e:
            report["valid"] = False
            report["problems"] = [str(e)]
            _write(serialize.dumps(report), args.output)
            return EXIT_REJECT
        payload = serialize.dumps(serialize.to_json(obj))
        ok = _verify_annulus(obj, report, args, payload)
    elif isinstance(obj, AnnulusTriangulation):
        report["surface"] = "annulus"
        ok = _verify_annulus(obj, report, args, payload)
    elif isinstance(obj, StripTriangulation):
        report["surface"] = "strip"
        ok = _verify_strip(obj, report, args, payload)
    else:
        report["surface"] = "polygon"
        ok = _verify_polygon(obj, report)
    report["ok"] = ok
    _write(serialize.dumps(report), args.output)
    return EXIT_OK if ok else EXIT_REJECT


# -- render / oracle ------------------------------------------------------------------


def cmd_render(args) -> int:
    obj = _load(args.path)
    try:
        svg = render(obj)
    except ValueError as e:
        raise DataError(str(e)) from None
    _write(svg, args.output)
    return EXIT_OK


def cmd_oracle(args) -> int:
    obj = _load(args.path)
    i, j = args.i, args.j
    if j < i - 2:
        raise UsageError("need j >= i - 2")
    if isinstance(obj, TriangulatedPolygon):
        raise UsageError("the matching oracle works on strip or annulus triangulations")
    if isinstance(obj, PuncturedDisc):
        obj = disc_to_annulus(obj)
    try:
        matched = count_matchings(obj, i, j)
        try:
            rec = count_by_recurrence(obj, i, j)
        except NotApplicable:
            rec = None
    except OutsideCore as e:
        raise UsageError(str(e)) from None
    if isinstance(obj, AnnulusTriangulation):
        q = QuiddityRow.periodic(outer_quiddity(obj))
    else:
        lo, hi = obj.core
        q = QuiddityRow.windowed(strip_quiddity(obj), lo=lo)
    entry = entry_recurrence(q, i, j)
    values = [matched, entry] + ([rec] if rec is not None else [])
    result = {
        "i": i,
        "j": j,
        "count_matchings": matched,
        "count_by_recurrence": rec,
        "entry": entry,
        "agree": len(set(values)) == 1,
    }
    _write(serialize.dumps(result), args.output)
    return EXIT_OK if result["agree"] else EXIT_REJECT


# -- wiring ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="frieze", description="Friezes, their classification and triangulations.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def seq_args(sp, window=True):
        sp.add_argument("seq", nargs="*", help="quiddity sequence (one period), or - for stdin")
        if window:
            sp.add_argument("--window", help="comma-separated window of a row that is 2 elsewhere")
            sp.add_argument("--lo", type=int, default=0, help="index of the first window entry")
        sp.add_argument("-o", "--output", help="output file (default stdout)")

    g = sub.add_parser("generate", help="tabulate a frieze as TSV")
    seq_args(g)
    g.add_argument("--depth", type=int, default=6)
    g.add_argument("--columns", help="column range a:b")
    g.add_argument("--force", action="store_true", help="tabulate even if not a frieze")
    g.add_argument("--peel-cap", type=int, default=None)
    g.set_defaults(func=cmd_generate)

    c = sub.add_parser("classify", help="finite, infinite or not a frieze")
    seq_args(c, window=False)
    c.set_defaults(func=cmd_classify)

    r = sub.add_parser("realize", help="witness triangulation as JSON")
    seq_args(r)
    r.add_argument("--polygon", action="store_true", help="polygon triangulation of a finite frieze")
    r.add_argument("--strip", action="store_true", help="strip triangulation of a periodic row")
    r.add_argument("--svg", help="also write an SVG drawing here")
    r.add_argument("--peel-cap", type=int, default=None)
    r.set_defaults(func=cmd_realize)

    v = sub.add_parser("verify", help="check a triangulation JSON")
    v.add_argument("path", help="JSON file or -")
    v.add_argument("--depth", type=int, default=6)
    v.add_argument("--winding-bound", type=int, default=DEFAULT_WINDING_BOUND)
    v.add_argument("--jobs", type=int, default=1)
    v.add_argument("-o", "--output")
    v.set_defaults(func=cmd_verify)

    d = sub.add_parser("render", help="SVG drawing of a triangulation JSON")
    d.add_argument("path")
    d.add_argument("-o", "--output")
    d.set_defaults(func=cmd_render)

    o = sub.add_parser("oracle", help="matching counts against the frieze entry")
    o.add_argument("path")
    o.add_argument("i", type=int)
    o.add_argument("j", type=int)
    o.add_argument("-o", "--output")
    o.set_defaults(func=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as e:
        print(f"frieze: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DataError as e:
        print(f"frieze: bad input data: {e}", file=sys.stderr)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
