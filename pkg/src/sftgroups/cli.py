"""Command-line front end: ``sftgroups <command> ...``.

Exit codes: 0 definite answer, 1 failed verification, 2 input error,
3 undecided within the level bound, 4 request beyond supported scale.
"""

from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import perm as P
from .classify import (
    CATALOG_TRIPLES,
    CensusReport,
    UnsupportedScaleError,
    catalog_name,
    census,
    classify_many,
    default_jobs,
    format_depth4_report,
    grigorchuk_check,
    verify_depth4,
)
from .criteria import Tag, classify, default_max_n
from .io import ParseError, catalog_file, format_pattern, load_pattern
from .pattern import PreconditionError, hausdorff_dimension, minimize, restriction_group, restriction_order
from .tree import LEX, REVERSED

EXIT_OK, EXIT_FAILED, EXIT_INPUT, EXIT_UNDECIDED, EXIT_SCALE = 0, 1, 2, 3, 4


class InputError(Exception):
    pass


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {v}")
    return v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["human", "json", "csv"], default="human")
    common.add_argument("--numbering", choices=[LEX, REVERSED], default=LEX,
                        help="leaf numbering used for cycle notation (default: lex)")
    bounded = argparse.ArgumentParser(add_help=False)
    bounded.add_argument("--max-n", type=_positive, default=None, help="highest level tried (default: d+4)")
    pool = argparse.ArgumentParser(add_help=False)
    pool.add_argument("--jobs", type=_positive, default=None,
                      help="worker processes (default: $SFT_JOBS or the CPU count)")

    p = argparse.ArgumentParser(prog="sftgroups", description="Self-similar groups of finite type.")
    sub = p.add_subparsers(dest="command", required=True)

    a = sub.add_parser("analyze", parents=[common, bounded], help="classify one pattern group")
    a.add_argument("file")

    c = sub.add_parser("census", parents=[common, bounded, pool], help="classify all minimal groups of a depth")
    src = c.add_mutually_exclusive_group(required=True)
    src.add_argument("--depth", type=_positive)
    src.add_argument("--groups", nargs="+", metavar="FILE", help="classify these pattern files instead")
    c.add_argument("--output", help="write the report here instead of stdout")

    cat = sub.add_parser("catalog", parents=[common, pool], help="the depth-4 catalog P_ijk")
    cat.add_argument("name", choices=["depth4"])
    cat.add_argument("--verify", action="store_true", help="check every catalog claim")

    m = sub.add_parser("minimize", parents=[common], help="print the minimal pattern group")
    m.add_argument("file")
    m.add_argument("--style", choices=["leafperms", "generators"], default="leafperms")

    g = sub.add_parser("graph", parents=[common], help="pattern graph summary or DOT")
    g.add_argument("file")
    g.add_argument("--dot", action="store_true")

    r = sub.add_parser("restrict", parents=[common], help="order and generators of G_P on X^[n]")
    r.add_argument("file")
    r.add_argument("--level", type=_positive, required=True)

    h = sub.add_parser("hausdorff", parents=[common], help="Hausdorff dimension of G_P")
    h.add_argument("file")
    return p


def _load(args):
    try:
        return load_pattern(args.file, args.numbering)
    except OSError as e:
        raise InputError(f"{args.file}: {e.strerror or e}") from None
    except ParseError as e:
        raise InputError(f"{args.file}: {e}") from None


def _emit(out, text):
    out.write(text if text.endswith("\n") else text + "\n")


def _record_human(rec):
    d = rec.as_dict()
    lines = [f"pattern group: alphabet {d['alphabet']}, depth {d['depth']}, order {d['input_order']}"
             f" (minimal: {d['order_formula']['p']})",
             f"verdict: {d['verdict']}"]
    if d["witness_level"] is not None:
        lines[-1] += f" (level {d['witness_level']})"
    if rec.verdict.tag == Tag.UNDECIDED:
        lines[-1] += f" up to level {d['bound']}"
    lines.append(f"|G_P on X^[n]| = {d['order_formula']['p']} * {d['order_formula']['m']}"
                 f"^(k + ... + k^(n-{d['depth']}))")
    if "hausdorff_dimension" in d:
        lines.append(f"Hausdorff dimension: {d['hausdorff_dimension']}")
    if "evidence" in d:
        lines.append(f"evidence: {d['evidence']}")
    return "\n".join(lines)


def cmd_analyze(args, out):
    Q = _load(args)
    max_n = args.max_n if args.max_n is not None else default_max_n(Q.depth)
    if max_n < Q.depth:
        raise InputError(f"--max-n {max_n} is below the pattern depth {Q.depth}")
    rec = classify(Q, max_n)
    if args.format == "json":
        _emit(out, rec.to_json(indent=2))
    elif args.format == "csv":
        _emit(out, CensusReport(Q.depth, max_n, None, [rec]).to_csv())
    else:
        _emit(out, _record_human(rec))
    return EXIT_UNDECIDED if rec.verdict.tag == Tag.UNDECIDED else EXIT_OK


def cmd_census(args, out):
    jobs = args.jobs or default_jobs()
    if args.depth is not None:
        report = census(args.depth, args.max_n, jobs)
    else:
        groups = []
        for f in args.groups:
            args.file = f
            groups.append(_load(args))
        depths = {g.depth for g in groups}
        if len(depths) != 1:
            raise InputError("all supplied groups must have the same depth")
        d = depths.pop()
        if args.max_n is not None and args.max_n < d:
            raise InputError(f"--max-n {args.max_n} is below the pattern depth {d}")
        report = classify_many(groups, args.max_n, jobs, depth=d)
    text = {"json": lambda: report.to_json(indent=2), "csv": report.to_csv,
            "human": report.summary}[args.format]()
    if args.output:
        with open(args.output, "w") as fh:
            _emit(fh, text)
    else:
        _emit(out, text)
    return EXIT_UNDECIDED if report.count(Tag.UNDECIDED) else EXIT_OK


def cmd_catalog(args, out):
    if not args.verify:
        for t in CATALOG_TRIPLES:
            _emit(out, f"{catalog_name(t)}\t{catalog_file(catalog_name(t))}")
        return EXIT_OK
    report = verify_depth4(None if args.numbering == LEX else args.numbering, jobs=args.jobs or default_jobs())
    report["grigorchuk"] = grigorchuk_check(report["numbering"])
    ok = report["passed"] and report["grigorchuk"]["passed"]
    if args.format == "json":
        _emit(out, json.dumps(report, indent=2))
    else:
        _emit(out, format_depth4_report(report))
        g = report["grigorchuk"]
        _emit(out, f"Grigorchuk group on X^[4]: order {g.get('order')}, equals P_123: {g.get('equals_P123')}")
    return EXIT_OK if ok else EXIT_FAILED


def cmd_minimize(args, out):
    Q = minimize(_load(args))
    _emit(out, format_pattern(Q, args.style, args.numbering))
    return EXIT_OK


def cmd_graph(args, out):
    Q = _load(args)
    G = Q.graph()
    if args.dot:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            text = G.to_dot()
        for w in caught:
            print(f"warning: {w.message}", file=sys.stderr)
        _emit(out, text)
        return EXIT_OK
    stuck = sum(1 for row in G.succ if not all(row))
    if args.format == "json":
        _emit(out, json.dumps({"vertices": len(Q), "arcs": G.arc_count(), "stuck": stuck}))
    else:
        _emit(out, f"vertices: {len(Q)}\narcs: {G.arc_count()}\n"
                   f"vertices missing an out-arc for some letter: {stuck}")
    return EXIT_OK


def cmd_restrict(args, out):
    Q = minimize(_load(args))
    n = args.level
    if n < Q.depth:
        raise InputError(f"--level {n} is below the pattern depth {Q.depth}")
    G = restriction_group(Q, n)
    gens = [P.format_cycles(g) for g in G.generators]
    if args.format == "json":
        _emit(out, json.dumps({"level": n, "order": G.order(), "formula": restriction_order(Q, n),
                               "generators": gens}, indent=2))
    else:
        _emit(out, f"order of G_P on X^[{n}]: {G.order()}\ngenerators:")
        for s in gens:
            _emit(out, "  " + s)
    return EXIT_OK


def cmd_hausdorff(args, out):
    Q = minimize(_load(args))
    try:
        dim = str(hausdorff_dimension(Q))
    except PreconditionError:
        dim = "0"  # finite group
    if args.format == "json":
        _emit(out, json.dumps({"hausdorff_dimension": dim}))
    else:
        _emit(out, dim)
    return EXIT_OK


COMMANDS = {
    "analyze": cmd_analyze,
    "census": cmd_census,
    "catalog": cmd_catalog,
    "minimize": cmd_minimize,
    "graph": cmd_graph,
    "restrict": cmd_restrict,
    "hausdorff": cmd_hausdorff,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as e:
        return EXIT_INPUT if e.code else EXIT_OK
    try:
        return COMMANDS[args.command](args, out)
    except InputError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_INPUT
    except UnsupportedScaleError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_SCALE


if __name__ == "__main__":
    sys.exit(main())
