"""Command line front end.

Exit codes: 0 affirmative, 1 negative outcome, 2 usage error, 3 stalled
verdict (or inconclusive fertility), 4 the witness needs a larger n.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import criteria as C
from . import gallery
from . import witnesses as X
from .errors import NeedsLargerN, TreeShiftError
from .io import load_tree, load_weights, parse_exponents, parse_vector
from .trees import VertexAddr, find_fertile
from .vectors import SparseVector, SpaceTag, norm

OUT_ENV = "TREESHIFT_OUT"

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_STALLED, EXIT_LARGER_N = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _out_dir(args) -> Path:
    d = Path(args.out or os.environ.get(OUT_ENV) or ".")
    d.mkdir(parents=True, exist_ok=True)
    return d


def cmd_analyze(args) -> int:
    spec = load_tree(args.tree)
    w, _ = load_weights(args.weights, spec)
    probes = None
    if args.probes and args.probes != "default":
        probes = [VertexAddr.parse(p) for p in args.probes.split(",")]
    report = C.assemble_verdict(args.theorem, w, spec, probes, args.horizon, args.threshold,
                                args.space, args.budget)
    out = _out_dir(args)
    stem = args.name or f"analyze-{args.theorem}"
    (out / f"{stem}.json").write_text(report.to_json())
    (out / f"{stem}.txt").write_text(report.to_text())
    (out / f"{stem}.csv").write_text(report.to_csv())
    print(f"{args.theorem} [{report.label}] on {report.space}: {report.verdict}")
    if report.truncated:
        print("note: some child sets were truncated; values are lower bounds")
    return EXIT_OK if report.verdict.affirmative else EXIT_STALLED


def cmd_witness(args) -> int:
    spec = load_tree(args.tree)
    w, _ = load_weights(args.weights, spec)
    if args.g is None:
        raise UsageError("--g is required")
    g = parse_vector(args.g)
    space = SpaceTag.parse(args.space)
    if args.mode == "unrooted-power":
        f = parse_vector(args.f[0]) if args.f else SparseVector()
        rep = X.build_unrooted_power(space, w, spec, f, g, args.m, args.n, args.tau, args.budget)
    else:
        if args.P is None:
            raise UsageError("--P is required for this mode")
        P = parse_exponents(args.P)
        d = len(X.solve_exponents(P).s)
        fs = [parse_vector(x) for x in args.f] if args.f else [SparseVector()] * d
        build = X.build_rooted if args.mode == "rooted" else X.build_unrooted_algebra
        rep = build(space, w, spec, fs, g, P, args.n, args.budget)
    out = _out_dir(args)
    stem = args.name or f"witness-{args.mode}"
    (out / f"{stem}.json").write_text(json.dumps(rep.to_dict(), indent=2) + "\n")
    ok = rep.ok(norm(g, space), args.eps)
    print(f"{args.mode} witness at n = {rep.n}: hit error {rep.hit_error:.3e}, "
          f"approach {max(rep.approach_norms, default=0):.3e}, "
          f"collapse {max(rep.collapse_norms.values(), default=0):.3e}"
          + (f", residual {rep.residual_terms:.3e}" if rep.residual_terms is not None else ""))
    return EXIT_OK if ok else EXIT_NEGATIVE


def cmd_fertile(args) -> int:
    spec = load_tree(args.tree)
    verdict = find_fertile(spec, args.horizon, args.depth)
    print(verdict)
    return {"fertile": EXIT_OK, "none": EXIT_NEGATIVE}.get(verdict.status, EXIT_STALLED)


def cmd_gallery(args) -> int:
    if args.name not in gallery.PIPELINES:
        raise UsageError(f"unknown gallery example {args.name!r}; "
                         f"choose from {', '.join(gallery.PIPELINES)}")
    report = gallery.run(args.name)
    text = gallery.render(report)
    out = _out_dir(args)
    (out / f"gallery-{args.name}.json").write_text(text)
    if args.regenerate:
        gallery.DATA.mkdir(parents=True, exist_ok=True)
        gallery.expected_path(args.name).write_text(text)
        print(f"{args.name}: expected outcomes regenerated")
        return EXIT_OK
    expected = gallery.load_expected(args.name)
    if expected is None:
        print(f"{args.name}: no stored expectations (run with --regenerate)")
        return EXIT_NEGATIVE
    diffs = gallery.compare(report, expected)
    for d in diffs:
        print(f"  mismatch {d}")
    print(f"{args.name}: {'all expectations met' if not diffs else f'{len(diffs)} mismatches'}")
    return EXIT_OK if not diffs else EXIT_NEGATIVE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="treeshift", description="Weighted backward shifts on directed trees.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(q):
        q.add_argument("--out", help=f"output directory (default ${OUT_ENV} or .)")
        q.add_argument("--name", help="file stem for the written reports")
        q.add_argument("--budget", type=int, default=C.DEFAULT_BUDGET)

    a = sub.add_parser("analyze", help="evaluate a criterion and write a report")
    a.add_argument("tree")
    a.add_argument("weights")
    a.add_argument("--space", default="l2")
    a.add_argument("--theorem", required=True, choices=C.THEOREMS)
    a.add_argument("--horizon", type=int, default=C.DEFAULT_HORIZON)
    a.add_argument("--threshold", type=float, default=C.DEFAULT_THRESHOLD)
    a.add_argument("--probes", default="default",
                   help="comma-separated vertex addresses, or 'default'")
    common(a)
    a.set_defaults(func=cmd_analyze)

    w = sub.add_parser("witness", help="build a witness vector and report its norms")
    w.add_argument("tree")
    w.add_argument("weights")
    w.add_argument("--space", default="l2")
    w.add_argument("--mode", default="rooted",
                   choices=("rooted", "unrooted-power", "unrooted-algebra"))
    w.add_argument("--f", action="append", help="base vector literal (repeat for d > 1)")
    w.add_argument("--g", help="target vector literal")
    w.add_argument("--P", help="exponent set, e.g. '1,2' or '[[1,0],[0,1]]'")
    w.add_argument("--m", type=int, default=2)
    w.add_argument("--n", type=int, required=True)
    w.add_argument("--tau", type=float, default=1.0)
    w.add_argument("--eps", type=float, default=1e-3)
    common(w)
    w.set_defaults(func=cmd_witness)

    f = sub.add_parser("fertile", help="look for a fertile vertex")
    f.add_argument("tree")
    f.add_argument("--horizon", type=int, default=8)
    f.add_argument("--depth", type=int, default=1)
    f.set_defaults(func=cmd_fertile)

    g = sub.add_parser("gallery", help="reproduce a worked example")
    g.add_argument("name")
    g.add_argument("--out")
    g.add_argument("--regenerate", action="store_true",
                   help="overwrite the stored expected outcomes")
    g.set_defaults(func=cmd_gallery)
    return p


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except NeedsLargerN as exc:
        print(f"needs larger n: {exc} (minimal admissible n = {exc.n_min})", file=sys.stderr)
        return EXIT_LARGER_N
    except (TreeShiftError, OSError, ValueError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
