"""Command-line front end.

Subcommands: ``render`` runs the full pipeline on a solution-set file and
writes SVG/DOT/view-JSON; ``inspect`` prints the similarity matrix, retained
edges, and node degrees as text; ``serve`` starts the HTTP session service.

Exit codes: 0 success, 1 data or pipeline error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from pathlib import Path

from .errors import MoGramError
from .layout import LayoutParams
from .model import load_solution_set
from .pathfinder import PathfinderParams, pathfinder_prune, to_distance
from .session import create_session, get_view, view_dot, view_svg
from .similarity import MetricChoice, build_similarity_matrix, load_precomputed_matrix
from .styling import StyleSpec

_METRIC_NAMES = {
    "tsalbp": "tsalbp_line",
    "hamming": "hamming_binary",
    "levenshtein": "levenshtein_tokens",
    "precomputed": "precomputed",
}


def _parse_r(text: str) -> float:
    if text.lower() in ("inf", "infinity"):
        return math.inf
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid Minkowski exponent {text!r}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mograms",
        description="Similarity networks for multiobjective solution sets.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", required=True, help="solution-set JSON file")
        p.add_argument(
            "--metric", required=True, choices=sorted(_METRIC_NAMES),
            help="design-space similarity metric",
        )
        p.add_argument("--matrix", help="precomputed similarity matrix JSON file")
        p.add_argument("--pf-r", type=_parse_r, default=math.inf, metavar="R",
                       help="Minkowski exponent (number or 'inf', default inf)")
        p.add_argument("--pf-q", type=int, default=None, metavar="Q",
                       help="max alternative-path length (default n-1)")

    render = sub.add_parser("render", help="run the pipeline and write artifacts")
    add_common(render)
    render.add_argument("--out", required=True, help="output file path")
    render.add_argument("--format", choices=["svg", "dot", "json"], default="svg")
    render.add_argument("--seed", type=int, default=0, help="layout RNG seed")
    render.add_argument("--tol", type=float, default=1e-4,
                        help="layout gradient tolerance")
    render.add_argument("--s-lo", type=float, default=None,
                        help="similarity display range lower end")
    render.add_argument("--s-hi", type=float, default=None,
                        help="similarity display range upper end")
    render.add_argument("--no-objective-colors", action="store_true",
                        help="render uniform-color nodes")
    render.add_argument("--label-decimals", type=int, default=2)

    inspect = sub.add_parser("inspect", help="print matrix, edges, degrees")
    add_common(inspect)

    serve = sub.add_parser("serve", help="start the HTTP session service")
    serve.add_argument("--bind", default="127.0.0.1:8000", metavar="HOST:PORT")
    serve.add_argument("--ui-dir", default=None,
                       help="directory of built UI assets to mount at /ui")
    return parser


def _metric_from_args(args: argparse.Namespace) -> MetricChoice:
    name = _METRIC_NAMES[args.metric]
    if name == "precomputed":
        return MetricChoice.precomputed(load_precomputed_matrix(args.matrix))
    return MetricChoice(name=name)


def _cmd_render(args: argparse.Namespace) -> int:
    # flag-domain problems are usage errors (exit 2), found before any I/O
    try:
        if args.metric == "precomputed" and not args.matrix:
            raise MoGramError("--metric precomputed requires --matrix")
        pf = PathfinderParams(r=args.pf_r, q=args.pf_q)
        lay = LayoutParams(seed=args.seed, gradient_tolerance=args.tol)
        if (args.s_lo is None) != (args.s_hi is None):
            raise MoGramError("--s-lo and --s-hi must be given together")
        display = None if args.s_lo is None else (args.s_lo, args.s_hi)
        spec = StyleSpec(
            similarity_display_range=display,
            objective_coloring_enabled=not args.no_objective_colors,
            label_decimals=args.label_decimals,
        )
    except MoGramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        sset = load_solution_set(args.input)
        metric = _metric_from_args(args)
        s = create_session(sset, metric, pf=pf, lay=lay, style_spec=spec)
        if args.format == "svg":
            text = view_svg(s)
        elif args.format == "dot":
            text = view_dot(s)
        else:
            text = json.dumps(get_view(s), indent=2) + "\n"
        Path(args.out).write_text(text, encoding="utf-8")
    except MoGramError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    assert s.current is not None
    report = s.current.layout.layout_report
    status = "converged" if report.converged else "not converged"
    print(f"nodes: {s.current.n}")
    print(f"edges: {len(s.current.edge_render)}")
    print(
        f"layout: {status} after {report.iterations} iterations "
        f"(max gradient {report.final_max_gradient:.2e})"
    )
    print(f"wrote: {args.out}")
    return 0


def _cmd_inspect(args: argparse.Namespace) -> int:
    try:
        if args.metric == "precomputed" and not args.matrix:
            raise MoGramError("--metric precomputed requires --matrix")
        pf = PathfinderParams(r=args.pf_r, q=args.pf_q)
    except MoGramError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2

    try:
        sset = load_solution_set(args.input)
        metric = _metric_from_args(args)
        matrix = build_similarity_matrix(sset, metric)
        g = pathfinder_prune(to_distance(matrix), pf)
    except MoGramError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1

    n = matrix.n
    print(f"similarity matrix (n={n}):")
    header = "     " + "".join(f"{j:>6}" for j in range(1, n + 1))
    print(header)
    for i in range(n):
        row = "".join(f"{matrix.values[i, j]:>6.2f}" for j in range(n))
        print(f"{i + 1:>5}{row}")
    print()
    print(f"retained edges ({g.edge_count}):")
    for a, b in g.edges():
        print(f"  {a} -- {b}  sim {g.edge_similarity[(a, b)]:.2f}")
    print()
    print("degrees:")
    for i in range(1, n + 1):
        print(f"  node {i}: {g.degree(i)}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    host, sep, port_text = args.bind.rpartition(":")
    if not sep or not host:
        print(f"error: --bind must be HOST:PORT, got {args.bind!r}", file=sys.stderr)
        return 2
    try:
        port = int(port_text)
    except ValueError:
        print(f"error: invalid port {port_text!r}", file=sys.stderr)
        return 2

    import uvicorn

    from .service import create_app

    uvicorn.run(create_app(ui_dir=args.ui_dir), host=host, port=port)
    return 0


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "render":
        return _cmd_render(args)
    if args.command == "inspect":
        return _cmd_inspect(args)
    return _cmd_serve(args)


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
