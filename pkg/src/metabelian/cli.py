"""Command line front end.

Exit codes: 0 equivalent / success, 1 not equivalent, 2 usage error,
3 resource cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import explore
from .classify import gamma_n_spec, qi_gamma, qi_gamma_S
from .group import (
    GroupSpec,
    SpecError,
    element_to_json,
    evaluate_word,
    expansion,
    normal_form,
    similarity_factor,
    to_matrix,
)
from .tree import base_vertex, branching_sequence, height, project, subtree_dot

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3
TREE_DEPTH_CAP = 8
TREE_NODE_CAP = 200_000


class UsageError(Exception):
    pass


def parse_spec(text: str) -> GroupSpec:
    """``"4,9"`` gives Gamma(4, 9); ``"gamma:6"`` gives the spec of Gamma_6."""
    text = text.strip()
    try:
        if text.startswith("gamma:"):
            return gamma_n_spec(int(text[len("gamma:"):]))
        return GroupSpec(tuple(int(x) for x in text.split(",")))
    except SpecError as exc:
        raise UsageError(f"invalid group spec {text!r}: {exc}") from exc
    except ValueError as exc:
        raise UsageError(f"invalid group spec {text!r}: {exc}") from exc


def _emit(args, text: str) -> None:
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def cmd_classify(args) -> int:
    s1, s2 = parse_spec(args.spec1), parse_spec(args.spec2)
    if s1.gamma_n is not None and s2.gamma_n is not None:
        verdict = qi_gamma(s1.gamma_n, s2.gamma_n)
    else:
        verdict = qi_gamma_S(s1, s2)
    if args.format == "json":
        _emit(args, _dump({"spec1": str(s1), "spec2": str(s2), **verdict.to_json()}))
    else:
        word = "quasi-isometric" if verdict.equivalent else "not quasi-isometric"
        lines = [f"{s1} and {s2} are {word}"]
        for key, value in verdict.witness.items():
            lines.append(f"  {key}: {value}")
        if verdict.matching is not None:
            lines.append(f"  matching: {[list(m) for m in verdict.matching]}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK if verdict.equivalent else EXIT_NO


def cmd_tree(args) -> int:
    if args.depth < 0:
        raise UsageError("depth must be nonnegative")
    if args.depth > TREE_DEPTH_CAP:
        raise explore.CapExceeded(f"depth {args.depth} exceeds the cap {TREE_DEPTH_CAP}")
    seq = branching_sequence(args.n)
    nodes, width = 1, 1
    for level in range(args.depth):
        width *= seq.factor_at(level)
        nodes += width
    if nodes > TREE_NODE_CAP:
        raise explore.CapExceeded(f"subtree has {nodes} nodes, cap is {TREE_NODE_CAP}")
    _emit(args, subtree_dot(base_vertex(seq), args.depth, name=f"T{args.n}"))
    return EXIT_OK


def element_report(spec: GroupSpec, g) -> dict:
    report = {
        **element_to_json(g),
        "spec": str(spec),
        "normal_form": str(normal_form(g)),
        "expansion": str(expansion(g)),
        "similarity_factors": [str(similarity_factor(g, i)) for i in range(1, spec.k + 1)],
        "heights": list(height(g).heights),
        "tree_vertices": [
            {"level": t.level, "coset": str(t.rep)} for t in (project(g, i) for i in range(1, spec.k + 1))
        ],
    }
    if spec.gamma_n is not None:
        report["matrix"] = to_matrix(g).rows()
    return report


def cmd_elem(args) -> int:
    spec = parse_spec(args.spec)
    try:
        g = evaluate_word(spec, args.word)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    report = element_report(spec, g)
    if args.format == "json":
        _emit(args, _dump(report))
    else:
        lines = [f"q = {report['q']}", f"v = {report['v']}", f"normal form: {report['normal_form']}"]
        if "matrix" in report:
            lines.append(f"matrix: {report['matrix']}")
        lines.append(f"heights: {report['heights']}")
        lines.append(f"expansion: {report['expansion']}")
        lines.append(f"similarity factors: {report['similarity_factors']}")
        _emit(args, "\n".join(lines) + "\n")
    return EXIT_OK


def cmd_ball(args) -> int:
    spec = parse_spec(args.spec)
    table = None
    cache = Path(args.cache) / f"ball_{'_'.join(map(str, spec.S))}_r{args.r}.json" if args.cache else None
    if cache is not None:
        table = explore.load_table(cache, spec, args.r)
    if table is None:
        table = explore.bfs_ball(spec, args.r, max_elements=args.cap_mem).table
        if cache is not None:
            cache.parent.mkdir(parents=True, exist_ok=True)
            explore.save_table(cache, spec, table)
    if args.format == "json":
        _emit(args, _dump({"spec": str(spec), "radius": table.radius, "spheres": list(table.spheres),
                           "balls": list(table.balls), "generators": table.generators}))
    else:
        _emit(args, explore.table_csv(table))
    return EXIT_OK


def cmd_qifit(args) -> int:
    spec = parse_spec(args.spec)
    fit = explore.qi_compare(spec, args.r, keep_pairs=args.pairs, max_elements=args.cap_mem)
    if args.format == "json":
        payload = fit.report()
        if args.pairs:
            payload["pairs_report"] = list(explore.distance_report(fit))
        _emit(args, _dump(payload))
    else:
        _emit(args, f"K = {fit.K:.6f}\nC = {fit.C:.6f}\npairs = {fit.pair_count}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["json", "csv", "dot", "text"], default="text")
    common.add_argument("--out", help="write output to this file instead of stdout")
    common.add_argument("--cap-mem", type=int, default=explore.DEFAULT_MAX_ELEMENTS,
                        help="maximum number of group elements held in memory")

    parser = argparse.ArgumentParser(prog="metabelian", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="decide quasi-isometry of two groups")
    p.add_argument("spec1")
    p.add_argument("spec2")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("tree", parents=[common], help="DOT for the subtree of T^n below the base vertex")
    p.add_argument("n", type=int)
    p.add_argument("--depth", type=int, default=2)
    p.set_defaults(func=cmd_tree)

    p = sub.add_parser("elem", parents=[common], help="evaluate a word, e.g. 'a1 b a1^-1'")
    p.add_argument("spec")
    p.add_argument("word")
    p.set_defaults(func=cmd_elem)

    p = sub.add_parser("ball", parents=[common], help="sphere and ball sizes as CSV")
    p.add_argument("spec")
    p.add_argument("--r", type=int, default=4)
    p.add_argument("--cache", help="directory for cached ball tables")
    p.set_defaults(func=cmd_ball)

    p = sub.add_parser("qifit", parents=[common], help="fit quasi-isometry constants on a ball")
    p.add_argument("spec")
    p.add_argument("--r", type=int, default=4)
    p.add_argument("--pairs", action="store_true", help="include the per-pair report (json)")
    p.set_defaults(func=cmd_qifit)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except explore.CapExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CAP


if __name__ == "__main__":
    sys.exit(main())
