"""Command-line interface.

Every subcommand reads one JSON document (a path, or stdin when omitted
or ``-``) and writes one document to stdout. Exit status: 0 when the
answer is positive (feasible, built, found, verified, oracles agree), 1
when it is negative, 2 for usage, input or I/O errors. Diagnostics go to
stderr only.
"""

from __future__ import annotations

import argparse
import logging
import os
import sys
from collections.abc import Sequence

from . import __version__
from .construction import Infeasible, build_gf_spanning_forest, build_gg_forest
from .distribution import NotRepresentable, build_similar_tree, exact_distribution_tree
from .feasibility import (
    ColorBounds,
    InstanceTooLargeError,
    PreconditionError,
    check_gf_spanning_forest,
)
from .graph import GraphError
from .io import (
    DocumentError,
    ResultDocument,
    dumps,
    instance_to_dict,
    parse_instance,
    partition_groups,
    serialize,
    to_dot,
)
from .oracle import OracleBudgetError, brute_force_condition, brute_force_gf_exists
from .partition_search import (
    PROFILES,
    TreePartition,
    partition_similar_trees,
    random_complete_coloring,
    verify_partition,
)

BUDGET_ENV = "CHROMA_BUDGET_NODES"

log = logging.getLogger("chromaforest")


class UsageError(Exception):
    pass


def _read(path: str | None) -> str:
    if path in (None, "-"):
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _instance(args):
    graph, bounds, m = parse_instance(_read(args.input))
    if args.m is not None:
        m = args.m
    m = 1 if m is None else m
    if bounds is None:
        bounds = ColorBounds.from_maps(graph)
    return graph, bounds, m


def _emit(args, result: ResultDocument) -> None:
    if args.format == "dot":
        sys.stdout.write(to_dot(result.graph, forest=result.forest, partition=result.partition))
    else:
        sys.stdout.write(serialize(result))


def cmd_check(args) -> int:
    graph, bounds, m = _instance(args)
    verdict = check_gf_spanning_forest(graph, bounds, m)
    status = "feasible" if verdict.feasible else "infeasible"
    _emit(args, ResultDocument("check", status, graph, bounds, m, verdict=verdict))
    return 0 if verdict.feasible else 1


def cmd_build(args) -> int:
    graph, bounds, m = _instance(args)
    try:
        forest = build_gf_spanning_forest(graph, bounds, m)
    except Infeasible as exc:
        verdict = None
        try:
            verdict = check_gf_spanning_forest(graph, bounds, m)
        except InstanceTooLargeError:
            pass
        _emit(args, ResultDocument("build", "infeasible", graph, bounds, m, verdict=verdict, message=str(exc)))
        return 1
    _emit(args, ResultDocument("build", "built", graph, bounds, m, forest=forest))
    return 0


def cmd_gg_forest(args) -> int:
    graph, bounds, _ = _instance(args)
    try:
        forest = build_gg_forest(graph, bounds.lower(graph))
    except Infeasible as exc:
        _emit(args, ResultDocument("gg-forest", "infeasible", graph, bounds, message=str(exc)))
        return 1
    _emit(args, ResultDocument("gg-forest", "built", graph, bounds, forest=forest))
    return 0


def cmd_similar_tree(args) -> int:
    graph, _, _ = _instance(args)
    tree = build_similar_tree(graph)
    _emit(args, ResultDocument("similar-tree", "built", graph, forest=tree))
    return 0


def cmd_exact_tree(args) -> int:
    graph, _, _ = _instance(args)
    try:
        tree = exact_distribution_tree(graph)
    except NotRepresentable as exc:
        _emit(args, ResultDocument("exact-tree", "not_representable", graph, message=str(exc)))
        return 1
    _emit(args, ResultDocument("exact-tree", "built", graph, forest=tree))
    return 0


def _budget(args) -> int | None:
    if args.budget is not None:
        return args.budget
    env = os.environ.get(BUDGET_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"{BUDGET_ENV} must be an integer, got {env!r}") from None
    return None


def cmd_partition(args) -> int:
    graph, _, _ = _instance(args)
    budget = _budget(args)
    report = partition_similar_trees(
        graph,
        args.mode,
        budget,
        seed=args.seed,
        time_limit=args.time_limit,
        workers=args.workers,
        artifact_dir=args.artifact_dir,
    )
    log.info("search finished in %.3fs", report.elapsed)
    search = {
        "mode": args.mode,
        "outcome": report.outcome.value,
        "nodes_explored": report.nodes_explored,
        "budget": budget,
    }
    if args.mode == "heuristic":
        search["restarts"] = report.restarts
    if report.artifact is not None:
        search["artifact"] = str(report.artifact)
        print(f"counterexample written to {report.artifact}", file=sys.stderr)
    _emit(
        args,
        ResultDocument(
            "partition", report.outcome.value, graph, partition=report.partition, search=search, seed=args.seed
        ),
    )
    return 0 if report.found else 1


def cmd_verify(args) -> int:
    graph, groups = partition_groups(_read(args.input))
    result = verify_partition(graph, groups)
    partition = None
    if result.ok:
        partition = TreePartition.from_assignment(
            graph, [t for _, t in sorted((i, t) for t, g in enumerate(groups) for i in g)], len(groups)
        )
    _emit(
        args,
        ResultDocument(
            "verify", "verified" if result.ok else "invalid", graph, partition=partition, verification=result
        ),
    )
    if not result.ok:
        print(f"invalid partition: {result.reason}", file=sys.stderr)
    return 0 if result.ok else 1


def cmd_gen(args) -> int:
    try:
        graph = random_complete_coloring(args.order, args.colors, args.seed, args.profile)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    if args.format == "dot":
        sys.stdout.write(to_dot(graph))
    else:
        sys.stdout.write(dumps(instance_to_dict(graph)))
    return 0


def cmd_oracle_diff(args) -> int:
    graph, bounds, m = _instance(args)
    checker = check_gf_spanning_forest(graph, bounds, m).feasible
    try:
        build_gf_spanning_forest(graph, bounds, m)
        builder = True
    except Infeasible:
        builder = False
    enumerated = brute_force_gf_exists(graph, bounds, m)
    literal = brute_force_condition(graph, bounds, m)
    answers = {"checker": checker, "builder": builder, "enumeration": enumerated, "condition": literal}
    agree = len(set(answers.values())) == 1
    oracle = dict(answers, agree=agree)
    status = "agree" if agree else "disagree"
    _emit(args, ResultDocument("oracle-diff", status, graph, bounds, m, oracle=oracle))
    if not agree:
        print(f"oracle disagreement: {answers}", file=sys.stderr)
    return 0 if agree else 1


COMMANDS = {
    "check": (cmd_check, "decide existence of a (g,f)-chromatic spanning forest"),
    "build": (cmd_build, "construct a (g,f)-chromatic spanning forest"),
    "gg-forest": (cmd_gg_forest, "construct a forest with exactly g(c) edges per color"),
    "similar-tree": (cmd_similar_tree, "spanning tree with a similar color distribution"),
    "exact-tree": (cmd_exact_tree, "spanning tree with the same color distribution"),
    "partition": (cmd_partition, "partition K_2n into n similar spanning trees"),
    "verify": (cmd_verify, "verify a claimed tree partition"),
    "gen": (cmd_gen, "generate a random colored complete graph"),
    "oracle-diff": (cmd_oracle_diff, "compare checker and builder with brute force"),
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="chromaforest", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    for name, (func, help_text) in COMMANDS.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        p.add_argument("--format", choices=("json", "dot"), default="json")
        p.add_argument("--seed", type=int, default=0)
        if name == "gen":
            p.add_argument("--order", type=int, required=True)
            p.add_argument("--colors", type=int, required=True)
            p.add_argument("--profile", choices=PROFILES, default="uniform")
            continue
        p.add_argument("input", nargs="?", default="-", help="document path (default: stdin)")
        p.add_argument("--m", type=int, default=None, help="number of components (default: document m, else 1)")
        if name == "partition":
            p.add_argument("--mode", choices=("exact", "heuristic"), default="exact")
            p.add_argument("--budget", type=int, default=None, help=f"node budget (env {BUDGET_ENV})")
            p.add_argument("--time-limit", type=float, default=None)
            p.add_argument("--workers", type=int, default=1)
            p.add_argument("--artifact-dir", default=".", help="where exhausted instances are saved")
    return parser


def run_cli(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (
        DocumentError,
        GraphError,
        PreconditionError,
        InstanceTooLargeError,
        OracleBudgetError,
        UsageError,
        OSError,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
