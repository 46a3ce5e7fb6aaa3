"""Command-line front end: ``dectree <command> ...``.

Exit codes: 0 on success, 1 when the input is not acceptable for the
requested operation (invalid tree, unknown edge, failing property suite),
2 for malformed invocations or unreadable files.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Sequence

from . import genus as gen
from . import harness
from . import invariants as inv
from . import rooted as rt
from . import simplify as simp
from . import split as spl
from .textio import parse, serialize, to_dot
from .treecore import DecoratedTree, TreeError, edge, validate


class UsageError(Exception):
    pass


def _read(path: str, *, check: bool = True) -> DecoratedTree | rt.RootedTree:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None
    return parse(text, check=check)


def _plain(obj: DecoratedTree | rt.RootedTree) -> DecoratedTree:
    return obj.tree if isinstance(obj, rt.RootedTree) else obj


def _write(path: str, obj: DecoratedTree | rt.RootedTree) -> None:
    try:
        Path(path).write_text(serialize(obj))
    except OSError as exc:
        raise UsageError(f"cannot write {path}: {exc.strerror or exc}") from None


def _emit(out: str | None, obj: DecoratedTree | rt.RootedTree) -> None:
    if out is None:
        sys.stdout.write(serialize(obj))
    else:
        _write(out, obj)


def _prefix(args: argparse.Namespace, suffix: str) -> str:
    if args.output:
        return args.output
    if args.file == "-":
        return suffix
    return str(Path(args.file).with_suffix("")) + "." + suffix


def _id_list(text: str) -> list[str]:
    return [part.strip() for part in text.split(",") if part.strip()]


# commands


def cmd_validate(args: argparse.Namespace) -> int:
    obj = _read(args.file, check=False)
    problems = validate(_plain(obj))
    if not problems:
        print("valid")
        return 0
    for problem in problems:
        print(problem)
    return 1


def cmd_invariants(args: argparse.Namespace) -> int:
    obj = _read(args.file)
    tree = _plain(obj)
    m, f = inv.multiplicity(tree), inv.gcd_sum(tree)
    g, d = inv.genus_and_delta(tree)
    print(f"M: {m}")
    print(f"F: {f}")
    print(f"g: {g}")
    print(f"delta: {d}")
    if isinstance(obj, rt.RootedTree):
        print(f"root: {obj.root}")
        print(f"deg: {rt.degree(obj)}")
    if args.per_node:
        for x in inv.multiplicity_nodes(tree):
            print(f"N[{x}]: {inv.node_multiplicity(tree, x)}")
    return 0


def cmd_simplify(args: argparse.Namespace) -> int:
    _emit(args.output, simp.normalize(_plain(_read(args.file))))
    return 0


def _split_args(args: argparse.Namespace, tree: DecoratedTree):
    """Resolve ``--edge`` or ``--vertex/--part`` into the call to make."""
    if args.edge is not None:
        ends = _id_list(args.edge)
        if len(ends) != 2:
            raise UsageError("--edge takes two endpoint ids, e.g. --edge b,c")
        e = edge(*ends)
        tree.require_edge(e)
        return "edge", e
    if args.part is None:
        raise UsageError("--vertex needs --part 'N1,N2;N3'")
    groups = args.part.split(";")
    if len(groups) != 2:
        raise UsageError("--part takes two neighbour lists separated by ';'")
    return "vertex", (args.vertex, (_id_list(groups[0]), _id_list(groups[1])))


def _run_split(args: argparse.Namespace, at_edge: Callable, at_vertex: Callable, suffix: str) -> int:
    tree = _plain(_read(args.file))
    how, where = _split_args(args, tree)
    outcome = at_edge(tree, where) if how == "edge" else at_vertex(tree, *where)
    prefix = _prefix(args, suffix)
    names = [f"{prefix}.1.dtree", f"{prefix}.2.dtree"]
    for name, piece in zip(names, outcome.trees):
        _write(name, piece)
    print(f"degree: {outcome.degree}")
    if outcome.kind is not None:
        print(f"type: {outcome.kind}")
    print(f"first: {names[0]}")
    print(f"second: {names[1]}")
    print(f"new_nodes: {outcome.new_nodes[0]},{outcome.new_nodes[1]}")
    return 0


def cmd_split(args: argparse.Namespace) -> int:
    return _run_split(args, spl.split_at_edge, spl.split_at_vertex, "split")


def cmd_ensplit(args: argparse.Namespace) -> int:
    return _run_split(args, spl.ensplit_at_edge, spl.ensplit_at_vertex, "ensplit")


def _need_root(obj: DecoratedTree | rt.RootedTree, what: str) -> rt.RootedTree:
    if not isinstance(obj, rt.RootedTree):
        raise TreeError(f"{what} needs a 'root' line in the input")
    return obj


def cmd_subtree(args: argparse.Namespace) -> int:
    rooted = _need_root(_read(args.file), "subtree")
    arrows = _id_list(args.arrows)
    if not arrows:
        raise UsageError("--arrows needs at least one arrow id")
    _emit(args.output, rt.subtree(rooted, arrows))
    return 0


def cmd_decompose(args: argparse.Namespace) -> int:
    rooted = _need_root(_read(args.file), "decompose")
    pieces = gen.root_decompose(rooted)
    ledger = gen.genus_ledger(rooted)
    prefix = _prefix(args, "piece")
    for i, piece in enumerate(pieces, start=1):
        name = f"{prefix}.{i}.dtree"
        _write(name, piece.tree)
        print(f"piece {i}: {name} (branch at {piece.neighbour}, anchor {piece.anchor}, delta {ledger.piece_deltas[i - 1]})")
    print(f"g: {ledger.genus}")
    print(f"deg: {ledger.degree}")
    print(f"deltas: {','.join(str(x) for x in ledger.piece_deltas)}")
    print(f"rhs: {ledger.rhs}")
    print(f"balanced: {'yes' if ledger.balanced else 'no'}")
    return 0 if ledger.balanced else 1


def cmd_check(args: argparse.Namespace) -> int:
    if args.list:
        for name, suite in harness.SUITES.items():
            print(f"{name}: {suite.about}")
        return 0
    if args.suite is None:
        raise UsageError("--suite is required (use --list to see them)")
    if args.suite not in harness.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; use --list")
    report = harness.run_suite(args.suite, harness.GenParams(seed=args.seed), args.count)
    sys.stdout.write(report.to_text())
    return 0 if report.passed else 1


def cmd_dot(args: argparse.Namespace) -> int:
    sys.stdout.write(to_dot(_read(args.file)))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dectree", description="Decorated trees: invariants, splitting, checks.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def command(name: str, handler: Callable, help_text: str, *, file: bool = True) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, description=help_text)
        if file:
            p.add_argument("file", metavar="FILE", help="a .dtree file, or - for stdin")
        p.set_defaults(handler=handler)
        return p

    command("validate", cmd_validate, "list every violated well-formedness clause")
    p = command("invariants", cmd_invariants, "print M, F, g, delta and, for rooted input, deg")
    p.add_argument("--per-node", action="store_true", help="also print N for every vertex and 0-arrow")
    p = command("simplify", cmd_simplify, "apply the four simplification rules until none applies")
    p.add_argument("-o", "--output", help="write here instead of stdout")
    for name, handler, help_text in (
        ("split", cmd_split, "split at an edge or a vertex, writing two .dtree files"),
        ("ensplit", cmd_ensplit, "EN-split at an edge or a vertex, writing two .dtree files"),
    ):
        p = command(name, handler, help_text)
        where = p.add_mutually_exclusive_group(required=True)
        where.add_argument("--edge", metavar="A,B", help="endpoint ids of the edge")
        where.add_argument("--vertex", metavar="V", help="vertex to widen first")
        p.add_argument("--part", metavar="N1,N2;N3", help="neighbours of V for each new vertex")
        p.add_argument("-o", "--output", metavar="PREFIX", help="output prefix (default: FILE without suffix)")
    p = command("subtree", cmd_subtree, "the subtree spanned by the root and the chosen arrows")
    p.add_argument("--arrows", required=True, metavar="A1,A2", help="nonzero arrows to keep")
    p.add_argument("-o", "--output", help="write here instead of stdout")
    p = command("decompose", cmd_decompose, "cut at the root, write the reversed pieces, print the genus ledger")
    p.add_argument("-o", "--output", metavar="PREFIX", help="output prefix (default: FILE without suffix)")
    p = command("check", cmd_check, "run a randomized property suite", file=False)
    p.add_argument("--suite", help="suite name")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=10_000)
    p.add_argument("--list", action="store_true", help="list the suites and exit")
    command("dot", cmd_dot, "print Graphviz DOT text")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"dectree {args.command}: {exc}", file=sys.stderr)
        return 2
    except TreeError as exc:
        print(f"dectree {args.command}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
