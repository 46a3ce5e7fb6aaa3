"""Cutting a tree in two: determinant-zero edge insertion, splitting and
EN-splitting at an edge or at a vertex, and good-pair certificates."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable

from .invariants import branch_sum, node_multiplicity
from .treecore import (
    DecoratedTree,
    Edge,
    InvariantBroken,
    TreeError,
    check_valid,
    edge,
    endpoints,
    format_edge,
    fresh_id,
)


@dataclass(frozen=True)
class SplitOutcome:
    """The two trees produced by a split, in a fixed order.

    ``first`` is the piece holding the endpoint that sorts first.  ``kind`` is
    the EN-split type in {-1, 0, 1}; it is None for ordinary splits.
    """

    first: DecoratedTree
    second: DecoratedTree
    degree: int
    site: str
    endpoints: tuple[str, str]
    kind: int | None = None
    new_nodes: tuple[str, str] = field(default=("", ""))

    @property
    def trees(self) -> tuple[DecoratedTree, DecoratedTree]:
        return self.first, self.second


@dataclass(frozen=True)
class GoodPairReport:
    ok: bool
    reasons: tuple[str, ...]
    zero_arrow: str | None = None

    def __bool__(self) -> bool:
        return self.ok


def is_good_pair(tree: DecoratedTree, z: str, v: str) -> GoodPairReport:
    """Check that ``z`` is a vertex hanging off ``v`` carrying one 0-arrow,
    some unit arrows, and a balancing decoration toward ``v``."""
    reasons: list[str] = []
    if z not in tree or v not in tree or v not in tree.neighbours(z):
        return GoodPairReport(False, (f"{{{z},{v}}} is not an edge",))
    if not tree.is_vertex(z):
        reasons.append(f"{z} is not a vertex")
        return GoodPairReport(False, tuple(reasons))
    zeros = [y for y in tree.neighbours(z) if y != v and tree.is_arrow(y) and tree.f(y) == 0]
    if len(zeros) != 1:
        reasons.append(f"{z} has {len(zeros)} adjacent 0-arrows besides {v}, expected exactly one")
    alpha0 = zeros[0] if len(zeros) == 1 else None
    for y in tree.neighbours(z):
        if y in (v, alpha0):
            continue
        if not tree.is_arrow(y) or tree.f(y) != 1 or tree.near(z, y) != 1:
            reasons.append(f"neighbour {y} of {z} is not a unit arrow with decoration 1")
    e = edge(z, v)
    balance = tree.q(e, z) * (tree.valency(z) - 2) + branch_sum(tree, z, e)
    if balance != 0:
        reasons.append(f"balance q*(valency-2) + p is {balance}, not 0")
    ok = not reasons
    if ok:
        if node_multiplicity(tree, alpha0) != 0 or node_multiplicity(tree, z) != 0:
            raise InvariantBroken(f"good pair ({z},{v}) with nonzero multiplicity")
    return GoodPairReport(ok, tuple(reasons), alpha0)


# determinant-zero edge insertion


def _neighbour_part(tree: DecoratedTree, v: str, part: Iterable) -> set[str]:
    names = set()
    for item in part:
        if isinstance(item, frozenset):
            if v not in item:
                raise TreeError(f"{format_edge(item)} is not incident to {v}")
            (item,) = item - {v}
        names.add(item)
    return names


def insert_zero_edge(
    tree: DecoratedTree, v: str, parts: tuple[Iterable, Iterable]
) -> tuple[DecoratedTree, Edge]:
    """Replace ``v`` by two vertices joined by a new contractible edge.

    ``parts`` splits the edges at ``v`` into two groups, given as neighbour
    ids or edges; either group may be empty.  Neighbours in the first group
    move to ``<v>.1`` and the rest to ``<v>.2``.
    """
    tree.require(v)
    if not tree.is_vertex(v):
        raise TreeError(f"{v!r} is not a vertex")
    first, second = (_neighbour_part(tree, v, p) for p in parts)
    around = set(tree.neighbours(v))
    if first & second:
        raise TreeError(f"the two groups share {sorted(first & second)}")
    if first | second != around:
        missing, extra = around - (first | second), (first | second) - around
        raise TreeError(
            f"groups must cover the neighbours of {v} exactly"
            f" (missing {sorted(missing)}, not neighbours {sorted(extra)})"
        )
    taken = set(tree.nodes) - {v}
    v1 = fresh_id(taken, f"{v}.1")
    taken.add(v1)
    v2 = fresh_id(taken, f"{v}.2")
    a1 = math.prod(tree.near(v, x) for x in first)
    a2 = math.prod(tree.near(v, x) for x in second)
    records = [r for r in tree.edge_records() if v not in (r[0], r[1])]
    records.append((v1, v2, a2, a1))
    for side, group in ((v1, first), (v2, second)):
        for x in sorted(group):
            records.append((side, x, tree.near(v, x), tree.near(x, v)))
    result = DecoratedTree.build((tree.vertices - {v}) | {v1, v2}, tree.arrows, records)
    return check_valid(result), edge(v1, v2)


# splitting


def _sides(tree: DecoratedTree, e: Edge) -> tuple[str, str, frozenset[str], frozenset[str]]:
    tree.require_edge(e)
    v1, v2 = endpoints(e)
    return v1, v2, tree.component(v1, [e]), tree.component(v2, [e])


def split_at_edge(tree: DecoratedTree, e: Edge) -> SplitOutcome:
    """Cut ``e`` and cap each side with a good-pair vertex carrying a 0-arrow
    and as many unit arrows as the degree."""
    v1, v2, side1, side2 = _sides(tree, e)
    p1, p2 = branch_sum(tree, v1, e), branch_sum(tree, v2, e)
    d = math.gcd(p1, p2)
    if d == 0:
        a1 = a2 = 1
        x1 = x2 = 0
    else:
        a1, a2 = p1 // d, p2 // d
        x1, x2 = -a2, -a1
    pieces = []
    caps = []
    for i, (v, side, a, x) in enumerate(((v1, side1, a1, x1), (v2, side2, a2, x2)), start=1):
        part = tree.restricted(side)
        taken = set(part.nodes)
        z = fresh_id(taken, f"{v}.z{i}")
        taken.add(z)
        arrows = dict(part.arrows)
        records = list(part.edge_records())
        records.append((v, z, tree.q(e, v), x))
        for j in range(d + 1):
            name = fresh_id(taken, f"{v}.a{i}.{j}")
            taken.add(name)
            arrows[name] = 0 if j == 0 else 1
            records.append((z, name, a if j == 0 else 1, 1))
        pieces.append(check_valid(DecoratedTree.build(part.vertices | {z}, arrows, records)))
        caps.append(z)
    return SplitOutcome(pieces[0], pieces[1], d, format_edge(e), (v1, v2), None, (caps[0], caps[1]))


def split_at_vertex(tree: DecoratedTree, v: str, parts: tuple[Iterable, Iterable]) -> SplitOutcome:
    widened, e = insert_zero_edge(tree, v, parts)
    outcome = split_at_edge(widened, e)
    return _relabel_site(outcome, f"{v}")


def _relabel_site(outcome: SplitOutcome, site: str) -> SplitOutcome:
    return SplitOutcome(
        outcome.first, outcome.second, outcome.degree, site, outcome.endpoints, outcome.kind, outcome.new_nodes
    )


def en_type(p1: int, p2: int) -> int:
    """0 when an even number of the two sums vanish, else the sign of their total."""
    zeros = (p1 == 0) + (p2 == 0)
    if zeros % 2 == 0:
        return 0
    return 1 if p1 + p2 > 0 else -1


def ensplit_at_edge(tree: DecoratedTree, e: Edge) -> SplitOutcome:
    """Cut ``e`` and cap each side with one arrow decorated by that side's
    branch sum through ``e``."""
    v1, v2, side1, side2 = _sides(tree, e)
    p1, p2 = branch_sum(tree, v1, e), branch_sum(tree, v2, e)
    pieces = []
    caps = []
    for i, (v, side, p) in enumerate(((v1, side1, p1), (v2, side2, p2)), start=1):
        part = tree.restricted(side)
        alpha = fresh_id(part.nodes, f"{v}.a{i}")
        arrows = {**part.arrows, alpha: p}
        records = list(part.edge_records()) + [(v, alpha, tree.q(e, v), 1)]
        pieces.append(check_valid(DecoratedTree.build(part.vertices, arrows, records)))
        caps.append(alpha)
    return SplitOutcome(
        pieces[0], pieces[1], math.gcd(p1, p2), format_edge(e), (v1, v2), en_type(p1, p2), (caps[0], caps[1])
    )


def ensplit_at_vertex(tree: DecoratedTree, v: str, parts: tuple[Iterable, Iterable]) -> SplitOutcome:
    widened, e = insert_zero_edge(tree, v, parts)
    return _relabel_site(ensplit_at_edge(widened, e), f"{v}")
