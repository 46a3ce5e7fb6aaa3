"""Reversal at a central node, the decomposition at the root, and the genus
formula that ties them together."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass

from .invariants import branch_sum, delta, genus, multiplicity_nodes, outer_product
from .rooted import RootedTree, degree, is_central
from .treecore import DecoratedTree, Edge, InvariantBroken, TreeError, check_valid, edge, fresh_id, other_end


def phi(tree: DecoratedTree, x: str, y: str) -> int:
    """Product of the decorations leaving the path from ``x`` to ``y``, taken
    at every path node except ``x``."""
    if x == y:
        raise TreeError("phi needs two distinct nodes")
    path = tree.path(x, y)
    total = 1
    for i in range(1, len(path)):
        u = path[i]
        on_path = {path[i - 1], path[i + 1] if i + 1 < len(path) else None}
        total *= math.prod(tree.near(u, w) for w in tree.neighbours(u) if w not in on_path)
    return total


def beyond(tree: DecoratedTree, x: str, e: Edge) -> frozenset[str]:
    """Vertices and 0-arrows whose path from ``x`` uses ``e``."""
    side = tree.far_side(x, e)
    return frozenset(y for y in multiplicity_nodes(tree) if y in side)


def is_out_pair(rooted: RootedTree, x: str, e: Edge) -> bool:
    """Whether ``e`` leads from ``x`` away from the root."""
    tree = rooted.tree
    tree.require_edge(e)
    return x in tree.path(rooted.root, other_end(e, x))


def out_pairs(rooted: RootedTree) -> list[tuple[str, Edge]]:
    tree = rooted.tree
    parents = tree.parents_from(rooted.root)
    return [
        (x, edge(x, y))
        for x in tree.nodes
        for y in tree.neighbours(x)
        if parents[y] == x
    ]


def branch_sum_formula_sides(rooted: RootedTree, x: str, e: Edge) -> tuple[int, int]:
    """``(p(x, e), 1 + sum of phi(x, y) * (valency(y) - 2) over y beyond e)``."""
    tree = rooted.tree
    rhs = 1 + sum(phi(tree, x, y) * (tree.valency(y) - 2) for y in sorted(beyond(tree, x, e)))
    return branch_sum(tree, x, e), rhs


def _require_unit_decorations(tree: DecoratedTree) -> None:
    bad = {a: f for a, f in tree.arrows.items() if f not in (0, 1)}
    if bad:
        raise TreeError(f"arrow decorations must be 0 or 1, found {bad}")


def branch_sum_formula_check(rooted: RootedTree, x: str, e: Edge) -> bool:
    rooted.require_root()
    _require_unit_decorations(rooted.tree)
    if not is_out_pair(rooted, x, e):
        raise TreeError(f"({x}, {set(e)}) is not an out-pair")
    lhs, rhs = branch_sum_formula_sides(rooted, x, e)
    return lhs == rhs


def reverse(tree: DecoratedTree, eta: str) -> DecoratedTree:
    """Flip the decoration near each vertex on its edge toward ``eta``.

    Every other decoration is kept.  Next to ``eta`` the new value is Q - q.
    Further out, each new value is fixed by the one on the next edge toward
    ``eta``, so that every edge between two vertices other than ``eta``
    changes the sign of its determinant.
    """
    tree.require(eta)
    if not is_central(tree, eta):
        raise TreeError(f"{eta!r} is not central")
    sums: dict[str, int] = {}  # vertex -> old plus new decoration toward eta
    outers: dict[str, int] = {}
    changes: dict[tuple[str, str], int] = {}
    queue = deque((y, eta) for y in tree.neighbours(eta))
    while queue:
        v, toward = queue.popleft()
        if not tree.is_vertex(v):
            continue
        e = edge(v, toward)
        old = tree.q(e, v)
        outer = outer_product(tree, e, v)
        if toward == eta:
            total = outer
        else:
            y = tree.q(e, toward)
            parent_outer = outers[toward]
            if y <= 0 or parent_outer % y:
                raise InvariantBroken(f"{y} does not divide {parent_outer} at {toward}")
            if sums[toward] % parent_outer:
                raise InvariantBroken(f"{parent_outer} does not divide {sums[toward]} at {toward}")
            total = outer * (parent_outer // y) ** 2 * (sums[toward] // parent_outer)
        if outer and total % outer:
            raise InvariantBroken(f"{outer} does not divide {total} at {v}")
        sums[v], outers[v] = total, outer
        changes[(v, toward)] = total - old
        queue.extend((w, v) for w in tree.neighbours(v) if w != toward)
    return check_valid(tree.with_decorations(changes))


@dataclass(frozen=True)
class RootPiece:
    """One branch at the root, capped by a 0-arrow ``anchor`` and reversed there."""

    tree: DecoratedTree
    anchor: str
    neighbour: str


def root_decompose(rooted: RootedTree) -> list[RootPiece]:
    rooted.require_root()
    tree, root = rooted.tree, rooted.root
    around = tree.neighbours(root)
    if not around:
        raise TreeError("the root has no edges")
    cut = tree.incident(root)
    pieces = []
    for v in around:
        part = tree.restricted(tree.component(v, cut))
        anchor = fresh_id(part.nodes, f"{root}.{v}")
        capped = DecoratedTree.build(
            part.vertices,
            {**part.arrows, anchor: 0},
            list(part.edge_records()) + [(v, anchor, tree.near(v, root), 1)],
        )
        pieces.append(RootPiece(reverse(check_valid(capped), anchor), anchor, v))
    return pieces


@dataclass(frozen=True)
class GenusLedger:
    genus: int
    degree: int
    piece_deltas: tuple[int, ...]
    rhs: int

    @property
    def balanced(self) -> bool:
        return self.genus == self.rhs


def genus_ledger(rooted: RootedTree) -> GenusLedger:
    rooted.require_root()
    _require_unit_decorations(rooted.tree)
    d = degree(rooted)
    deltas = tuple(delta(p.tree) for p in root_decompose(rooted))
    rhs = (d - 1) * (d - 2) // 2 - sum(deltas)
    return GenusLedger(genus(rooted.tree), d, deltas, rhs)


def genus_formula_check(rooted: RootedTree) -> tuple[int, int]:
    """``(g, (d-1)(d-2)/2 - sum of the pieces' delta)``; the two agree."""
    ledger = genus_ledger(rooted)
    return ledger.genus, ledger.rhs
