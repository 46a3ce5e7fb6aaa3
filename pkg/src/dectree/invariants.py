"""Numeric invariants of decorated trees.

Everything is exact integer arithmetic.  The per-edge branch sums are computed
once per tree with a two-pass sweep and cached on the tree value.  Node
multiplicities are read off that table; :func:`node_multiplicity` walks the
path weights directly and serves as an independent cross-check.
"""

from __future__ import annotations

import math
from typing import Iterable, Sequence

from .treecore import (
    DecoratedTree,
    Edge,
    InvariantBroken,
    TreeError,
    edge,
    other_end,
)


def _product(values: Iterable[int]) -> int:
    return math.prod(values)


def _near_summary(tree: DecoratedTree) -> dict[str, tuple[int, int]]:
    """Per node: how many decorations near it are 0, and the product of the rest."""
    cached = tree._memo.get("near")
    if cached is None:
        cached = {}
        for x in tree.nodes:
            values = [tree.near(x, y) for y in tree.neighbours(x)]
            cached[x] = (values.count(0), _product(v for v in values if v))
        tree._memo["near"] = cached
    return cached


def _off_product(tree: DecoratedTree, x: str, skip: Iterable[str]) -> int:
    """Product of decorations near ``x`` over edges not leading to ``skip``."""
    zeros, total = _near_summary(tree)[x]
    removed = 1
    for y in set(skip):
        q = tree.decorations.get((x, y))
        if q == 0:
            zeros -= 1
        elif q is not None:
            removed *= q
    return 0 if zeros else total // removed


def outer_product(tree: DecoratedTree, e: Edge, x: str) -> int:
    """Product of decorations near ``x`` of the edges at ``x`` other than ``e``."""
    tree.require_edge(e)
    return _off_product(tree, x, [other_end(e, x)])


def edge_determinant(tree: DecoratedTree, e: Edge) -> int:
    x, y = sorted(e)
    tree.require_edge(e)
    return tree.q(e, x) * tree.q(e, y) - outer_product(tree, e, x) * outer_product(tree, e, y)


# path weights


def _weights_from(tree: DecoratedTree, start: str, *, reduced: bool) -> dict[str, int]:
    """Path weight from ``start`` to every nonzero arrow.

    A reduced weight leaves out the edges at ``start`` itself.
    """
    key = ("weights", start, reduced)
    cached = tree._memo.get(key)
    if cached is not None:
        return cached
    weights: dict[str, int] = {}
    stack: list[tuple[str, str | None, int]] = [(start, None, 1)]
    while stack:
        node, parent, acc = stack.pop()
        if node != start and tree.is_arrow(node):
            if tree.f(node) != 0:
                weights[node] = acc * tree.f(node)
            continue
        for child in tree.neighbours(node):
            if child == parent:
                continue
            if node == start and reduced:
                factor = 1
            else:
                factor = _off_product(tree, node, [parent, child] if parent is not None else [child])
            stack.append((child, node, acc * factor))
    tree._memo[key] = weights
    return weights


def path_weight(tree: DecoratedTree, v: str, alpha: str) -> int:
    """f(alpha) times the decorations near the path from ``v`` on edges leaving it."""
    _require_nonzero_arrow(tree, alpha)
    return _weights_from(tree, v, reduced=False).get(alpha, 0)


def reduced_path_weight(tree: DecoratedTree, v: str, alpha: str) -> int:
    """Like :func:`path_weight` but ignoring the edges at ``v``."""
    _require_nonzero_arrow(tree, alpha)
    return _weights_from(tree, v, reduced=True).get(alpha, 0)


def _require_nonzero_arrow(tree: DecoratedTree, alpha: str) -> None:
    if not tree.is_arrow(alpha):
        raise TreeError(f"{alpha!r} is not an arrow")
    if tree.f(alpha) == 0:
        raise TreeError(f"arrow {alpha!r} is decorated by 0")


# branch sums


def _weighted_sum(tree: DecoratedTree, w: str, known: dict[tuple[str, str], int], skip: str | None = None) -> int:
    """Sum of ``known[(w, y)]`` over neighbours ``y != skip``, each weighted by the
    decorations near ``w`` on the edges to neither ``y`` nor ``skip``."""
    others = [y for y in tree.neighbours(w) if y != skip]
    near = [tree.decorations[(w, y)] for y in others]
    zeros = near.count(0)
    if zeros > 1:
        return 0
    if zeros == 1:
        hole = near.index(0)
        return _product(q for q in near if q) * known[(w, others[hole])]
    rest = _product(near)
    return sum(rest // q * known[(w, y)] for q, y in zip(near, others))


def _sums_through(tree: DecoratedTree, w: str, known: dict[tuple[str, str], int], u: str) -> int:
    """Branch sum of ``u`` through the edge ``{u, w}``, from the sums of ``w`` away from ``u``."""
    if tree.is_arrow(w):
        return tree.f(w)
    return _weighted_sum(tree, w, known, u)


def _all_sums_into(tree: DecoratedTree, w: str, known: dict[tuple[str, str], int]) -> dict[str, int]:
    """For every neighbour ``u`` of the vertex ``w``, the branch sum of ``u``
    through ``{u, w}``, given the branch sums of ``w`` through all its edges.

    Each value is the weighted sum at ``w`` with one term removed; this keeps
    high-valency vertices linear instead of quadratic.
    """
    around = tree.neighbours(w)
    near = {y: tree.near(w, y) for y in around}
    zeros = [y for y in around if near[y] == 0]
    rest = _product(q for q in near.values() if q)
    if not zeros:
        full = sum(rest // near[y] * known[(w, y)] for y in around)
        result = {}
        for u in around:
            value, remainder = divmod(full - rest // near[u] * known[(w, u)], near[u])
            if remainder:
                raise InvariantBroken(f"branch sum at {w} toward {u} is not integral")
            result[u] = value
        return result
    if len(zeros) == 1:
        (hole,) = zeros
        result = {u: rest // near[u] * known[(w, hole)] for u in around if u != hole}
        result[hole] = sum(rest // near[y] * known[(w, y)] for y in around if y != hole)
        return result
    return {u: _sums_through(tree, w, known, u) for u in around}


def _branch_table(tree: DecoratedTree) -> dict[tuple[str, str], int]:
    """``table[(u, w)]`` is the branch sum of ``u`` through the edge ``{u, w}``."""
    cached = tree._memo.get("branch")
    if cached is not None:
        return cached
    table: dict[tuple[str, str], int] = {}
    if tree.nodes:
        root = tree.nodes[0]
        order: list[tuple[str, str | None]] = []
        stack: list[tuple[str, str | None]] = [(root, None)]
        while stack:
            node, parent = stack.pop()
            order.append((node, parent))
            stack.extend((c, node) for c in tree.neighbours(node) if c != parent)
        # leaves first: sums looking away from the start node
        for node, parent in reversed(order):
            if parent is not None:
                table[(parent, node)] = _sums_through(tree, node, table, parent)
        # then from the start node outward: sums looking back toward it
        for node, parent in order:
            if tree.is_vertex(node):
                inward = _all_sums_into(tree, node, table)
                for child in tree.neighbours(node):
                    if child != parent:
                        table[(child, node)] = inward[child]
            elif parent is None:
                (child,) = tree.neighbours(node) or (None,)
                if child is not None:
                    table[(child, node)] = tree.f(node)
    tree._memo["branch"] = table
    return table


def branch_sum(tree: DecoratedTree, u: str, e: Edge) -> int:
    """Sum of reduced path weights from ``u`` to the nonzero arrows beyond ``e``."""
    tree.require_edge(e)
    return _branch_table(tree)[(u, other_end(e, u))]


def opposite_branch_sum(tree: DecoratedTree, u: str, e: Edge) -> int:
    """The branch sum taken from the other endpoint of ``e``."""
    return branch_sum(tree, other_end(e, u), e)


def arrows_beyond(tree: DecoratedTree, u: str, e: Edge) -> frozenset[str]:
    """Nonzero arrows whose path from ``u`` uses ``e``."""
    side = tree.far_side(u, e)
    return frozenset(a for a in tree.nonzero_arrows if a in side)


# multiplicities


def _require_multiplicity_node(tree: DecoratedTree, v: str) -> None:
    tree.require(v)
    if tree.is_arrow(v) and tree.f(v) != 0:
        raise TreeError(f"multiplicity is defined on vertices and 0-arrows, not on {v!r}")


def node_multiplicity(tree: DecoratedTree, v: str) -> int:
    """Sum of the path weights from ``v`` to every nonzero arrow."""
    _require_multiplicity_node(tree, v)
    return sum(_weights_from(tree, v, reduced=False).values())


def multiplicity_nodes(tree: DecoratedTree) -> tuple[str, ...]:
    """Vertices and 0-arrows, the nodes that carry a multiplicity."""
    return tuple(x for x in tree.nodes if tree.is_vertex(x) or tree.f(x) == 0)


def multiplicities(tree: DecoratedTree) -> dict[str, int]:
    """Every vertex and 0-arrow mapped to its multiplicity, read off the
    branch-sum table instead of walking the tree once per node."""
    cached = tree._memo.get("multiplicities")
    if cached is not None:
        return cached
    table = _branch_table(tree)
    result = {}
    for x in multiplicity_nodes(tree):
        result[x] = _weighted_sum(tree, x, table)
    tree._memo["multiplicities"] = result
    return result


def multiplicity(tree: DecoratedTree) -> int:
    values = multiplicities(tree)
    return -sum(n * (tree.valency(x) - 2) for x, n in values.items())


def arrow_gcd(tree: DecoratedTree, alpha: str) -> int:
    """gcd of f(alpha) and the branch sum seen from alpha, taken nonnegative."""
    _require_nonzero_arrow(tree, alpha)
    if tree.f(alpha) in (1, -1):
        return 1
    (w,) = tree.neighbours(alpha)
    return math.gcd(tree.f(alpha), branch_sum(tree, alpha, edge(alpha, w)))


def gcd_sum(tree: DecoratedTree) -> int:
    return sum(1 if tree.f(a) in (1, -1) else arrow_gcd(tree, a) for a in tree.nonzero_arrows)


def genus_and_delta(tree: DecoratedTree) -> tuple[int, int]:
    m, f = multiplicity(tree), gcd_sum(tree)
    if (m + f) % 2:
        raise InvariantBroken(f"M + F = {m} + {f} is odd")
    return (2 - m - f) // 2, (f - m) // 2


def genus(tree: DecoratedTree) -> int:
    return genus_and_delta(tree)[0]


def delta(tree: DecoratedTree) -> int:
    return genus_and_delta(tree)[1]


# paths


def _path_edges(path: Sequence[str]) -> set[Edge]:
    return {edge(a, b) for a, b in zip(path, path[1:])}


def _require_path(tree: DecoratedTree, path: Sequence[str]) -> None:
    if len(path) < 2:
        raise TreeError("the path needs at least one edge")
    for a, b in zip(path, path[1:]):
        tree.require_edge(edge(a, b))
    if len(set(path)) != len(path):
        raise TreeError("a path may not revisit a node")


def path_end_decoration(tree: DecoratedTree, path: Sequence[str], end: str) -> int:
    """Decoration of the path's end edge near the endpoint ``end``."""
    _require_path(tree, path)
    if end == path[0]:
        return tree.near(path[0], path[1])
    if end == path[-1]:
        return tree.near(path[-1], path[-2])
    raise TreeError(f"{end!r} is not an endpoint of the path")


def path_outer_product(tree: DecoratedTree, path: Sequence[str], u: str) -> int:
    """Product of decorations near ``u`` on edges at ``u`` that are not on the path."""
    on_path = _path_edges(path)
    return _product(tree.near(u, y) for y in tree.neighbours(u) if edge(u, y) not in on_path)


def path_interior_product(tree: DecoratedTree, path: Sequence[str]) -> int:
    return _product(path_outer_product(tree, path, u) for u in path[1:-1])


def path_determinant(tree: DecoratedTree, path: Sequence[str]) -> int:
    _require_path(tree, path)
    start, end = path[0], path[-1]
    return (
        path_end_decoration(tree, path, start) * path_end_decoration(tree, path, end)
        - path_interior_product(tree, path) ** 2
        * path_outer_product(tree, path, start)
        * path_outer_product(tree, path, end)
    )


def is_linear(tree: DecoratedTree, path: Sequence[str]) -> bool:
    return all(tree.valency(x) == 2 for x in path[1:-1])


# pairings and per-arrow multiplicities


def _arrow_set(tree: DecoratedTree, arrows: Iterable[str]) -> frozenset[str]:
    chosen = frozenset(arrows)
    for a in chosen:
        _require_nonzero_arrow(tree, a)
    return chosen


def pairing(tree: DecoratedTree, xs: Iterable[str], ys: Iterable[str]) -> int:
    """Sum of interior products times f(alpha) f(beta) over distinct pairs."""
    left, right = _arrow_set(tree, xs), _arrow_set(tree, ys)
    total = 0
    for a in sorted(left):
        for b in sorted(right):
            if a != b:
                total += path_interior_product(tree, tree.path(a, b)) * tree.f(a) * tree.f(b)
    return total


def arrow_pairing(tree: DecoratedTree, alpha: str) -> int:
    """Pairing of ``alpha`` with every other nonzero arrow."""
    return pairing(tree, [alpha], [a for a in tree.nonzero_arrows if a != alpha])


def arrow_multiplicity(tree: DecoratedTree, alpha: str) -> int:
    """The share of the multiplicity carried by one nonzero arrow."""
    _require_nonzero_arrow(tree, alpha)
    return -sum(
        path_weight(tree, v, alpha) * (tree.valency(v) - 2) for v in multiplicity_nodes(tree)
    )


def complement(tree: DecoratedTree, arrows: Iterable[str]) -> frozenset[str]:
    return frozenset(tree.nonzero_arrows) - frozenset(arrows)


def _exact_div(a: int, b: int, what: str) -> int:
    quotient, remainder = divmod(a, b)
    if remainder:
        raise InvariantBroken(f"{what}: {b} does not divide {a}")
    return quotient


def correction_multiplicity(tree: DecoratedTree, arrows: Iterable[str]) -> int:
    """Sum over alpha of I({alpha}, rest) - I({alpha}, rest) / f(alpha)."""
    chosen = _arrow_set(tree, arrows)
    rest = complement(tree, chosen)
    total = 0
    for a in sorted(chosen):
        pair = pairing(tree, [a], rest)
        total += pair - _exact_div(pair, tree.f(a), f"pairing of {a}")
    return total


def singleton_correction_multiplicity(tree: DecoratedTree, alpha: str) -> int:
    """Closed form for a single arrow: (f - 1) times its branch sum."""
    _require_nonzero_arrow(tree, alpha)
    (w,) = tree.neighbours(alpha)
    return (tree.f(alpha) - 1) * branch_sum(tree, alpha, edge(alpha, w))
