"""The four local reductions that leave M and F unchanged, and a
normalization that applies them until none fits."""

from __future__ import annotations

from typing import Callable

from .invariants import outer_product
from .treecore import DecoratedTree, Edge, TreeError, endpoints, format_edge, other_end


def _without(tree: DecoratedTree, drop: set[str], extra_edges=()) -> DecoratedTree:
    return DecoratedTree.build(
        (v for v in tree.vertices if v not in drop),
        {a: f for a, f in tree.arrows.items() if a not in drop},
        [r for r in tree.edge_records() if r[0] not in drop and r[1] not in drop] + list(extra_edges),
    )


def dead_end_problem(tree: DecoratedTree, e: Edge) -> str | None:
    tree.require_edge(e)
    x, y = endpoints(e)
    zero = [a for a in (x, y) if tree.is_arrow(a) and tree.f(a) == 0]
    if not zero:
        return f"{format_edge(e)} is not a dead end (no 0-arrow endpoint)"
    alpha = zero[0]
    v = other_end(e, alpha)
    if not tree.is_vertex(v):
        return f"{format_edge(e)} joins two arrows"
    if tree.q(e, v) != 1:
        return f"decoration near {v} is {tree.q(e, v)}, not 1"
    return None


def delete_dead_end(tree: DecoratedTree, e: Edge) -> DecoratedTree:
    """Remove a 0-arrow whose edge is decorated by 1 near its vertex."""
    problem = dead_end_problem(tree, e)
    if problem:
        raise TreeError(f"cannot delete dead end: {problem}")
    (alpha,) = [a for a in e if tree.is_arrow(a)]
    return _without(tree, {alpha})


def pending_vertex_problem(tree: DecoratedTree, e: Edge, pending: str) -> str | None:
    tree.require_edge(e)
    if pending not in e:
        return f"{pending!r} is not an endpoint of {format_edge(e)}"
    v = other_end(e, pending)
    if not (tree.is_vertex(pending) and tree.is_vertex(v)):
        return f"both endpoints of {format_edge(e)} must be vertices"
    if tree.valency(pending) != 1:
        return f"{pending} has valency {tree.valency(pending)}, not 1"
    if tree.q(e, v) != 1:
        return f"decoration near {v} is {tree.q(e, v)}, not 1"
    return None


def delete_pending_vertex(tree: DecoratedTree, e: Edge, pending: str | None = None) -> DecoratedTree:
    """Remove a valency-1 vertex whose edge is decorated by 1 at the other end.

    When ``pending`` is omitted, the first endpoint (canonical order) for
    which the rule applies is removed.
    """
    candidates = [pending] if pending is not None else list(endpoints(e))
    problems = []
    for t in candidates:
        problem = pending_vertex_problem(tree, e, t)
        if problem is None:
            return _without(tree, {t})
        problems.append(problem)
    raise TreeError("cannot delete pending vertex: " + "; ".join(problems))


def smooth_vertex(tree: DecoratedTree, v: str) -> DecoratedTree:
    """Replace a valency-2 vertex and its two edges by one edge."""
    tree.require(v)
    if not tree.is_vertex(v) or tree.valency(v) != 2:
        raise TreeError(f"cannot smooth {v!r}: it must be a vertex of valency 2")
    u1, u2 = tree.neighbours(v)
    return _without(tree, {v}, [(u1, u2, tree.near(u1, v), tree.near(u2, v))])


def contraction_problem(tree: DecoratedTree, e: Edge) -> str | None:
    tree.require_edge(e)
    v1, v2 = endpoints(e)
    if not (tree.is_vertex(v1) and tree.is_vertex(v2)):
        return f"both endpoints of {format_edge(e)} must be vertices"
    q1, q2 = tree.q(e, v1), tree.q(e, v2)
    big1, big2 = outer_product(tree, e, v1), outer_product(tree, e, v2)
    if (q1, q2) == (big2, big1):
        return None
    if q1 * q2 - big1 * big2 != 0:
        return f"determinant of {format_edge(e)} is {q1 * q2 - big1 * big2}, not 0"
    return f"determinant of {format_edge(e)} is 0 but decorations ({q1}, {q2}) are the negatives of ({big2}, {big1})"


def contract_edge(tree: DecoratedTree, e: Edge) -> DecoratedTree:
    """Merge the endpoints of a contractible determinant-zero edge.

    The merged vertex keeps the smaller of the two ids.
    """
    problem = contraction_problem(tree, e)
    if problem:
        raise TreeError(f"cannot contract: {problem}")
    v1, v2 = endpoints(e)
    moved = [
        (v1, x, tree.near(w, x), tree.near(x, w))
        for w in (v1, v2)
        for x in tree.neighbours(w)
        if x not in (v1, v2)
    ]
    return DecoratedTree.build(
        (v for v in tree.vertices if v != v2),
        tree.arrows,
        [r for r in tree.edge_records() if not {r[0], r[1]} & {v1, v2}] + moved,
    )


def _first_dead_end(tree: DecoratedTree) -> DecoratedTree | None:
    for alpha in tree.zero_arrows:
        for w in tree.neighbours(alpha):
            e = frozenset((alpha, w))
            if dead_end_problem(tree, e) is None:
                return delete_dead_end(tree, e)
    return None


def _first_pending_vertex(tree: DecoratedTree) -> DecoratedTree | None:
    for t in sorted(tree.vertices):
        if tree.valency(t) == 1:
            (v,) = tree.neighbours(t)
            e = frozenset((t, v))
            if pending_vertex_problem(tree, e, t) is None:
                return delete_pending_vertex(tree, e, t)
    return None


def _first_smoothing(tree: DecoratedTree) -> DecoratedTree | None:
    for v in sorted(tree.vertices):
        if tree.valency(v) == 2:
            return smooth_vertex(tree, v)
    return None


def _first_contraction(tree: DecoratedTree) -> DecoratedTree | None:
    for e in tree.edges:
        if contraction_problem(tree, e) is None:
            return contract_edge(tree, e)
    return None


RULES: tuple[Callable[[DecoratedTree], DecoratedTree | None], ...] = (
    _first_dead_end,
    _first_pending_vertex,
    _first_smoothing,
    _first_contraction,
)


def simplify_once(tree: DecoratedTree) -> DecoratedTree | None:
    """Apply the highest-priority applicable rule once, or return None."""
    for rule in RULES:
        result = rule(tree)
        if result is not None:
            return result
    return None


def normalize(tree: DecoratedTree) -> DecoratedTree:
    """Apply the reductions in fixed priority until none applies.

    Each step removes at least one node, so this terminates.  The fixpoint
    reached depends on the rule order; only M and F are guaranteed to agree
    with the input.
    """
    while True:
        step = simplify_once(tree)
        if step is None:
            return tree
        tree = step
