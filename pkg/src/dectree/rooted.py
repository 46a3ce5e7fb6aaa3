"""Roots, pseudo-roots, central nodes, arrow-spanned subtrees and the
decomposition corrections that go with them."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

from .invariants import (
    arrow_gcd,
    branch_sum,
    correction_multiplicity,
    edge_determinant,
    node_multiplicity,
)
from .treecore import (
    DecoratedTree,
    InvariantBroken,
    TreeError,
    edge,
    fresh_id,
    is_connected_set,
)


class VertexClass(enum.Enum):
    ROOT = "root"
    PSEUDO_ROOT_ONLY = "pseudo-root only"
    NEITHER = "neither"


class DeterminantSign(enum.Enum):
    NEGATIVE = "negative"
    POSITIVE = "positive"
    NONZERO = "nonzero"  # no zero determinant, but both signs occur
    MIXED = "mixed"  # some vertex-vertex edge has determinant zero
    VACUOUS = "vacuous"  # no edge joins two vertices


def _off_path_decorations(tree: DecoratedTree, root: str) -> Iterable[tuple[str, list[int]]]:
    """For each vertex other than ``root``, decorations near it on edges leading away from ``root``."""
    parents = tree.parents_from(root)
    for v in sorted(tree.vertices):
        if v != root:
            yield v, [tree.near(v, y) for y in tree.neighbours(v) if y != parents[v]]


def pseudo_root_failures(tree: DecoratedTree, v: str) -> list[str]:
    """Reasons ``v`` is not a pseudo-root; empty when it is one."""
    tree.require(v)
    if not tree.is_vertex(v):
        return [f"{v!r} is an arrow"]
    reasons = [
        f"decoration near {v} toward {y} is {tree.near(v, y)}"
        for y in tree.neighbours(v)
        if tree.near(v, y) != 1
    ]
    for w, decorations in _off_path_decorations(tree, v):
        if sum(1 for d in decorations if d != 1) > 1:
            reasons.append(f"{w} has several outward decorations different from 1: {decorations}")
    return reasons


def classify_vertex(tree: DecoratedTree, v: str) -> VertexClass:
    if pseudo_root_failures(tree, v):
        return VertexClass.NEITHER
    if all(d >= 1 for _, ds in _off_path_decorations(tree, v) for d in ds):
        return VertexClass.ROOT
    return VertexClass.PSEUDO_ROOT_ONLY


def find_roots(tree: DecoratedTree) -> tuple[frozenset[str], frozenset[str]]:
    """``(roots, pseudo_roots)``; every root is also a pseudo-root."""
    kinds = {v: classify_vertex(tree, v) for v in tree.vertices}
    roots = frozenset(v for v, k in kinds.items() if k is VertexClass.ROOT)
    pseudo = frozenset(v for v, k in kinds.items() if k is not VertexClass.NEITHER)
    return roots, pseudo


@dataclass(frozen=True)
class RootedTree:
    """A tree together with a validated pseudo-root (possibly a full root)."""

    tree: DecoratedTree
    root: str

    def __post_init__(self) -> None:
        reasons = pseudo_root_failures(self.tree, self.root)
        if reasons:
            raise TreeError(f"{self.root!r} is not a pseudo-root: " + "; ".join(reasons))

    @property
    def is_root(self) -> bool:
        return classify_vertex(self.tree, self.root) is VertexClass.ROOT

    def require_root(self) -> None:
        if not self.is_root:
            raise TreeError(f"{self.root!r} is a pseudo-root but not a root")


# central nodes and the order


def satisfies_plus(tree: DecoratedTree, path: Sequence[str]) -> bool:
    """Outward decorations at the path's last node are all positive, at most one above 1."""
    if len(path) < 2:
        raise TreeError("the condition needs a path with at least two nodes")
    last, before = path[-1], path[-2]
    outward = [tree.near(last, y) for y in tree.neighbours(last) if y != before]
    return all(d >= 1 for d in outward) and sum(1 for d in outward if d > 1) <= 1


def is_central(tree: DecoratedTree, x: str) -> bool:
    parents = tree.parents_from(x)
    for v in tree.vertices:
        if v == x:
            continue
        last, before = v, parents[v]
        outward = [tree.near(last, y) for y in tree.neighbours(last) if y != before]
        if any(d < 1 for d in outward) or sum(1 for d in outward if d > 1) > 1:
            return False
    return True


def central_set(tree: DecoratedTree) -> frozenset[str]:
    centre = frozenset(x for x in tree.nodes if is_central(tree, x))
    if not is_connected_set(tree, centre):
        raise InvariantBroken(f"central set {sorted(centre)} is not connected")
    return centre


def precedes(rooted: RootedTree, x: str, y: str) -> bool:
    """Whether ``x <= y``: ``x`` lies on the path from the root to ``y``."""
    return x in rooted.tree.path(rooted.root, y)


# arrow-spanned subtrees


def subtree(rooted: RootedTree, arrows: Iterable[str]) -> RootedTree:
    """The pseudo-rooted tree spanned by the root-to-arrow paths of ``arrows``.

    At each kept vertex, pruned edges are replaced by one 0-arrow whose
    decoration is their product (omitted when that product is 1).
    """
    tree, root = rooted.tree, rooted.root
    chosen = sorted(set(arrows))
    if not chosen:
        raise TreeError("the arrow set must be nonempty")
    for a in chosen:
        if not tree.is_arrow(a) or tree.f(a) == 0:
            raise TreeError(f"{a!r} is not an arrow with nonzero decoration")
    kept: set[str] = set()
    for a in chosen:
        kept.update(tree.path(root, a))
    vertices = {v for v in kept if tree.is_vertex(v)}
    arrow_map = {a: tree.f(a) for a in chosen}
    records = [r for r in tree.edge_records() if r[0] in kept and r[1] in kept]
    taken = set(tree.nodes)
    for v in sorted(vertices):
        pruned = 1
        for y in tree.neighbours(v):
            if y not in kept:
                pruned *= tree.near(v, y)
        if pruned != 1:
            stub = fresh_id(taken, f"{v}.b0")
            taken.add(stub)
            arrow_map[stub] = 0
            records.append((v, stub, pruned, 1))
    return RootedTree(DecoratedTree.build(vertices, arrow_map, records), root)


def correction_delta(rooted: RootedTree, arrows: Iterable[str]) -> int:
    return _half_correction(rooted, arrows, sign=-1)


def correction_genus(rooted: RootedTree, arrows: Iterable[str]) -> int:
    return _half_correction(rooted, arrows, sign=1)


def _half_correction(rooted: RootedTree, arrows: Iterable[str], sign: int) -> int:
    chosen = sorted(set(arrows))
    tree = rooted.tree
    base = correction_multiplicity(tree, chosen)
    if chosen:
        inner = subtree(rooted, chosen).tree
        drift = sum(arrow_gcd(tree, a) - arrow_gcd(inner, a) for a in chosen)
    else:
        drift = 0
    total = base + sign * drift
    if total % 2:
        raise InvariantBroken(f"correction {base} {'+' if sign > 0 else '-'} {drift} is odd")
    return total // 2


def singleton_correction_delta(tree: DecoratedTree, alpha: str) -> int:
    return _singleton_half(tree, alpha, sign=-1)


def singleton_correction_genus(tree: DecoratedTree, alpha: str) -> int:
    return _singleton_half(tree, alpha, sign=1)


def _singleton_half(tree: DecoratedTree, alpha: str, sign: int) -> int:
    f = tree.f(alpha)
    if f == 0:
        raise TreeError(f"arrow {alpha!r} is decorated by 0")
    (w,) = tree.neighbours(alpha)
    p = branch_sum(tree, alpha, edge(alpha, w))
    total = (f - 1) * p + sign * (arrow_gcd(tree, alpha) - abs(f))
    if total % 2:
        raise InvariantBroken(f"singleton correction at {alpha} is odd")
    return total // 2


# determinants and degree


def determinant_sign(tree: DecoratedTree) -> DeterminantSign:
    dets = [
        edge_determinant(tree, edge(x, y))
        for x, y, _, _ in tree.edge_records()
        if tree.is_vertex(x) and tree.is_vertex(y)
    ]
    if not dets:
        return DeterminantSign.VACUOUS
    if all(d < 0 for d in dets):
        return DeterminantSign.NEGATIVE
    if all(d > 0 for d in dets):
        return DeterminantSign.POSITIVE
    if all(d != 0 for d in dets):
        return DeterminantSign.NONZERO
    return DeterminantSign.MIXED


def degree(rooted: RootedTree) -> int:
    """The multiplicity of the root."""
    return node_multiplicity(rooted.tree, rooted.root)
