"""Decorated trees: the data model, structural queries and validation.

A decorated tree has vertices and arrows (leaves carrying an integer ``f``).
Every edge carries two integer decorations, one near each endpoint.  Trees are
immutable values; every operation in the package builds a new tree.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

Edge = frozenset  # an unordered pair of node ids


class TreeError(ValueError):
    """A domain error: bad input, or an operation whose precondition fails."""


class InvariantBroken(AssertionError):
    """An internal consistency check failed; this indicates a bug, not bad input."""


def edge(x: str, y: str) -> Edge:
    if x == y:
        raise TreeError(f"an edge needs two distinct endpoints, got {x!r} twice")
    return frozenset((x, y))


def endpoints(e: Edge) -> tuple[str, str]:
    """The two endpoints of ``e`` in canonical (sorted) order."""
    x, y = sorted(e)
    return x, y


def other_end(e: Edge, x: str) -> str:
    if x not in e:
        raise TreeError(f"{x!r} is not an endpoint of {format_edge(e)}")
    (y,) = e - {x}
    return y


def format_edge(e: Edge) -> str:
    return "{" + ",".join(endpoints(e)) + "}"


@dataclass(frozen=True)
class Violation:
    """One failed well-formedness clause, naming the offending node or edge."""

    clause: str
    where: str
    message: str

    def __str__(self) -> str:
        return f"clause ({self.clause}) at {self.where}: {self.message}"


CLAUSE_TEXT = {
    "i": "nodes must form a tree with disjoint vertex and arrow sets",
    "ii": "every arrow has valency 1",
    "iii": "arrow decorations are integers",
    "iv": "edge decorations are integers",
    "v": "the decoration of an edge near an arrow is 1",
    "vi": "decorations near a vertex are pairwise coprime",
}


@dataclass(frozen=True, eq=False)
class DecoratedTree:
    """An immutable decorated tree.

    ``decorations[(x, y)]`` is the decoration of the edge ``{x, y}`` near ``x``;
    both orientations are always present.  Construct through :meth:`build` or
    :func:`make_tree` rather than directly.
    """

    vertices: frozenset[str]
    arrows: Mapping[str, int]
    decorations: Mapping[tuple[str, str], int]
    _adjacency: Mapping[str, tuple[str, ...]] = field(repr=False, compare=False)

    @classmethod
    def build(
        cls,
        vertices: Iterable[str],
        arrows: Mapping[str, int],
        edges: Iterable[tuple[str, str, int, int]],
    ) -> "DecoratedTree":
        """Assemble a tree from ``(x, y, q_near_x, q_near_y)`` edge records.

        Only the raw structure is checked here (unknown endpoints, repeated
        edges); the decorated-tree clauses are reported by :func:`validate`.
        """
        verts = frozenset(vertices)
        arrow_map = dict(arrows)
        overlap = verts & arrow_map.keys()
        if overlap:
            raise TreeError(f"ids used as both vertex and arrow: {sorted(overlap)}")
        known = verts | arrow_map.keys()
        decorations: dict[tuple[str, str], int] = {}
        adjacency: dict[str, list[str]] = {x: [] for x in known}
        for x, y, qx, qy in edges:
            for node in (x, y):
                if node not in known:
                    raise TreeError(f"edge {x}-{y} mentions unknown node {node!r}")
            if x == y:
                raise TreeError(f"loop at {x!r} is not allowed in a tree")
            if (x, y) in decorations:
                raise TreeError(f"edge {format_edge(edge(x, y))} given twice")
            decorations[(x, y)] = int(qx)
            decorations[(y, x)] = int(qy)
            adjacency[x].append(y)
            adjacency[y].append(x)
        frozen_adj = {x: tuple(sorted(ns)) for x, ns in adjacency.items()}
        return cls(
            verts,
            MappingProxyType({a: int(v) for a, v in sorted(arrow_map.items())}),
            MappingProxyType(decorations),
            MappingProxyType(frozen_adj),
        )

    @cached_property
    def _memo(self) -> dict:
        # per-value cache for derived quantities; never observable
        return {}

    # basic queries

    @cached_property
    def nodes(self) -> tuple[str, ...]:
        """All node ids in canonical order."""
        return tuple(sorted(self.vertices | self.arrows.keys()))

    @cached_property
    def edges(self) -> tuple[Edge, ...]:
        pairs = {frozenset(k) for k in self.decorations}
        return tuple(sorted(pairs, key=endpoints))

    @cached_property
    def nonzero_arrows(self) -> tuple[str, ...]:
        return tuple(a for a, f in self.arrows.items() if f != 0)

    @cached_property
    def zero_arrows(self) -> tuple[str, ...]:
        return tuple(a for a, f in self.arrows.items() if f == 0)

    def is_empty(self) -> bool:
        return not self.vertices and not self.arrows

    def is_vertex(self, x: str) -> bool:
        return x in self.vertices

    def is_arrow(self, x: str) -> bool:
        return x in self.arrows

    def __contains__(self, x: object) -> bool:
        return x in self._adjacency

    def require(self, x: str) -> None:
        if x not in self._adjacency:
            raise TreeError(f"unknown node {x!r}")

    def require_edge(self, e: Edge) -> None:
        x, y = endpoints(e)
        if (x, y) not in self.decorations:
            raise TreeError(f"{format_edge(e)} is not an edge of the tree")

    def neighbours(self, x: str) -> tuple[str, ...]:
        self.require(x)
        return self._adjacency[x]

    def incident(self, x: str) -> tuple[Edge, ...]:
        return tuple(edge(x, y) for y in self.neighbours(x))

    def valency(self, x: str) -> int:
        return len(self.neighbours(x))

    def q(self, e: Edge, x: str) -> int:
        """Decoration of ``e`` near its endpoint ``x``."""
        y = other_end(e, x)
        try:
            return self.decorations[(x, y)]
        except KeyError:
            raise TreeError(f"{format_edge(e)} is not an edge of the tree") from None

    def near(self, x: str, y: str) -> int:
        """Decoration of the edge ``{x, y}`` near ``x``."""
        try:
            return self.decorations[(x, y)]
        except KeyError:
            raise TreeError(f"{{{x},{y}}} is not an edge of the tree") from None

    def f(self, alpha: str) -> int:
        try:
            return self.arrows[alpha]
        except KeyError:
            raise TreeError(f"{alpha!r} is not an arrow") from None

    def edge_records(self) -> Iterator[tuple[str, str, int, int]]:
        """Edges as ``(x, y, q_near_x, q_near_y)`` with ``x < y``."""
        for e in self.edges:
            x, y = endpoints(e)
            yield x, y, self.decorations[(x, y)], self.decorations[(y, x)]

    # paths

    def parents_from(self, root: str) -> dict[str, str | None]:
        parents: dict[str, str | None] = {root: None}
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for y in self._adjacency[x]:
                if y not in parents:
                    parents[y] = x
                    queue.append(y)
        return parents

    def path(self, x: str, y: str) -> tuple[str, ...]:
        """The unique simple path from ``x`` to ``y`` as a node sequence."""
        self.require(x)
        self.require(y)
        parents = self.parents_from(y)
        if x not in parents:
            raise TreeError(f"{x!r} and {y!r} are not connected")
        walk = [x]
        while walk[-1] != y:
            walk.append(parents[walk[-1]])  # type: ignore[arg-type]
        return tuple(walk)

    def component(self, start: str, removed: Iterable[Edge] = ()) -> frozenset[str]:
        """Nodes reachable from ``start`` without crossing the ``removed`` edges."""
        cut = set(removed)
        seen = {start}
        queue = deque([start])
        while queue:
            x = queue.popleft()
            for y in self._adjacency[x]:
                if y not in seen and edge(x, y) not in cut:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def far_side(self, u: str, e: Edge) -> frozenset[str]:
        """Nodes reached from ``u`` through ``e`` (the component across ``e``)."""
        return self.component(other_end(e, u), removed=[e])

    # derived trees

    def restricted(self, keep: Iterable[str]) -> "DecoratedTree":
        """The induced subtree on ``keep`` with decorations unchanged."""
        kept = set(keep)
        return DecoratedTree.build(
            (v for v in self.vertices if v in kept),
            {a: f for a, f in self.arrows.items() if a in kept},
            (r for r in self.edge_records() if r[0] in kept and r[1] in kept),
        )

    def with_decorations(self, changes: Mapping[tuple[str, str], int]) -> "DecoratedTree":
        """A copy with some near-decorations replaced, keyed ``(near, far)``."""
        for key in changes:
            if key not in self.decorations:
                raise TreeError(f"{key[0]}-{key[1]} is not an edge of the tree")
        merged = {**self.decorations, **changes}
        return DecoratedTree.build(
            self.vertices,
            self.arrows,
            (
                (x, y, merged[(x, y)], merged[(y, x)])
                for x, y, _, _ in self.edge_records()
            ),
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, DecoratedTree):
            return NotImplemented
        return (
            self.vertices == other.vertices
            and dict(self.arrows) == dict(other.arrows)
            and dict(self.decorations) == dict(other.decorations)
        )

    def __hash__(self) -> int:
        return hash((self.vertices, tuple(self.arrows.items()), tuple(self.edge_records())))

    def __repr__(self) -> str:
        return (
            f"DecoratedTree(vertices={sorted(self.vertices)}, arrows={dict(self.arrows)}, "
            f"edges={list(self.edge_records())})"
        )


def make_tree(
    vertices: Iterable[str] = (),
    arrows: Mapping[str, int] | None = None,
    edges: Iterable[tuple] = (),
) -> DecoratedTree:
    """Build and validate a tree, raising :class:`TreeError` on any violation.

    Edge records are ``(x, y)``, ``(x, y, q_near_x)`` or ``(x, y, q_near_x, q_near_y)``;
    omitted decorations default to 1.
    """
    records = []
    for rec in edges:
        x, y, *qs = rec
        qs = list(qs) + [1] * (2 - len(qs))
        records.append((x, y, qs[0], qs[1]))
    tree = DecoratedTree.build(vertices, arrows or {}, records)
    check_valid(tree)
    return tree


EMPTY = DecoratedTree.build((), {}, ())


def validate(tree: DecoratedTree) -> list[Violation]:
    """Every violated clause of the decorated-tree definition; empty means valid."""
    problems: list[Violation] = []
    nodes = tree.nodes
    if nodes:
        if len(tree.edges) != len(nodes) - 1:
            problems.append(
                Violation("i", "tree", f"{len(nodes)} nodes need {len(nodes) - 1} edges, found {len(tree.edges)}")
            )
        reached = tree.component(nodes[0])
        if len(reached) != len(nodes):
            missing = sorted(set(nodes) - reached)
            problems.append(Violation("i", missing[0], f"not connected to {nodes[0]!r}"))
    for alpha, f in tree.arrows.items():
        if tree.valency(alpha) != 1:
            problems.append(Violation("ii", alpha, f"arrow has valency {tree.valency(alpha)}"))
        if not isinstance(f, int):
            problems.append(Violation("iii", alpha, f"decoration {f!r} is not an integer"))
    for (x, y), qv in tree.decorations.items():
        if not isinstance(qv, int):
            problems.append(Violation("iv", f"{x}-{y}", f"decoration {qv!r} is not an integer"))
        if tree.is_arrow(x) and qv != 1:
            problems.append(Violation("v", f"{x}-{y}", f"decoration near arrow {x!r} is {qv}, not 1"))
    for v in sorted(tree.vertices):
        # units are coprime to everything, so only the other decorations need pairing
        loaded = [y for y in tree.neighbours(v) if tree.near(v, y) not in (1, -1)]
        for y1, y2 in combinations(loaded, 2):
            q1, q2 = tree.near(v, y1), tree.near(v, y2)
            if math.gcd(q1, q2) != 1:
                problems.append(
                    Violation("vi", v, f"decorations {q1} (toward {y1}) and {q2} (toward {y2}) share a factor")
                )
    return problems


def check_valid(tree: DecoratedTree) -> DecoratedTree:
    problems = validate(tree)
    if problems:
        raise TreeError("; ".join(str(p) for p in problems))
    return tree


def fresh_id(tree_ids: Iterable[str], wanted: str) -> str:
    """``wanted`` if unused, otherwise ``wanted`` with a numeric suffix."""
    taken = tree_ids if isinstance(tree_ids, (set, frozenset)) else set(tree_ids)
    if wanted not in taken:
        return wanted
    n = 1
    while f"{wanted}~{n}" in taken:
        n += 1
    return f"{wanted}~{n}"


def is_connected_set(tree: DecoratedTree, subset: Iterable[str]) -> bool:
    """Whether every path between two members stays inside the set.

    In a tree this is the same as the induced subgraph being connected.
    """
    members = set(subset)
    if not members:
        return True
    start = min(members)
    seen = {start}
    queue = deque([start])
    while queue:
        x = queue.popleft()
        for y in tree.neighbours(x):
            if y in members and y not in seen:
                seen.add(y)
                queue.append(y)
    return seen == members


def _node_label(tree: DecoratedTree, x: str) -> tuple:
    return ("arrow", tree.f(x)) if tree.is_arrow(x) else ("vertex",)


def _encode(tree: DecoratedTree, top: str) -> tuple:
    """Decoration-aware encoding of the tree hanging from ``top``."""
    order: list[tuple[str, str | None]] = []
    stack: list[tuple[str, str | None]] = [(top, None)]
    while stack:
        node, parent = stack.pop()
        order.append((node, parent))
        stack.extend((c, node) for c in tree.neighbours(node) if c != parent)
    codes: dict[str, tuple] = {}
    for node, parent in reversed(order):
        branches = sorted(
            (tree.near(node, c), tree.near(c, node), codes[c])
            for c in tree.neighbours(node)
            if c != parent
        )
        codes[node] = (_node_label(tree, node), tuple(branches))
    return codes[top]


def _centres(tree: DecoratedTree) -> list[str]:
    remaining = {x: tree.valency(x) for x in tree.nodes}
    layer = [x for x, d in remaining.items() if d <= 1]
    left = len(remaining)
    while left > 2 and layer:
        left -= len(layer)
        for x in layer:
            remaining.pop(x)
        nxt = []
        for x in layer:
            for y in tree.neighbours(x):
                if y in remaining:
                    remaining[y] -= 1
                    if remaining[y] == 1:
                        nxt.append(y)
        layer = nxt
    return sorted(remaining)


def canonical_key(tree: DecoratedTree, root: str | None = None) -> tuple:
    """A key equal for two trees exactly when they are isomorphic.

    The isomorphism must preserve node kinds and all decorations; node ids are
    ignored.  With ``root`` given, the isomorphism must also match roots.
    """
    if tree.is_empty():
        return ()
    if root is not None:
        return ("rooted", _encode(tree, root))
    return ("free", min(_encode(tree, c) for c in _centres(tree)))


def isomorphic(a: DecoratedTree, b: DecoratedTree, root_a: str | None = None, root_b: str | None = None) -> bool:
    return canonical_key(a, root_a) == canonical_key(b, root_b)
