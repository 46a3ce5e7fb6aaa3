"""Slow reference evaluator written straight from the definitions.

The evaluator never touches the caching, branch tables or shortcuts of
the package; it only reads vertices, arrows and decorations off a tree.  Meant
for trees with a handful of nodes.
"""

from __future__ import annotations

import math
from itertools import combinations

from dectree import invariants as inv


class Naive:
    def __init__(self, vertices, arrows, decorations):
        self.vertices = set(vertices)
        self.arrows = dict(arrows)  # arrow -> f
        self.q = dict(decorations)  # (x, y) -> decoration of {x, y} near x
        self.edges = {frozenset(k) for k in self.q}

    @classmethod
    def of(cls, tree):
        return cls(tree.vertices, tree.arrows, tree.decorations)

    def nodes(self):
        return self.vertices | set(self.arrows)

    def incident(self, x):
        return [e for e in self.edges if x in e]

    def other(self, e, x):
        (y,) = e - {x}
        return y

    def Q(self, e, x):
        total = 1
        for e2 in self.incident(x):
            if e2 != e:
                total *= self.q[(x, self.other(e2, x))]
        return total

    def det(self, e):
        x, y = sorted(e)
        return self.q[(x, y)] * self.q[(y, x)] - self.Q(e, x) * self.Q(e, y)

    def path(self, x, y):
        """Node sequence of the unique path, found by trying every simple walk."""

        def walk(trail):
            if trail[-1] == y:
                return trail
            for e in self.incident(trail[-1]):
                z = self.other(e, trail[-1])
                if z not in trail:
                    found = walk(trail + [z])
                    if found:
                        return found
            return None

        return walk([x])

    def off_path_product(self, path, skip_start):
        """Decorations near path nodes on edges touching the path but not on it."""
        on_path = {frozenset(p) for p in zip(path, path[1:])}
        total = 1
        for e in self.edges:
            if e in on_path:
                continue
            for x in e:
                if x in path and not (skip_start and x == path[0]):
                    total *= self.q[(x, self.other(e, x))]
        return total

    def nonzero_arrows(self):
        return sorted(a for a, f in self.arrows.items() if f != 0)

    def x(self, v, alpha):
        return self.arrows[alpha] * self.off_path_product(self.path(v, alpha), False)

    def x_hat(self, v, alpha):
        return self.arrows[alpha] * self.off_path_product(self.path(v, alpha), True)

    def N(self, v):
        return sum(self.x(v, a) for a in self.nonzero_arrows() if a != v)

    def valency(self, x):
        return len(self.incident(x))

    def M(self):
        counted = [x for x in self.nodes() if x in self.vertices or self.arrows[x] == 0]
        return -sum(self.N(v) * (self.valency(v) - 2) for v in counted)

    def p(self, u, e):
        w = self.other(e, u)
        return sum(self.x_hat(u, a) for a in self.nonzero_arrows() if a != u and w in self.path(u, a))

    def F(self):
        total = 0
        for a in self.nonzero_arrows():
            (e,) = self.incident(a)
            total += math.gcd(self.arrows[a], self.p(a, e))
        return total

    def path_det(self, path):
        """q at both ends minus Q*(path) squared times Q at both ends."""
        on_path = {frozenset(p) for p in zip(path, path[1:])}

        def off(x):
            total = 1
            for e in self.incident(x):
                if e not in on_path:
                    total *= self.q[(x, self.other(e, x))]
            return total

        interior = math.prod(off(x) for x in path[1:-1])
        q_ends = self.q[(path[0], path[1])] * self.q[(path[-1], path[-2])]
        return q_ends - interior**2 * off(path[0]) * off(path[-1])

    def pairs(self):
        return combinations(sorted(self.nodes()), 2)


def assert_matches(t):
    """Check every fast invariant of ``t`` against the slow evaluator."""
    n = Naive.of(t)
    for x in inv.multiplicity_nodes(t):
        assert inv.node_multiplicity(t, x) == n.N(x), x
    assert inv.multiplicities(t) == {x: n.N(x) for x in inv.multiplicity_nodes(t)}
    assert inv.multiplicity(t) == n.M()
    assert inv.gcd_sum(t) == n.F()
    for e in t.edges:
        assert inv.edge_determinant(t, e) == n.det(e)
        for u in e:
            assert inv.branch_sum(t, u, e) == n.p(u, e)
    for x, y in combinations(t.nodes, 2):
        path = t.path(x, y)
        assert inv.path_determinant(t, path) == n.path_det(list(path))
