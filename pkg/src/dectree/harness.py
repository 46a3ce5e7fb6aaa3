"""Random tree generation and executable identity suites.

Each suite draws trees from :func:`generate`, filters them to the suite's
hypotheses, and checks an identity.  A failing tree is shrunk by applying
simplifications and pruning leaves while the failure persists, then
reported in ``.dtree`` form.
"""

from __future__ import annotations

import dataclasses
import math
import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Callable, Iterable, Iterator

from . import genus as gen
from . import invariants as inv
from . import rooted as rt
from . import simplify as simp
from . import split as spl
from .textio import serialize
from .treecore import (
    DecoratedTree,
    Edge,
    TreeError,
    check_valid,
    edge,
    endpoints,
    fresh_id,
    is_connected_set,
    isomorphic,
    other_end,
    validate,
)

Instance = DecoratedTree | rt.RootedTree


@dataclass(frozen=True)
class GenParams:
    """Knobs for :func:`random_tree`.

    ``arrow_decoration_set`` restricts f to the given values; when None, f is
    drawn from ``[-decoration_range, decoration_range]``.  With
    ``require_rooted`` the vertex ``v0`` is a root, or only a pseudo-root
    when ``allow_pseudo_root`` is set.
    """

    seed: int = 0
    max_nodes: int = 10
    decoration_range: int = 6
    arrow_decoration_set: tuple[int, ...] | None = None
    require_rooted: bool = False
    require_negative_determinants: bool = False
    require_positive_determinants: bool = False
    force_f_nonnegative: bool = False
    allow_pseudo_root: bool = False
    retries: int = 50

    def __post_init__(self) -> None:
        if self.max_nodes < 1 or self.decoration_range < 1 or self.retries < 1:
            raise TreeError("max_nodes, decoration_range and retries must all be at least 1")
        if self.arrow_decoration_set is not None and not self.arrow_decoration_set:
            raise TreeError("arrow_decoration_set is empty")

    def but(self, **changes) -> "GenParams":
        return dataclasses.replace(self, **changes)


# generation


def _coprime_to(value: int, others: Iterable[int]) -> bool:
    return all(math.gcd(value, o) == 1 for o in others)


def nearest_coprime(value: int, others: Iterable[int], *, floor: int = 1) -> int:
    """The integer of the same sign as ``value`` (positive for 0) closest to
    it that is coprime to every element of ``others``.

    Magnitudes below ``floor`` are not considered; ties go to the smaller
    magnitude.
    """
    others = list(others)
    if _coprime_to(value, others) and abs(value) >= floor:
        return value
    sign = -1 if value < 0 else 1
    size = abs(value)
    for step in range(1, size + max(floor, 1) + 2):
        for candidate in (size - step, size + step):
            if candidate >= max(floor, 1) and _coprime_to(sign * candidate, others):
                return sign * candidate
    return sign  # unreachable: magnitude 1 is coprime to everything


def _decoration(rng: random.Random, bound: int) -> int:
    # bias toward 1 so that roots, central nodes and rule sites show up
    roll = rng.random()
    if roll < 0.35:
        return 1
    if roll < 0.4:
        return -1
    if roll < 0.43:
        return 0
    return rng.choice([k for k in range(-bound, bound + 1) if k not in (-1, 0, 1)] or [1])


def _arrow_value(rng: random.Random, params: GenParams) -> int:
    if params.arrow_decoration_set is not None:
        value = rng.choice(params.arrow_decoration_set)
    else:
        roll = rng.random()
        if roll < 0.3:
            value = 1
        elif roll < 0.45:
            value = 0
        else:
            value = rng.randint(-params.decoration_range, params.decoration_range)
    return abs(value) if params.force_f_nonnegative else value


def _shape(rng: random.Random, params: GenParams) -> tuple[list[str], list[str], list[tuple[str, str]]]:
    """Vertex ids, arrow ids and edges (parent first) of a random tree."""
    total = rng.randint(1, max(1, params.max_nodes))
    vertex_count = rng.randint(1, max(1, total - 1)) if total > 1 else 1
    vertices = [f"v{i}" for i in range(vertex_count)]
    links = [(vertices[rng.randrange(i)], vertices[i]) for i in range(1, vertex_count)]
    arrows = [f"a{j}" for j in range(total - vertex_count)]
    links += [(rng.choice(vertices), a) for a in arrows]
    return vertices, arrows, links


def _free_decorations(
    rng: random.Random, params: GenParams, vertices: list[str], links: list[tuple[str, str]]
) -> dict[tuple[str, str], int]:
    near: dict[tuple[str, str], int] = {}
    around: dict[str, list[str]] = {v: [] for v in vertices}
    for x, y in links:
        around[x].append(y)
        if y in around:
            around[y].append(x)
    for v in vertices:
        chosen: list[int] = []
        for y in around[v]:
            value = nearest_coprime(_decoration(rng, params.decoration_range), chosen, floor=0)
            near[(v, y)] = value
            chosen.append(value)
    return near


def _rooted_decorations(
    rng: random.Random, params: GenParams, vertices: list[str], links: list[tuple[str, str]]
) -> dict[tuple[str, str], int]:
    """Decorations making ``v0`` a root (or a pseudo-root)."""
    bound = params.decoration_range
    children: dict[str, list[str]] = {v: [] for v in vertices}
    parent: dict[str, str] = {}
    for x, y in links:
        children[x].append(y)
        parent[y] = x
    near: dict[tuple[str, str], int] = {}
    for v in vertices:
        outward = children[v]
        for y in outward:
            near[(v, y)] = 1
        if v == "v0":
            continue
        special = None
        if outward and rng.random() < 0.6:
            special = rng.choice(outward)
            if params.allow_pseudo_root and rng.random() < 0.4:
                value = rng.choice([k for k in range(-bound, bound + 1) if k != 1])
            else:
                value = rng.randint(2, max(2, bound))
            near[(v, special)] = value
        fixed = [near[(v, special)]] if special is not None else []
        near[(v, parent[v])] = nearest_coprime(_decoration(rng, bound), fixed, floor=0)
    return near


def _fix_determinants(
    rng: random.Random, params: GenParams, vertices: list[str], links: list[tuple[str, str]], near: dict
) -> None:
    """Top-down pass moving each inward decoration until the edge to the
    parent has the requested determinant sign."""
    negative = params.require_negative_determinants
    vertex_set = set(vertices)
    around: dict[str, list[str]] = {v: [] for v in vertices}
    for x, y in links:
        around[x].append(y)
        if y in vertex_set:
            around[y].append(x)

    def outer(v: str, skip: str) -> int:
        return math.prod(near[(v, y)] for y in around[v] if y != skip)

    for x, y in links:  # parents are listed before their children
        if y not in vertex_set:
            continue
        q_parent = near[(x, y)]
        big_parent, big_child = outer(x, y), outer(y, x)
        target = big_parent * big_child
        others = [near[(y, w)] for w in around[y] if w != x]
        current = near[(y, x)]
        if negative and q_parent * current - target < 0:
            continue
        if not negative and q_parent * current - target > 0:
            continue
        slack = rng.randint(0, params.decoration_range)
        if negative:
            value = (target - 1) // q_parent - slack
            while not _coprime_to(value, others):
                value -= 1
        else:
            value = target // q_parent + 1 + slack
            while not _coprime_to(value, others):
                value += 1
        near[(y, x)] = value


def generate(rng: random.Random, params: GenParams) -> Instance:
    """One random tree drawn with ``rng``; see :func:`random_tree`."""
    signed = params.require_negative_determinants or params.require_positive_determinants
    if signed and (not params.require_rooted or params.allow_pseudo_root):
        raise TreeError("determinant-sign generation needs a full root")
    for _ in range(max(1, params.retries)):
        if not params.require_rooted and rng.random() < 0.03:
            tree = DecoratedTree.build(
                (), {"a0": _arrow_value(rng, params), "a1": _arrow_value(rng, params)}, [("a0", "a1", 1, 1)]
            )
            return check_valid(tree)
        vertices, arrows, links = _shape(rng, params)
        if params.require_rooted:
            near = _rooted_decorations(rng, params, vertices, links)
            if signed:
                _fix_determinants(rng, params, vertices, links, near)
        else:
            near = _free_decorations(rng, params, vertices, links)
        records = [(x, y, near.get((x, y), 1), near.get((y, x), 1)) for x, y in links]
        tree = DecoratedTree.build(vertices, {a: _arrow_value(rng, params) for a in arrows}, records)
        if validate(tree):
            continue
        if not params.require_rooted:
            return tree
        try:
            rooted = rt.RootedTree(tree, "v0")
        except TreeError:
            continue
        if params.allow_pseudo_root or rooted.is_root:
            return rooted
    raise TreeError(f"no tree met the constraints after {params.retries} attempts")


def random_tree(params: GenParams) -> Instance:
    """A random valid tree, determined entirely by ``params.seed``."""
    return generate(random.Random(params.seed), params)


@lru_cache(maxsize=None)
def _completions(remaining: int, blocks: int, cap: int) -> int:
    if remaining == 0:
        return 1
    total = blocks * _completions(remaining - 1, blocks, cap)
    if blocks < cap:
        total += _completions(remaining - 1, blocks + 1, cap)
    return total


def random_partition(rng: random.Random, items: Iterable[str], max_blocks: int = 4) -> list[frozenset[str]]:
    """A set partition drawn uniformly among those with at most ``max_blocks`` blocks."""
    items = sorted(items)
    blocks: list[list[str]] = []
    for i, item in enumerate(items):
        remaining = len(items) - i - 1
        join = len(blocks) * _completions(remaining, len(blocks), max_blocks)
        fresh = _completions(remaining, len(blocks) + 1, max_blocks) if len(blocks) < max_blocks else 0
        pick = rng.randrange(join + fresh)
        if pick < join:
            blocks[pick // _completions(remaining, len(blocks), max_blocks)].append(item)
        else:
            blocks.append([item])
    return [frozenset(b) for b in blocks]


# small helpers shared by suites


def _plain(obj: Instance) -> DecoratedTree:
    return obj.tree if isinstance(obj, rt.RootedTree) else obj


def _divides(a: int, b: int) -> bool:
    return b == 0 if a == 0 else b % a == 0


def _mf(tree: DecoratedTree) -> tuple[int, int]:
    return inv.multiplicity(tree), inv.gcd_sum(tree)


def _expect(failures: list[str], ok: bool, message: str) -> None:
    if not ok:
        failures.append(message)


def _random_prepartition(rng: random.Random, tree: DecoratedTree, v: str) -> tuple[list[str], list[str]]:
    first, second = [], []
    for y in tree.neighbours(v):
        (first if rng.random() < 0.5 else second).append(y)
    return first, second


def _attach(tree: DecoratedTree, vertices=(), arrows=None, records=()) -> DecoratedTree:
    return DecoratedTree.build(
        tree.vertices | set(vertices), {**tree.arrows, **(arrows or {})}, list(tree.edge_records()) + list(records)
    )


def _nonzero(tree: DecoratedTree) -> tuple[str, ...]:
    return tree.nonzero_arrows


# suites


@dataclass(frozen=True)
class Suite:
    name: str
    about: str
    check: Callable[[Instance, random.Random], list[str]]
    params: Callable[[GenParams], GenParams] = lambda p: p
    prepare: Callable[[Instance, random.Random], Instance | None] = lambda obj, rng: obj
    accepts: Callable[[Instance], bool] = lambda obj: True


SUITES: dict[str, Suite] = {}


def _suite(name: str, about: str, **options) -> Callable:
    def register(check: Callable[[Instance, random.Random], list[str]]):
        SUITES[name] = Suite(name, about, check, **options)
        return check

    return register


def _rooted_params(**extra) -> Callable[[GenParams], GenParams]:
    return lambda p: p.but(require_rooted=True, **extra)


@_suite("parity", "M + F is even")
def _parity(obj: Instance, rng: random.Random) -> list[str]:
    m, f = _mf(_plain(obj))
    return [] if (m + f) % 2 == 0 else [f"M + F = {m} + {f} is odd"]


def _rule_sites(tree: DecoratedTree, rule: str) -> Iterator[tuple[str, DecoratedTree]]:
    if rule == "dead-end":
        for alpha in tree.zero_arrows:
            for w in tree.neighbours(alpha):
                e = edge(alpha, w)
                if simp.dead_end_problem(tree, e) is None:
                    yield f"dead end {alpha}", simp.delete_dead_end(tree, e)
    elif rule == "pending-vertex":
        for t in sorted(tree.vertices):
            for v in tree.neighbours(t):
                e = edge(t, v)
                if simp.pending_vertex_problem(tree, e, t) is None:
                    yield f"pending vertex {t}", simp.delete_pending_vertex(tree, e, t)
    elif rule == "smooth":
        for v in sorted(tree.vertices):
            if tree.valency(v) == 2:
                yield f"smoothing {v}", simp.smooth_vertex(tree, v)
    elif rule == "contract":
        for e in tree.edges:
            if simp.contraction_problem(tree, e) is None:
                yield f"contracting {sorted(e)}", simp.contract_edge(tree, e)


def _graft(tree: DecoratedTree, rule: str, rng: random.Random) -> DecoratedTree | None:
    vertices = sorted(tree.vertices)
    if not vertices:
        return None
    v = rng.choice(vertices)
    if rule == "dead-end":
        alpha = fresh_id(tree.nodes, "g0")
        return _attach(tree, arrows={alpha: 0}, records=[(v, alpha, 1, 1)])
    if rule == "pending-vertex":
        t = fresh_id(tree.nodes, "g0")
        return _attach(tree, vertices=[t], records=[(v, t, 1, rng.randint(-5, 5))])
    if rule == "smooth":
        if not tree.edges:
            return None
        x, y = endpoints(rng.choice(tree.edges))
        w = fresh_id(tree.nodes, "g0")
        a = rng.choice([1, 1, -1, 2, 3, -4, 5])
        b = nearest_coprime(rng.choice([1, -1, 2, 3, -3, 7]), [a])
        records = [r for r in tree.edge_records() if {r[0], r[1]} != {x, y}]
        records += [(x, w, tree.near(x, y), a), (w, y, b, tree.near(y, x))]
        return DecoratedTree.build(tree.vertices | {w}, tree.arrows, records)
    if rule == "contract":
        widened, _ = spl.insert_zero_edge(tree, v, _random_prepartition(rng, tree, v))
        return widened
    raise ValueError(rule)


def _simplify_suite(rule: str) -> None:
    def prepare(obj: Instance, rng: random.Random) -> Instance | None:
        grafted = _graft(_plain(obj), rule, rng)
        return grafted if grafted is not None and not validate(grafted) else None

    def accepts(obj: Instance) -> bool:
        return any(True for _ in _rule_sites(_plain(obj), rule))

    def check(obj: Instance, rng: random.Random) -> list[str]:
        tree = _plain(obj)
        before = _mf(tree)
        failures = []
        for where, result in _rule_sites(tree, rule):
            problems = validate(result)
            _expect(failures, not problems, f"{where}: invalid result {problems[:1]}")
            after = _mf(result)
            _expect(failures, after == before, f"{where}: (M, F) went from {before} to {after}")
        return failures

    _suite(f"simplify-{rule}", f"rule {rule} preserves M and F", prepare=prepare, accepts=accepts)(check)


for _rule in ("dead-end", "pending-vertex", "smooth", "contract"):
    _simplify_suite(_rule)


@_suite("normalize", "normalization preserves M and F and is idempotent")
def _normalize(obj: Instance, rng: random.Random) -> list[str]:
    tree = _plain(obj)
    once = simp.normalize(tree)
    failures = []
    _expect(failures, _mf(once) == _mf(tree), f"(M, F) went from {_mf(tree)} to {_mf(once)}")
    _expect(failures, simp.normalize(once) == once, "normalize is not idempotent")
    _expect(failures, not validate(once), "normal form is invalid")
    return failures


@_suite("edz", "zero-edge insertion keeps N and contracts back", accepts=lambda obj: bool(_plain(obj).vertices))
def _edz(obj: Instance, rng: random.Random) -> list[str]:
    tree = _plain(obj)
    v = rng.choice(sorted(tree.vertices))
    widened, e = spl.insert_zero_edge(tree, v, _random_prepartition(rng, tree, v))
    v1, v2 = endpoints(e)
    failures = []
    n_v = inv.node_multiplicity(tree, v)
    for side in (v1, v2):
        got = inv.node_multiplicity(widened, side)
        _expect(failures, got == n_v, f"N at {side} is {got}, expected N_{v} = {n_v}")
    for x in inv.multiplicity_nodes(tree):
        if x != v:
            _expect(
                failures,
                inv.node_multiplicity(widened, x) == inv.node_multiplicity(tree, x),
                f"N_{x} changed",
            )
    _expect(failures, _mf(widened) == _mf(tree), "M or F changed")
    _expect(failures, simp.contraction_problem(widened, e) is None, "new edge is not contractible")
    if not failures:
        back = simp.contract_edge(widened, e)
        _expect(failures, isomorphic(back, tree), "contracting the new edge does not give the tree back")
    return failures


def _has_edge(obj: Instance) -> bool:
    return bool(_plain(obj).edges)


def _split_checks(tree: DecoratedTree, outcome: spl.SplitOutcome, n_values: tuple[int, int] | None) -> list[str]:
    failures = []
    first, second = outcome.trees
    for piece in (first, second):
        problems = validate(piece)
        _expect(failures, not problems, f"invalid piece: {problems[:1]}")
    m, f = _mf(tree)
    (m1, f1), (m2, f2) = _mf(first), _mf(second)
    d = outcome.degree
    _expect(failures, m1 + m2 == m, f"M: {m1} + {m2} != {m}")
    _expect(failures, f1 + f2 == f + 2 * d, f"F: {f1} + {f2} != {f} + 2*{d}")
    v1, v2 = outcome.endpoints
    for piece, z, v in zip((first, second), outcome.new_nodes, (v1, v2)):
        report = spl.is_good_pair(piece, z, v)
        _expect(failures, report.ok, f"({z}, {v}) is not a good pair: {report.reasons}")
    if d != 0 and n_values is not None:
        for piece, z, v, n in zip((first, second), outcome.new_nodes, (v1, v2), n_values):
            if not _divides(d, n):
                failures.append(f"degree {d} does not divide N = {n}")
                continue
            det = inv.edge_determinant(piece, edge(v, z))
            _expect(failures, det == -n // d, f"det of {v}-{z} is {det}, expected {-n // d}")
    return failures


@_suite("split-edge", "splitting at an edge: validity, good pairs, M, F and determinants", accepts=_has_edge)
def _split_edge(obj: Instance, rng: random.Random) -> list[str]:
    tree = _plain(obj)
    e = rng.choice(tree.edges)
    outcome = spl.split_at_edge(tree, e)
    v1, v2 = endpoints(e)
    n_values = None
    if tree.is_vertex(v1) and tree.is_vertex(v2):
        n_values = (inv.node_multiplicity(tree, v1), inv.node_multiplicity(tree, v2))
    return _split_checks(tree, outcome, n_values)


@_suite("split-F", "F(T1) + F(T2) = F(T) + 2d on random edges", accepts=_has_edge)
def _split_f(obj: Instance, rng: random.Random) -> list[str]:
    tree = _plain(obj)
    outcome = spl.split_at_edge(tree, rng.choice(tree.edges))
    f1, f2 = (inv.gcd_sum(t) for t in outcome.trees)
    f, d = inv.gcd_sum(tree), outcome.degree
    return [] if f1 + f2 == f + 2 * d else [f"{f1} + {f2} != {f} + 2*{d}"]


@_suite("split-vertex", "splitting at a vertex", accepts=lambda obj: bool(_plain(obj).vertices))
def _split_vertex(obj: Instance, rng: random.Random) -> list[str]:
    tree = _plain(obj)
    v = rng.choice(sorted(tree.vertices))
    outcome = spl.split_at_vertex(tree, v, _random_prepartition(rng, tree, v))
    n = inv.node_multiplicity(tree, v)
    return _split_checks(tree, outcome, (n, n))


def _dead_end_sites(tree: DecoratedTree) -> list[Edge]:
    sites = []
    for alpha in tree.zero_arrows:
        (v,) = tree.neighbours(alpha)
        e = edge(v, alpha)
        if tree.is_vertex(v) and tree.q(e, v) != 0 and inv.node_multiplicity(tree, v) != 0:
            sites.append(e)
    return sites


def _graft_dead_end(obj: Instance, rng: random.Random) -> Instance | None:
    tree = _plain(obj)
    if not tree.vertices:
        return None
    v = rng.choice(sorted(tree.vertices))
    alpha = fresh_id(tree.nodes, "g0")
    a = nearest_coprime(rng.choice([1, -1, 2, -2, 3, 5, -7]), [tree.near(v, y) for y in tree.neighbours(v)])
    grafted = _attach(tree, arrows={alpha: 0}, records=[(v, alpha, a, 1)])
    return None if validate(grafted) else grafted


@_suite(
    "split-dead-end",
    "splitting a dead end moves N_v / a into the arrow side",
    prepare=_graft_dead_end,
    accepts=lambda obj: bool(_dead_end_sites(_plain(obj))),
)
def _split_dead_end(obj: Instance, rng: random.Random) -> list[str]:
    tree = _plain(obj)
    e = rng.choice(_dead_end_sites(tree))
    (alpha,) = [x for x in e if tree.is_arrow(x)]
    v = other_end(e, alpha)
    a, n = tree.q(e, v), inv.node_multiplicity(tree, v)
    if n % a:
        return [f"q = {a} does not divide N_{v} = {n}"]
    ratio = n // a
    outcome = spl.split_at_edge(tree, e)
    arrow_side, vertex_side = outcome.trees if alpha == outcome.endpoints[0] else outcome.trees[::-1]
    m, f = _mf(tree)
    failures = []
    _expect(failures, outcome.degree == abs(ratio), f"degree {outcome.degree} != |{ratio}|")
    _expect(failures, _mf(arrow_side) == (ratio, abs(ratio)), f"arrow side has {_mf(arrow_side)}")
    _expect(
        failures,
        _mf(vertex_side) == (m - ratio, f + abs(ratio)),
        f"vertex side has {_mf(vertex_side)}, expected {(m - ratio, f + abs(ratio))}",
    )
    return failures


def _ensplit_checks(tree: DecoratedTree, outcome: spl.SplitOutcome, p_values: tuple[int, int]) -> list[str]:
    failures = []
    first, second = outcome.trees
    for piece in (first, second):
        problems = validate(piece)
        _expect(failures, not problems, f"invalid piece: {problems[:1]}")
    p1, p2 = p_values
    d = math.gcd(p1, p2)
    zeros = (p1 == 0) + (p2 == 0)
    t = 0 if zeros % 2 == 0 else (1 if p1 + p2 > 0 else -1)
    _expect(failures, outcome.degree == d, f"degree {outcome.degree} != gcd({p1}, {p2})")
    _expect(failures, outcome.kind == t, f"type {outcome.kind} != {t}")
    for piece, alpha, p in zip((first, second), outcome.new_nodes, (p1, p2)):
        _expect(failures, piece.f(alpha) == p, f"arrow {alpha} carries {piece.f(alpha)}, expected {p}")
    m, f = _mf(tree)
    (m1, f1), (m2, f2) = _mf(first), _mf(second)
    _expect(failures, m1 + m2 == m + t * d, f"M: {m1} + {m2} != {m} + {t}*{d}")
    _expect(failures, f1 + f2 == f + (2 - abs(t)) * d, f"F: {f1} + {f2} != {f} + {2 - abs(t)}*{d}")
    _expect(failures, (m + f - (m1 + f1) - (m2 + f2)) % 2 == 0, "parity congruence fails")
    return failures


@_suite("ensplit-edge", "EN-splitting at an edge: degree, type, M, F and parity", accepts=_has_edge)
def _ensplit_edge(obj: Instance, rng: random.Random) -> list[str]:
    tree = _plain(obj)
    e = rng.choice(tree.edges)
    v1, v2 = endpoints(e)
    outcome = spl.ensplit_at_edge(tree, e)
    return _ensplit_checks(tree, outcome, (inv.branch_sum(tree, v1, e), inv.branch_sum(tree, v2, e)))


@_suite("ensplit-vertex", "EN-splitting at a vertex", accepts=lambda obj: bool(_plain(obj).vertices))
def _ensplit_vertex(obj: Instance, rng: random.Random) -> list[str]:
    tree = _plain(obj)
    v = rng.choice(sorted(tree.vertices))
    parts = _random_prepartition(rng, tree, v)
    widened, e = spl.insert_zero_edge(tree, v, parts)
    v1, v2 = endpoints(e)
    outcome = spl.ensplit_at_vertex(tree, v, parts)
    p_values = (inv.branch_sum(widened, v1, e), inv.branch_sum(widened, v2, e))
    return _ensplit_checks(tree, outcome, p_values)


@_suite("edge-identity", "N_x = Q p(x, e) + q p(y, e) on every edge, with the dead-end and divisibility facts")
def _edge_identity(obj: Instance, rng: random.Random) -> list[str]:
    tree = _plain(obj)
    failures = []
    counted = set(inv.multiplicity_nodes(tree))
    for e in tree.edges:
        for x in e:
            if x not in counted:
                continue
            y = other_end(e, x)
            rhs = inv.outer_product(tree, e, x) * inv.branch_sum(tree, x, e) + tree.q(e, x) * inv.branch_sum(tree, y, e)
            n = inv.node_multiplicity(tree, x)
            _expect(failures, n == rhs, f"N_{x} = {n} but the edge to {y} gives {rhs}")
    fast = inv.multiplicities(tree)
    for x in counted:
        n = inv.node_multiplicity(tree, x)
        _expect(failures, fast[x] == n, f"table gives N_{x} = {fast[x]}, path weights give {n}")
    for alpha in tree.zero_arrows:
        (v,) = tree.neighbours(alpha)
        if tree.is_vertex(v):
            lhs, rhs = inv.node_multiplicity(tree, v), tree.near(v, alpha) * inv.node_multiplicity(tree, alpha)
            _expect(failures, lhs == rhs, f"dead end {alpha}: N_{v} = {lhs} != {rhs}")
    for alpha in tree.nonzero_arrows:
        (v,) = tree.neighbours(alpha)
        if tree.is_vertex(v) and inv.node_multiplicity(tree, v) == 0:
            q = tree.near(v, alpha)
            _expect(failures, _divides(q, tree.f(alpha)), f"N_{v} = 0 but {q} does not divide f({alpha})")
    return failures


def _linear_paths(tree: DecoratedTree, ends: Iterable[str]) -> Iterator[tuple[str, ...]]:
    for x, y in combinations(sorted(ends), 2):
        path = tree.path(x, y)
        if inv.is_linear(tree, path):
            yield path


@_suite("linear-path", "two-by-two determinant along linear paths equals det(path) times p")
def _linear_path(obj: Instance, rng: random.Random) -> list[str]:
    tree = _plain(obj)
    failures = []
    for path in _linear_paths(tree, inv.multiplicity_nodes(tree)):
        for v, w in ((path[0], path[-1]), (path[-1], path[0])):
            oriented = path if v == path[0] else path[::-1]
            lhs = inv.path_end_decoration(tree, oriented, v) * inv.node_multiplicity(
                tree, w
            ) - inv.path_outer_product(tree, oriented, w) * inv.node_multiplicity(tree, v)
            e = edge(oriented[0], oriented[1])
            rhs = inv.path_determinant(tree, oriented) * inv.branch_sum(tree, v, e)
            _expect(failures, lhs == rhs, f"path {v}..{w}: {lhs} != {rhs}")
            if len(path) == 2:
                _expect(
                    failures,
                    inv.path_determinant(tree, path) == inv.edge_determinant(tree, e),
                    f"edge {v}-{w}: path and edge determinants differ",
                )
    return failures


@_suite("pairing", "pairing symmetry and additivity, and per-arrow multiplicities summing to M")
def _pairing(obj: Instance, rng: random.Random) -> list[str]:
    tree = _plain(obj)
    arrows = _nonzero(tree)
    failures = []
    total = sum(inv.arrow_multiplicity(tree, a) for a in arrows)
    _expect(failures, total == inv.multiplicity(tree), f"sum of per-arrow multiplicities {total} != M")
    if arrows:
        blocks = random_partition(rng, arrows)
        everything = inv.pairing(tree, arrows, arrows)
        pieces = sum(inv.pairing(tree, x, y) for x in blocks for y in blocks)
        _expect(failures, everything == pieces, f"I(A, A) = {everything} but blocks give {pieces}")
        for x, y in combinations(blocks, 2):
            _expect(failures, inv.pairing(tree, x, y) == inv.pairing(tree, y, x), "pairing is not symmetric")
    return failures


def _has_nonzero(obj: Instance) -> bool:
    return bool(_nonzero(_plain(obj)))


@_suite(
    "subtree-multiplicity",
    "M(T) = M(T_X) for X all nonzero arrows, and (T_X)_a = T_a",
    params=_rooted_params(allow_pseudo_root=True),
    accepts=_has_nonzero,
)
def _subtree_multiplicity(obj: rt.RootedTree, rng: random.Random) -> list[str]:
    tree = obj.tree
    arrows = _nonzero(tree)
    whole = rt.subtree(obj, arrows)
    failures = []
    _expect(
        failures,
        inv.multiplicity(whole.tree) == inv.multiplicity(tree),
        f"M(T_X) = {inv.multiplicity(whole.tree)} != M(T) = {inv.multiplicity(tree)}",
    )
    chosen = random_partition(rng, arrows)[0]
    inner = rt.subtree(obj, chosen)
    for a in sorted(chosen):
        twice, once = rt.subtree(inner, [a]), rt.subtree(obj, [a])
        same = isomorphic(twice.tree, once.tree, twice.root, once.root)
        _expect(failures, same, f"(T_X)_{a} differs from T_{a}")
    return failures


def _unit_arrows(obj: Instance) -> bool:
    tree = _plain(obj)
    return bool(tree.nonzero_arrows) and all(f in (0, 1) for f in tree.arrows.values())


@_suite(
    "unit-decomposition",
    "per-arrow and partition decompositions of M, delta and g when every f is 0 or 1",
    params=_rooted_params(allow_pseudo_root=True, arrow_decoration_set=(0, 1)),
    accepts=_unit_arrows,
)
def _unit_decomposition(obj: rt.RootedTree, rng: random.Random) -> list[str]:
    tree = obj.tree
    arrows = _nonzero(tree)
    failures = []
    m, (g, dl) = inv.multiplicity(tree), inv.genus_and_delta(tree)
    single = {a: rt.subtree(obj, [a]).tree for a in arrows}
    for a, piece in single.items():
        lhs = inv.multiplicity(piece) - inv.arrow_multiplicity(tree, a)
        _expect(failures, lhs == inv.arrow_pairing(tree, a), f"arrow {a}: {lhs} != I = {inv.arrow_pairing(tree, a)}")
    everything = inv.pairing(tree, arrows, arrows)
    _expect(failures, m == sum(inv.multiplicity(t) for t in single.values()) - everything, "M per-arrow fails")
    _expect(failures, 2 * dl == 2 * sum(inv.delta(t) for t in single.values()) + everything, "delta per-arrow fails")
    _expect(failures, 2 * (g - 1) == 2 * sum(inv.genus(t) - 1 for t in single.values()) + everything, "g per-arrow fails")
    blocks = random_partition(rng, arrows)
    pieces = [rt.subtree(obj, x).tree for x in blocks]
    cross = sum(inv.pairing(tree, x, y) for x, y in combinations(blocks, 2))
    _expect(failures, m == sum(inv.multiplicity(t) for t in pieces) - 2 * cross, "M by partition fails")
    _expect(failures, dl == sum(inv.delta(t) for t in pieces) + cross, "delta by partition fails")
    _expect(failures, g - 1 == sum(inv.genus(t) - 1 for t in pieces) + cross, "g by partition fails")
    return failures


@_suite(
    "general-decomposition",
    "decompositions of M, delta and g with correction terms over random partitions",
    params=_rooted_params(allow_pseudo_root=True),
    accepts=_has_nonzero,
)
def _general_decomposition(obj: rt.RootedTree, rng: random.Random) -> list[str]:
    tree = obj.tree
    arrows = _nonzero(tree)
    failures = []
    m, (g, dl) = inv.multiplicity(tree), inv.genus_and_delta(tree)
    everything = inv.pairing(tree, arrows, arrows)
    single = {a: rt.subtree(obj, [a]).tree for a in arrows}
    corr_m = {a: inv.correction_multiplicity(tree, [a]) for a in arrows}
    corr_d = {a: rt.correction_delta(obj, [a]) for a in arrows}
    corr_g = {a: rt.correction_genus(obj, [a]) for a in arrows}
    for a in arrows:
        _expect(failures, corr_m[a] == inv.singleton_correction_multiplicity(tree, a), f"{a}: M correction closed form")
        _expect(failures, corr_d[a] == rt.singleton_correction_delta(tree, a), f"{a}: delta correction closed form")
        _expect(failures, corr_g[a] == rt.singleton_correction_genus(tree, a), f"{a}: genus correction closed form")
    _expect(
        failures,
        m == sum(inv.multiplicity(t) for t in single.values()) + sum(corr_m.values()) - everything,
        "M per-arrow fails",
    )
    _expect(
        failures,
        2 * dl == 2 * sum(inv.delta(t) for t in single.values()) - 2 * sum(corr_d.values()) + everything,
        "delta per-arrow fails",
    )
    _expect(
        failures,
        2 * (g - 1) == 2 * sum(inv.genus(t) - 1 for t in single.values()) - 2 * sum(corr_g.values()) + everything,
        "g per-arrow fails",
    )
    blocks = random_partition(rng, arrows)
    pieces = [rt.subtree(obj, x) for x in blocks]
    cross = sum(inv.pairing(tree, x, y) for x, y in combinations(blocks, 2))
    block_m = [inv.correction_multiplicity(tree, x) for x in blocks]
    block_d = [rt.correction_delta(obj, x) for x in blocks]
    block_g = [rt.correction_genus(obj, x) for x in blocks]
    for x, piece, cm, cd, cg in zip(blocks, pieces, block_m, block_d, block_g):
        _expect(failures, cd + cg == cm, f"corrections of {sorted(x)} do not add up")
        rest = inv.complement(tree, x)
        for a in sorted(x):
            (w,) = tree.neighbours(a)
            (w_inner,) = piece.tree.neighbours(a)
            drop = inv.branch_sum(tree, a, edge(a, w)) - inv.branch_sum(piece.tree, a, edge(a, w_inner))
            pair = inv.pairing(tree, [a], rest)
            _expect(failures, pair == tree.f(a) * drop, f"{a}: I = {pair} but f * (p - p_X) = {tree.f(a) * drop}")
    _expect(failures, m == sum(inv.multiplicity(p.tree) for p in pieces) + sum(block_m) - 2 * cross, "M by partition fails")
    _expect(failures, dl == sum(inv.delta(p.tree) for p in pieces) - sum(block_d) + cross, "delta by partition fails")
    _expect(failures, g - 1 == sum(inv.genus(p.tree) - 1 for p in pieces) - sum(block_g) + cross, "g by partition fails")
    return failures


def _sometimes_rooted(obj: Instance, rng: random.Random) -> Instance:
    # free trees rarely have central nodes; mix in rooted ones, where the root is central
    if rng.random() < 0.5:
        return generate(rng, GenParams(max_nodes=12, require_rooted=True, allow_pseudo_root=rng.random() < 0.5))
    return obj


@_suite("central-connected", "the central set is connected", prepare=_sometimes_rooted)
def _central_connected(obj: Instance, rng: random.Random) -> list[str]:
    tree = _plain(obj)
    centre = {x for x in tree.nodes if rt.is_central(tree, x)}
    failures = []
    _expect(failures, is_connected_set(tree, centre), f"central set {sorted(centre)} is not connected")
    if isinstance(obj, rt.RootedTree) and obj.is_root:
        _expect(failures, obj.root in centre, "the root is not central")
    return failures


def _comparable_vertex_pairs(rooted: rt.RootedTree) -> Iterator[tuple[str, str]]:
    tree = rooted.tree
    for w in sorted(tree.vertices):
        for v in tree.path(rooted.root, w)[:-1]:
            if tree.is_vertex(v):
                yield v, w


def _signed(obj: Instance) -> bool:
    return isinstance(obj, rt.RootedTree) and obj.is_root


@_suite(
    "path-sign",
    "paths between comparable vertices inherit the edge determinant sign",
    params=_rooted_params(require_negative_determinants=True),
    accepts=_signed,
)
def _path_sign(obj: rt.RootedTree, rng: random.Random) -> list[str]:
    tree = obj.tree
    sign = rt.determinant_sign(tree)
    if sign not in (rt.DeterminantSign.NEGATIVE, rt.DeterminantSign.POSITIVE):
        return []
    want = -1 if sign is rt.DeterminantSign.NEGATIVE else 1
    failures = []
    for v, w in _comparable_vertex_pairs(obj):
        det = inv.path_determinant(tree, tree.path(v, w))
        _expect(failures, det * want > 0, f"det of path {v}..{w} is {det}")
    return failures


@_suite(
    "path-sign-positive",
    "the same with positive determinants",
    params=_rooted_params(require_positive_determinants=True),
    accepts=_signed,
)
def _path_sign_positive(obj: rt.RootedTree, rng: random.Random) -> list[str]:
    return _path_sign(obj, rng)


def _negative_natural(obj: Instance) -> bool:
    return (
        _signed(obj)
        and all(f >= 0 for f in obj.tree.arrows.values())
        and rt.determinant_sign(obj.tree) in (rt.DeterminantSign.NEGATIVE, rt.DeterminantSign.VACUOUS)
    )


_NEGATIVE = _rooted_params(require_negative_determinants=True, force_f_nonnegative=True)


@_suite(
    "linear-path-sign",
    "sign of the two-by-two determinant on linear paths with negative determinants",
    params=_NEGATIVE,
    accepts=_negative_natural,
)
def _linear_path_sign(obj: rt.RootedTree, rng: random.Random) -> list[str]:
    tree = obj.tree
    failures = []
    for v, w in _comparable_vertex_pairs(obj):
        path = tree.path(v, w)
        if not inv.is_linear(tree, path):
            continue
        q_v = inv.path_end_decoration(tree, path, v)
        big_w = inv.path_outer_product(tree, path, w)
        minor = q_v * inv.node_multiplicity(tree, w) - big_w * inv.node_multiplicity(tree, v)
        _expect(failures, q_v > 0 and big_w > 0, f"path {v}..{w}: q = {q_v}, Q = {big_w}")
        _expect(failures, minor <= 0, f"path {v}..{w}: minor {minor} > 0")
        if any(rt.precedes(obj, w, a) for a in tree.nonzero_arrows):
            _expect(failures, minor < 0, f"path {v}..{w}: minor is 0 with a nonzero arrow beyond")
    return failures


@_suite(
    "sign-connected",
    "signs of N along the order and connectedness of N >= 0 and N > 0",
    params=_NEGATIVE,
    accepts=_negative_natural,
)
def _sign_connected(obj: rt.RootedTree, rng: random.Random) -> list[str]:
    tree = obj.tree
    n = {v: inv.node_multiplicity(tree, v) for v in tree.vertices}
    failures = []
    for v, w in _comparable_vertex_pairs(obj):
        if n[v] < 0:
            _expect(failures, n[w] < 0, f"N_{v} < 0 but N_{w} = {n[w]}")
        if n[v] <= 0:
            _expect(failures, n[w] <= 0, f"N_{v} <= 0 but N_{w} = {n[w]}")
            if any(rt.precedes(obj, w, a) for a in tree.nonzero_arrows):
                _expect(failures, n[w] < 0, f"N_{v} <= 0, arrow beyond {w}, but N_{w} = {n[w]}")
    for label, members in (("N >= 0", {v for v in n if n[v] >= 0}), ("N > 0", {v for v in n if n[v] > 0})):
        _expect(failures, is_connected_set(tree, members), f"{label} set {sorted(members)} is not connected")
    return failures


def _unit_root(obj: Instance) -> bool:
    return _signed(obj) and all(f in (0, 1) for f in obj.tree.arrows.values())


@_suite(
    "out-pair-formula",
    "branch sums through out-pairs when every f is 0 or 1",
    params=_rooted_params(arrow_decoration_set=(0, 1)),
    accepts=_unit_root,
)
def _out_pair_formula(obj: rt.RootedTree, rng: random.Random) -> list[str]:
    failures = []
    for x, e in gen.out_pairs(obj):
        lhs, rhs = gen.branch_sum_formula_sides(obj, x, e)
        _expect(failures, lhs == rhs, f"out-pair ({x}, {sorted(e)}): {lhs} != {rhs}")
    return failures


def _has_other_arrow(obj: Instance) -> bool:
    return _signed(obj) and any(f not in (0, 1) for f in obj.tree.arrows.values())


@_suite(
    "out-pair-converse",
    "some out-pair breaks the formula once an arrow is decorated outside {0, 1}",
    params=_rooted_params(),
    accepts=_has_other_arrow,
)
def _out_pair_converse(obj: rt.RootedTree, rng: random.Random) -> list[str]:
    for x, e in gen.out_pairs(obj):
        lhs, rhs = gen.branch_sum_formula_sides(obj, x, e)
        if lhs != rhs:
            return []
    return ["every out-pair satisfies the formula"]


def reverse_by_determinants(tree: DecoratedTree, eta: str) -> DecoratedTree:
    """Reversal solved edge by edge from the negated determinants, walking
    depth-first instead of breadth-first."""
    changes: dict[tuple[str, str], int] = {}
    new_inward: dict[str, int] = {}
    parents = tree.parents_from(eta)
    stack = [(y, eta) for y in reversed(tree.neighbours(eta))]
    while stack:
        v, toward = stack.pop()
        if not tree.is_vertex(v):
            continue
        e = edge(v, toward)
        outer = inv.outer_product(tree, e, v)
        if toward == eta:
            value = outer - tree.q(e, v)
        else:
            y = tree.q(e, toward)
            parent_outer = inv.outer_product(tree, edge(toward, parents[toward]), toward)
            numerator = outer * (parent_outer // y) * new_inward[toward] - inv.edge_determinant(tree, e)
            if numerator % y:
                raise TreeError(f"no integer solution at {v}")
            value = numerator // y
        new_inward[v] = value
        changes[(v, toward)] = value
        stack.extend((w, v) for w in reversed(tree.neighbours(v)) if w != toward)
    return tree.with_decorations(changes)


def _central_nodes(obj: Instance) -> list[str]:
    tree = _plain(obj)
    return [x for x in tree.nodes if rt.is_central(tree, x)]


@_suite(
    "reversal",
    "reversal negates determinants away from the centre, keeps divisibility, and is unique",
    params=_rooted_params(),
    accepts=lambda obj: bool(_central_nodes(obj)),
)
def _reversal(obj: Instance, rng: random.Random) -> list[str]:
    tree = _plain(obj)
    eta = rng.choice(_central_nodes(tree))
    flipped = gen.reverse(tree, eta)
    failures = []
    _expect(failures, not validate(flipped), "reversed tree is invalid")
    _expect(
        failures,
        flipped.vertices == tree.vertices and dict(flipped.arrows) == dict(tree.arrows) and flipped.edges == tree.edges,
        "reversal changed the underlying tree",
    )
    parents = tree.parents_from(eta)
    for (x, y), q in tree.decorations.items():
        if x == eta or not tree.is_vertex(x) or parents[x] != y:
            _expect(failures, flipped.near(x, y) == q, f"decoration near {x} toward {y} changed")
    for v in tree.neighbours(eta):
        if tree.is_vertex(v):
            e = edge(v, eta)
            want = inv.outer_product(tree, e, v) - tree.q(e, v)
            _expect(failures, flipped.q(e, v) == want, f"decoration near {v} toward {eta} is not Q - q")
    for v in tree.vertices - {eta}:
        e = edge(v, parents[v])
        outer = inv.outer_product(tree, e, v)
        _expect(failures, _divides(outer, tree.q(e, v) + flipped.q(e, v)), f"{outer} does not divide the sum at {v}")
    for e in tree.edges:
        x, y = endpoints(e)
        if eta not in e and tree.is_vertex(x) and tree.is_vertex(y):
            before, after = inv.edge_determinant(tree, e), inv.edge_determinant(flipped, e)
            _expect(failures, after == -before, f"det of {x}-{y} went from {before} to {after}")
    _expect(failures, reverse_by_determinants(tree, eta) == flipped, "depth-first solution differs")
    return failures


def _root_with_edges(obj: Instance) -> bool:
    return _signed(obj) and obj.tree.valency(obj.root) > 0


@_suite(
    "root-pieces",
    "N_x + N_x in its piece = phi(root, x) * deg for every vertex and 0-arrow",
    params=_rooted_params(),
    accepts=_root_with_edges,
)
def _root_pieces(obj: rt.RootedTree, rng: random.Random) -> list[str]:
    tree, root = obj.tree, obj.root
    deg = rt.degree(obj)
    failures = []
    pieces = gen.root_decompose(obj)
    _expect(failures, len(pieces) == tree.valency(root), "wrong number of pieces")
    for piece in pieces:
        _expect(failures, not validate(piece.tree), f"piece at {piece.neighbour} is invalid")
        for x in inv.multiplicity_nodes(piece.tree):
            if x == piece.anchor:
                continue
            total = inv.node_multiplicity(tree, x) + inv.node_multiplicity(piece.tree, x)
            want = gen.phi(tree, root, x) * deg
            _expect(failures, total == want, f"{x}: {total} != phi * deg = {want}")
    return failures


@_suite(
    "genus-formula",
    "g = (d-1)(d-2)/2 - sum of the pieces' delta",
    params=_rooted_params(arrow_decoration_set=(0, 1)),
    accepts=lambda obj: _unit_root(obj) and obj.tree.valency(obj.root) > 0,
)
def _genus_formula(obj: rt.RootedTree, rng: random.Random) -> list[str]:
    lhs, rhs = gen.genus_formula_check(obj)
    return [] if lhs == rhs else [f"g = {lhs} but the formula gives {rhs}"]


# running and shrinking


@dataclass
class SuiteReport:
    suite: str
    seed: int
    count: int
    failures: int = 0
    first_counterexample: str | None = None
    first_message: str | None = None

    @property
    def passed(self) -> bool:
        return self.failures == 0 and self.count > 0

    def to_text(self) -> str:
        lines = [
            f"suite: {self.suite}",
            f"seed: {self.seed}",
            f"count: {self.count}",
            f"failures: {self.failures}",
        ]
        if self.first_counterexample is None:
            lines.append("first_counterexample: none")
        else:
            lines.append(f"first_message: {self.first_message}")
            lines.append("first_counterexample: |")
            lines += ["  " + line for line in self.first_counterexample.splitlines()]
        return "\n".join(lines) + "\n"


def _run_check(suite: Suite, obj: Instance, seed: int) -> list[str]:
    try:
        return suite.check(obj, random.Random(seed))
    except Exception as exc:  # any crash is a failure to report, not to propagate
        return [f"{type(exc).__name__}: {exc}"]


def _rewrap(obj: Instance, tree: DecoratedTree) -> Instance | None:
    if validate(tree):
        return None
    if isinstance(obj, rt.RootedTree):
        if obj.root not in tree.vertices:
            return None
        try:
            return rt.RootedTree(tree, obj.root)
        except TreeError:
            return None
    return tree


def shrink_candidates(obj: Instance) -> Iterator[Instance]:
    """Smaller variants: one simplification step, one leaf removed, or (for
    rooted trees) the subtree spanned by all but one nonzero arrow."""
    tree = _plain(obj)
    for rule in ("dead-end", "pending-vertex", "smooth", "contract"):
        for _, smaller in _rule_sites(tree, rule):
            wrapped = _rewrap(obj, smaller)
            if wrapped is not None:
                yield wrapped
    for leaf in tree.nodes:
        if tree.valency(leaf) <= 1 and not (isinstance(obj, rt.RootedTree) and leaf == obj.root):
            keep = [x for x in tree.nodes if x != leaf]
            if not keep:
                continue
            wrapped = _rewrap(obj, tree.restricted(keep))
            if wrapped is not None:
                yield wrapped
    if isinstance(obj, rt.RootedTree):
        arrows = tree.nonzero_arrows
        if len(arrows) > 1:
            for a in arrows:
                try:
                    yield rt.subtree(obj, [b for b in arrows if b != a])
                except TreeError:
                    pass


def shrink(suite: Suite, obj: Instance, seed: int, budget: int = 400) -> Instance:
    """Greedily replace ``obj`` by a smaller instance that still fails."""
    spent = 0
    improved = True
    while improved and spent < budget:
        improved = False
        for candidate in shrink_candidates(obj):
            spent += 1
            if spent > budget:
                break
            if suite.accepts(candidate) and _run_check(suite, candidate, seed):
                obj = candidate
                improved = True
                break
    return obj


def draw_instances(suite: Suite, params: GenParams, count: int) -> Iterator[tuple[Instance, int]]:
    """``count`` accepted instances, each paired with the seed for its check."""
    master = random.Random(params.seed)
    adapted = suite.params(params)
    produced = 0
    attempts = 0
    limit = 200 * max(count, 1) + 1000
    while produced < count and attempts < limit:
        attempts += 1
        rng = random.Random(master.getrandbits(64))
        obj = suite.prepare(generate(rng, adapted), rng)
        if obj is None or not suite.accepts(obj):
            continue
        produced += 1
        yield obj, rng.getrandbits(64)
    if produced < count:
        raise TreeError(f"suite {suite.name}: only {produced} of {count} instances met its hypotheses")


def run_suite(name: str, params: GenParams | None = None, count: int = 10_000) -> SuiteReport:
    if name not in SUITES:
        raise TreeError(f"unknown suite {name!r}; choose from {', '.join(sorted(SUITES))}")
    suite = SUITES[name]
    params = params or GenParams()
    report = SuiteReport(name, params.seed, 0)
    for obj, seed in draw_instances(suite, params, count):
        report.count += 1
        problems = _run_check(suite, obj, seed)
        if problems:
            report.failures += 1
            if report.first_counterexample is None:
                small = shrink(suite, obj, seed)
                report.first_counterexample = serialize(small)
                report.first_message = (_run_check(suite, small, seed) or problems)[0]
    return report
