import random
from itertools import combinations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import rooted_trees, plain, trees
from dectree import invariants as inv
from dectree import rooted as rt
from dectree.harness import random_partition
from dectree.treecore import TreeError, is_connected_set, make_tree


def star(*fs):
    arrows = {f"a{i}": f for i, f in enumerate(fs)}
    return make_tree(["r"], arrows, [("r", a) for a in arrows])


def test_classification():
    assert rt.classify_vertex(star(1, 1), "r") is rt.VertexClass.ROOT
    bad = make_tree(["r"], {"a": 1}, [("r", "a", -2)])
    assert rt.classify_vertex(bad, "r") is rt.VertexClass.NEITHER
    pseudo = make_tree(["r", "w"], {"a": 1, "b": 1}, [("r", "w"), ("w", "a", -3), ("w", "b")])
    assert rt.classify_vertex(pseudo, "r") is rt.VertexClass.PSEUDO_ROOT_ONLY
    assert rt.find_roots(pseudo) == (frozenset(), frozenset({"r"}))


def test_rooted_tree_rejects_non_pseudo_roots(corpus):
    t = corpus("small_three_arrow")
    with pytest.raises(TreeError, match="not a pseudo-root"):
        rt.RootedTree(t, "v")
    with pytest.raises(TreeError):
        rt.RootedTree(t, "a1")


def test_require_root_on_pseudo_root():
    pseudo = make_tree(["r", "w"], {"a": 1, "b": 1}, [("r", "w"), ("w", "a", -3), ("w", "b")])
    with pytest.raises(TreeError, match="not a root"):
        rt.RootedTree(pseudo, "r").require_root()


def test_central_set_of_small_tree(corpus):
    assert rt.central_set(corpus("small_three_arrow")) == {"u", "v", "a2"}


def test_central_set_of_unit_chain():
    t = make_tree(["x", "y"], {"a": 1, "b": 1}, [("x", "y"), ("x", "a"), ("y", "b")])
    assert rt.central_set(t) == set(t.nodes)


def test_order(corpus):
    r = corpus("decomposition_unit")
    assert all(rt.precedes(r, "v0", y) for y in r.tree.nodes)
    assert rt.precedes(r, "P1", "P1")
    assert not rt.precedes(r, "P1", "P3") and not rt.precedes(r, "P3", "P1")


def test_determinant_signs(corpus):
    assert rt.determinant_sign(corpus("small_three_arrow")) is rt.DeterminantSign.NEGATIVE
    assert rt.determinant_sign(star(1, 1)) is rt.DeterminantSign.VACUOUS


def test_degree():
    assert rt.degree(rt.RootedTree(star(1, 1), "r")) == 2
    assert rt.degree(rt.RootedTree(star(1), "r")) == 1
    assert rt.degree(rt.RootedTree(star(0, 0), "r")) == 0


def test_subtree_stub_carries_pruned_product(corpus):
    r = corpus("subtree_pseudo_rooted")
    sub = rt.subtree(r, ["alpha"])
    assert set(sub.tree.nonzero_arrows) == {"alpha"}
    stubs = [a for a in sub.tree.zero_arrows if a.endswith(".b0")]
    assert stubs, "pruned branches should leave 0-arrows"
    with pytest.raises(TreeError):
        rt.subtree(r, [])
    with pytest.raises(TreeError):
        rt.subtree(r, ["lowz"])


def test_subtree_of_all_arrows_keeps_multiplicity(corpus):
    for name in ("subtree_pseudo_rooted", "decomposition_general", "decomposition_unit"):
        r = corpus(name)
        whole = rt.subtree(r, r.tree.nonzero_arrows)
        assert inv.multiplicity(whole.tree) == inv.multiplicity(r.tree)


@given(rooted_trees(allow_pseudo_root=True))
def test_subtree_of_all_arrows_property(r):
    if r.tree.nonzero_arrows:
        assert inv.multiplicity(rt.subtree(r, r.tree.nonzero_arrows).tree) == inv.multiplicity(r.tree)


@given(rooted_trees(arrow_decoration_set=(0, 1), allow_pseudo_root=True))
def test_per_arrow_identity(r):
    t = r.tree
    for a in t.nonzero_arrows:
        lhs = inv.multiplicity(rt.subtree(r, [a]).tree) - inv.arrow_multiplicity(t, a)
        assert lhs == inv.arrow_pairing(t, a)


@given(rooted_trees(arrow_decoration_set=(0, 1), allow_pseudo_root=True), st.integers(0, 2**32))
def test_unit_partition_identities(r, seed):
    t = r.tree
    if not t.nonzero_arrows:
        return
    blocks = random_partition(random.Random(seed), t.nonzero_arrows)
    pieces = [rt.subtree(r, b).tree for b in blocks]
    cross = sum(inv.pairing(t, x, y) for x, y in combinations(blocks, 2))
    assert inv.multiplicity(t) == sum(inv.multiplicity(p) for p in pieces) - 2 * cross
    assert inv.delta(t) == sum(inv.delta(p) for p in pieces) + cross
    assert inv.genus(t) - 1 == sum(inv.genus(p) - 1 for p in pieces) + cross


@given(rooted_trees(allow_pseudo_root=True), st.integers(0, 2**32))
def test_general_partition_identities(r, seed):
    t = r.tree
    if not t.nonzero_arrows:
        return
    blocks = random_partition(random.Random(seed), t.nonzero_arrows)
    pieces = [rt.subtree(r, b).tree for b in blocks]
    cross = sum(inv.pairing(t, x, y) for x, y in combinations(blocks, 2))
    cm = sum(inv.correction_multiplicity(t, b) for b in blocks)
    cd = sum(rt.correction_delta(r, b) for b in blocks)
    cg = sum(rt.correction_genus(r, b) for b in blocks)
    assert inv.multiplicity(t) == sum(inv.multiplicity(p) for p in pieces) + cm - 2 * cross
    assert inv.delta(t) == sum(inv.delta(p) for p in pieces) - cd + cross
    assert inv.genus(t) - 1 == sum(inv.genus(p) - 1 for p in pieces) - cg + cross


@given(trees())
def test_central_set_is_connected(obj):
    rt.central_set(plain(obj))  # raises if disconnected


@given(rooted_trees(require_negative_determinants=True, force_f_nonnegative=True))
def test_comparable_vertices_have_negative_path_determinant(r):
    t = r.tree
    for v, w in combinations(sorted(t.vertices), 2):
        if rt.precedes(r, v, w) or rt.precedes(r, w, v):
            assert inv.path_determinant(t, t.path(v, w)) < 0


@given(rooted_trees(require_positive_determinants=True, force_f_nonnegative=True))
def test_comparable_vertices_have_positive_path_determinant(r):
    t = r.tree
    for v, w in combinations(sorted(t.vertices), 2):
        if rt.precedes(r, v, w) or rt.precedes(r, w, v):
            assert inv.path_determinant(t, t.path(v, w)) > 0


@given(rooted_trees(require_negative_determinants=True, force_f_nonnegative=True))
def test_nonnegative_multiplicity_sets_are_connected(r):
    t = r.tree
    counted = inv.multiplicity_nodes(t)
    n = {x: inv.node_multiplicity(t, x) for x in counted}
    vertices = [x for x in counted if t.is_vertex(x)]
    assert is_connected_set(t, [v for v in vertices if n[v] >= 0])
    assert is_connected_set(t, [v for v in vertices if n[v] > 0])
