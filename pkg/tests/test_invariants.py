import math

import pytest
from hypothesis import given

from conftest import plain, trees
from dectree import invariants as inv
from dectree.treecore import InvariantBroken, TreeError, edge, make_tree


@pytest.fixture
def small(corpus):
    return corpus("small_three_arrow")


def test_outer_products(small):
    assert inv.outer_product(small, edge("u", "v"), "v") == 2
    assert inv.outer_product(small, edge("u", "v"), "u") == 1
    assert inv.outer_product(small, edge("v", "a1"), "v") == 6
    assert inv.outer_product(small, edge("v", "a1"), "a1") == 1


def test_edge_determinant(small):
    assert inv.edge_determinant(small, edge("u", "v")) == -8
    lone = make_tree([], {"x": 1, "y": 1}, [("x", "y")])
    assert inv.edge_determinant(lone, edge("x", "y")) == 0


def test_node_multiplicities(small):
    assert inv.node_multiplicity(small, "a2") == 3
    assert inv.node_multiplicity(small, "v") == 6
    assert inv.node_multiplicity(small, "u") == 2
    with pytest.raises(TreeError):
        inv.node_multiplicity(small, "a1")


def test_global_multiplicity(small, corpus):
    assert inv.multiplicity(small) == -1
    assert inv.multiplicity(corpus("split_eight_arrows")) == -9


def test_no_nonzero_arrows_means_zero_multiplicities():
    t = make_tree(["x"], {"a": 0, "b": 0}, [("x", "a", 2), ("x", "b", 3)])
    assert all(inv.node_multiplicity(t, x) == 0 for x in t.nodes)
    assert inv.multiplicity(t) == 0 and inv.gcd_sum(t) == 0


def test_empty_tree_has_zero_invariants():
    t = make_tree()
    assert (inv.multiplicity(t), inv.gcd_sum(t)) == (0, 0)


def test_branch_sums(small):
    assert inv.branch_sum(small, "a1", edge("v", "a1")) == 0
    assert inv.branch_sum(small, "u", edge("u", "v")) == 2
    assert inv.branch_sum(small, "v", edge("u", "v")) == 0
    assert inv.opposite_branch_sum(small, "v", edge("u", "v")) == 2
    assert inv.arrows_beyond(small, "u", edge("u", "v")) == {"a1"}
    with pytest.raises(TreeError):
        inv.branch_sum(small, "u", edge("v", "a1"))


def test_gcd_sum(small, corpus):
    assert inv.gcd_sum(small) == 1
    assert inv.gcd_sum(corpus("split_eight_arrows")) == 5
    with pytest.raises(TreeError):
        inv.arrow_gcd(small, "a2")


@pytest.mark.parametrize("i,j", [(1, 1), (2, 4), (-3, 6), (5, 7), (-4, -6)])
def test_two_arrow_tree(i, j):
    t = make_tree([], {"a": i, "b": j}, [("a", "b")])
    assert inv.multiplicity(t) == 0  # no vertices or 0-arrows
    assert inv.gcd_sum(t) == 2 * math.gcd(i, j)


def test_single_unit_arrow_at_a_vertex():
    t = make_tree(["v"], {"a": 1}, [("v", "a")])
    assert (inv.multiplicity(t), inv.gcd_sum(t)) == (1, 1)
    assert inv.genus_and_delta(t) == (0, 0)


def test_eight_arrow_genus_and_delta(corpus):
    assert inv.genus_and_delta(corpus("split_eight_arrows")) == (3, 7)


def test_path_determinant_on_a_chain():
    t = make_tree(["x", "y", "z"], {"a": 1, "b": 1}, [("x", "y", 2, 3), ("y", "z", 5, 7), ("y", "a", 11), ("z", "b")])
    path = ("x", "y", "z")
    assert inv.path_determinant(t, path) == 2 * 7 - 11**2 * 1 * 1
    assert inv.path_determinant(t, ("x", "y")) == inv.edge_determinant(t, edge("x", "y"))
    with pytest.raises(TreeError):
        inv.path_determinant(t, ("x",))
    with pytest.raises(TreeError):
        inv.path_determinant(t, ("x", "z"))


def test_linear_paths():
    t = make_tree(["x", "y", "z"], {"a": 1, "b": 1}, [("x", "y", 2, 3), ("y", "z", 5, 7), ("x", "a"), ("z", "b")])
    assert inv.is_linear(t, ("x", "y", "z"))
    assert inv.path_determinant(t, ("x", "y", "z")) == 2 * 7 - 1 * 1


def test_genus_refuses_odd_total(monkeypatch, small):
    monkeypatch.setattr(inv, "gcd_sum", lambda tree: 2)
    with pytest.raises(InvariantBroken):
        inv.genus_and_delta(small)


@given(trees())
def test_edge_identity(obj):
    t = plain(obj)
    counted = set(inv.multiplicity_nodes(t))
    for e in t.edges:
        for x in e:
            if x in counted:
                (y,) = e - {x}
                rhs = inv.outer_product(t, e, x) * inv.branch_sum(t, x, e) + t.q(e, x) * inv.branch_sum(t, y, e)
                assert inv.node_multiplicity(t, x) == rhs


@given(trees())
def test_table_and_path_weight_multiplicities_agree(obj):
    t = plain(obj)
    table = inv.multiplicities(t)
    assert table == {x: inv.node_multiplicity(t, x) for x in inv.multiplicity_nodes(t)}


@given(trees())
def test_every_arrow_gcd_is_positive(obj):
    t = plain(obj)
    assert all(inv.arrow_gcd(t, a) >= 1 for a in t.nonzero_arrows)


@given(trees(arrow_decoration_set=(-1, 0, 1)))
def test_unit_arrows_count_towards_f(obj):
    t = plain(obj)
    assert inv.gcd_sum(t) == len(t.nonzero_arrows)


@given(trees())
def test_parity(obj):
    t = plain(obj)
    assert (inv.multiplicity(t) + inv.gcd_sum(t)) % 2 == 0
