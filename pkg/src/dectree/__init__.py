"""Exact integer invariants of decorated trees: multiplicities, the M/F
bookkeeping, simplification, splitting, rooted decompositions and the genus
formula, plus a randomized checker for the identities relating them."""

from .genus import genus_formula_check, genus_ledger, reverse, root_decompose
from .invariants import (
    branch_sum,
    delta,
    edge_determinant,
    gcd_sum,
    genus_and_delta,
    multiplicity,
    node_multiplicity,
    path_determinant,
)
from .rooted import RootedTree, degree, subtree
from .simplify import normalize
from .split import ensplit_at_edge, ensplit_at_vertex, split_at_edge, split_at_vertex
from .textio import ParseError, parse, serialize, to_dot
from .treecore import DecoratedTree, InvariantBroken, TreeError, check_valid, edge, validate

__version__ = "0.1.0"

__all__ = [
    "DecoratedTree",
    "InvariantBroken",
    "ParseError",
    "RootedTree",
    "TreeError",
    "branch_sum",
    "check_valid",
    "degree",
    "delta",
    "edge",
    "edge_determinant",
    "ensplit_at_edge",
    "ensplit_at_vertex",
    "gcd_sum",
    "genus_and_delta",
    "genus_formula_check",
    "genus_ledger",
    "multiplicity",
    "node_multiplicity",
    "normalize",
    "parse",
    "path_determinant",
    "reverse",
    "root_decompose",
    "serialize",
    "split_at_edge",
    "split_at_vertex",
    "subtree",
    "to_dot",
    "validate",
]
