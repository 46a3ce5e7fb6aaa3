"""Plain-text ``.dtree`` format and DOT export.

One declaration per line; ``#`` starts a comment::

    vertex u
    arrow a1 f=1
    edge u a1 qA=3        # qA is the decoration near u, qB near a1
    bundle u n=3          # shorthand for three f=1 arrows at u
    root u
"""

from __future__ import annotations

import re

from .invariants import node_multiplicity
from .rooted import RootedTree
from .treecore import DecoratedTree, TreeError, check_valid, fresh_id, validate


class ParseError(TreeError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


_ID = r"[^\s#=]+"
_INT = r"[+-]?\d+"
_PATTERNS = {
    "vertex": re.compile(rf"vertex\s+(?P<id>{_ID})"),
    "arrow": re.compile(rf"arrow\s+(?P<id>{_ID})\s+f=(?P<f>{_INT})"),
    "edge": re.compile(
        rf"edge\s+(?P<a>{_ID})\s+(?P<b>{_ID})(?:\s+qA=(?P<qa>{_INT}))?(?:\s+qB=(?P<qb>{_INT}))?"
    ),
    "bundle": re.compile(rf"bundle\s+(?P<id>{_ID})\s+n=(?P<n>\d+)"),
    "root": re.compile(rf"root\s+(?P<id>{_ID})"),
}


def parse(text: str, *, check: bool = True) -> DecoratedTree | RootedTree:
    """Read a ``.dtree`` document; a ``root`` line makes the result rooted.

    With ``check=False`` a structurally sound but invalid tree comes back
    plain (its root line ignored) so the caller can list what is wrong.
    """
    vertices: list[str] = []
    arrows: dict[str, int] = {}
    edges: list[tuple[str, str, int, int]] = []
    bundles: list[tuple[int, str, int]] = []
    root: str | None = None
    seen: set[str] = set()

    def declare(lineno: int, node: str) -> None:
        if node in seen:
            raise ParseError(lineno, f"duplicate id {node!r}")
        seen.add(node)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword = line.split()[0]
        pattern = _PATTERNS.get(keyword)
        match = pattern.fullmatch(line) if pattern else None
        if match is None:
            raise ParseError(lineno, f"cannot parse {line!r}")
        if keyword == "vertex":
            declare(lineno, match["id"])
            vertices.append(match["id"])
        elif keyword == "arrow":
            declare(lineno, match["id"])
            arrows[match["id"]] = int(match["f"])
        elif keyword == "edge":
            qa = int(match["qa"]) if match["qa"] is not None else 1
            qb = int(match["qb"]) if match["qb"] is not None else 1
            edges.append((match["a"], match["b"], qa, qb))
        elif keyword == "bundle":
            bundles.append((lineno, match["id"], int(match["n"])))
        else:
            if root is not None:
                raise ParseError(lineno, f"second root {match['id']!r} (already {root!r})")
            root = match["id"]

    for lineno, owner, count in bundles:
        if owner not in vertices:
            raise ParseError(lineno, f"bundle attached to {owner!r}, which is not a vertex")
        for j in range(1, count + 1):
            name = fresh_id(seen, f"{owner}.u{j}")
            seen.add(name)
            arrows[name] = 1
            edges.append((owner, name, 1, 1))

    tree = DecoratedTree.build(vertices, arrows, edges)
    if not check and validate(tree):
        return tree
    check_valid(tree)
    if root is None:
        return tree
    if not tree.is_vertex(root):
        raise TreeError(f"root {root!r} is not a vertex")
    return RootedTree(tree, root)


def serialize(tree: DecoratedTree | RootedTree) -> str:
    """Canonical text: sorted ids, decorations equal to 1 left out, root last."""
    root = None
    if isinstance(tree, RootedTree):
        tree, root = tree.tree, tree.root
    lines = [f"vertex {v}" for v in sorted(tree.vertices)]
    lines += [f"arrow {a} f={f}" for a, f in sorted(tree.arrows.items())]
    for x, y, qx, qy in tree.edge_records():
        parts = [f"edge {x} {y}"]
        if qx != 1:
            parts.append(f"qA={qx}")
        if qy != 1:
            parts.append(f"qB={qy}")
        lines.append(" ".join(parts))
    if root is not None:
        lines.append(f"root {root}")
    return "".join(line + "\n" for line in lines)


def _quote(name: str) -> str:
    return '"' + name.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(tree: DecoratedTree | RootedTree, *, name: str = "tree") -> str:
    """Graphviz text: vertices as circles (filled when their multiplicity is
    zero), arrows as labelled points, both decorations on every edge."""
    root = None
    if isinstance(tree, RootedTree):
        tree, root = tree.tree, tree.root
    out = [f"digraph {_quote(name)} {{", '  node [shape=circle, label="", width=0.2];']
    for v in sorted(tree.vertices):
        attrs = []
        if node_multiplicity(tree, v) == 0:
            attrs.append("style=filled, fillcolor=black")
        if v == root:
            attrs.append(f"xlabel={_quote(v)}")
        out.append(f"  {_quote(v)}" + (f" [{', '.join(attrs)}]" if attrs else "") + ";")
    for a, f in sorted(tree.arrows.items()):
        out.append(f"  {_quote(a)} [shape=plaintext, label={_quote(f'({f})')}];")
    for x, y, qx, qy in tree.edge_records():
        if tree.is_arrow(x) and not tree.is_arrow(y):
            x, y, qx, qy = y, x, qy, qx
        head = "normal" if tree.is_arrow(y) else "none"
        out.append(
            f"  {_quote(x)} -> {_quote(y)} "
            f"[taillabel={_quote(str(qx))}, headlabel={_quote(str(qy))}, arrowhead={head}];"
        )
    out.append("}")
    return "\n".join(out) + "\n"
