"""Rooted trees with optional labels and branch lengths, plus Newick I/O.

The parser is a recursive-descent one over the grammar

    tree    := subtree ";"
    subtree := "(" subtree ("," subtree)* ")" tail | tail
    tail    := [label] [":" number]

Labels may be quoted with single quotes ('' escapes a quote) and then may
contain structural characters. Whitespace outside quotes is ignored.
Branch lengths are optional and stored as None when absent, never 0 —
tree plots must distinguish cladogram from phylogram.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import DuplicateLeafLabel, InvalidTree, NewickSyntaxError

_SPECIAL = set("(),:;'\"[]")


@dataclass(frozen=True)
class TreeNode:
    id: int
    label: Optional[str] = None
    parent: Optional[int] = None
    branch_length: Optional[float] = None


@dataclass(frozen=True)
class Tree:
    nodes: tuple[TreeNode, ...]
    root: int

    def __post_init__(self):
        ids = {n.id for n in self.nodes}
        if len(ids) != len(self.nodes):
            raise InvalidTree("duplicate node ids")
        roots = [n for n in self.nodes if n.parent is None]
        if len(roots) != 1 or roots[0].id != self.root:
            raise InvalidTree("tree must have exactly one parentless node, the root")
        by_id = {n.id: n for n in self.nodes}
        for n in self.nodes:
            if n.parent is not None and n.parent not in ids:
                raise InvalidTree(f"node {n.id} has unknown parent {n.parent}")
            if n.branch_length is not None and n.branch_length < 0:
                raise InvalidTree(f"node {n.id} has negative branch length")
        # acyclicity: walking up from every node must reach the root
        for n in self.nodes:
            seen = set()
            cur = n
            while cur.parent is not None:
                if cur.id in seen:
                    raise InvalidTree("cycle in parent links")
                seen.add(cur.id)
                cur = by_id[cur.parent]
        labels = [n.label for n in self.nodes if self.is_leaf(n.id) and n.label is not None]
        if len(labels) != len(set(labels)):
            raise DuplicateLeafLabel("leaf labels must be unique")

    @property
    def _children(self) -> dict[int, list[int]]:
        kids: dict[int, list[int]] = {n.id: [] for n in self.nodes}
        for n in self.nodes:
            if n.parent is not None:
                kids[n.parent].append(n.id)
        return kids

    def node(self, node_id: int) -> TreeNode:
        for n in self.nodes:
            if n.id == node_id:
                return n
        raise KeyError(node_id)

    def has_node(self, node_id: int) -> bool:
        return any(n.id == node_id for n in self.nodes)

    def children(self, node_id: int) -> list[int]:
        return self._children[node_id]

    def is_leaf(self, node_id: int) -> bool:
        return not self._children[node_id]

    def leaves(self) -> list[int]:
        """Leaf ids in left-to-right (parse) order."""
        order = []
        kids = self._children

        def walk(nid):
            if kids[nid]:
                for c in kids[nid]:
                    walk(c)
            else:
                order.append(nid)

        walk(self.root)
        return order

    def leaf_labels(self) -> dict[str, int]:
        return {self.node(i).label: i for i in self.leaves() if self.node(i).label is not None}

    def descendants(self, node_id: int) -> list[int]:
        """node_id plus everything below it, preorder."""
        kids = self._children
        out = []
        stack = [node_id]
        while stack:
            nid = stack.pop()
            out.append(nid)
            stack.extend(reversed(kids[nid]))
        return out

    def has_branch_lengths(self) -> bool:
        return all(n.branch_length is not None for n in self.nodes if n.parent is not None)

    def to_canonical(self):
        return {
            "root": self.root,
            "nodes": [
                {"id": n.id, "label": n.label, "parent": n.parent,
                 "branch_length": n.branch_length}
                for n in sorted(self.nodes, key=lambda n: n.id)
            ],
        }


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0  # 0-based; errors report 1-based

    def error(self, expected: str):
        raise NewickSyntaxError(self.pos + 1, expected)

    def skip_ws(self):
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> Optional[str]:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else None

    def take(self, ch: str):
        if self.peek() != ch:
            self.error(repr(ch))
        self.pos += 1

    def label(self) -> Optional[str]:
        c = self.peek()
        if c == "'":
            self.pos += 1
            out = []
            while True:
                if self.pos >= len(self.text):
                    self.error("closing quote")
                c = self.text[self.pos]
                if c == "'":
                    if self.pos + 1 < len(self.text) and self.text[self.pos + 1] == "'":
                        out.append("'")
                        self.pos += 2
                        continue
                    self.pos += 1
                    return "".join(out)
                out.append(c)
                self.pos += 1
        out = []
        while self.pos < len(self.text):
            c = self.text[self.pos]
            if c in _SPECIAL or c.isspace():
                break
            out.append(c)
            self.pos += 1
        return "".join(out) or None

    def number(self) -> float:
        self.skip_ws()
        start = self.pos
        allowed = set("0123456789+-.eE")
        while self.pos < len(self.text) and self.text[self.pos] in allowed:
            self.pos += 1
        try:
            return float(self.text[start:self.pos])
        except ValueError:
            self.pos = start
            self.error("branch length")

    def subtree(self, parent: Optional[int], nodes: list[dict]) -> int:
        nid = len(nodes)
        nodes.append({"id": nid, "label": None, "parent": parent, "branch_length": None})
        if self.peek() == "(":
            self.take("(")
            self.subtree(nid, nodes)
            while self.peek() == ",":
                self.take(",")
                self.subtree(nid, nodes)
            self.take(")")
        nodes[nid]["label"] = self.label()
        if self.peek() == ":":
            self.take(":")
            nodes[nid]["branch_length"] = self.number()
        return nid

    def parse(self) -> Tree:
        if not self.text.strip():
            self.error("subtree")
        nodes: list[dict] = []
        root = self.subtree(None, nodes)
        self.take(";")
        self.skip_ws()
        if self.pos != len(self.text):
            self.error("end of input")
        return Tree(nodes=tuple(TreeNode(**n) for n in nodes), root=root)


def parse_newick(text: str) -> Tree:
    return _Parser(text).parse()


def _quote(label: str) -> str:
    if label and not any(c in _SPECIAL or c.isspace() for c in label):
        return label
    return "'" + label.replace("'", "''") + "'"


def serialize_newick(tree: Tree) -> str:
    kids = tree._children

    def render(nid: int) -> str:
        n = tree.node(nid)
        inner = ""
        if kids[nid]:
            inner = "(" + ",".join(render(c) for c in kids[nid]) + ")"
        s = inner + (_quote(n.label) if n.label is not None else "")
        if n.branch_length is not None:
            s += ":" + repr(float(n.branch_length))
        return s

    return render(tree.root) + ";"
