"""Containment trees over manipulated regions.

New regions attach under the deepest existing node that fully contains
them (ties broken by larger area, then smaller id). The root represents
the full image domain.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import (CannotRemoveRoot, DimensionMismatch, EmptyRegion,
                     InvalidDimensions, NotALeaf, UnknownNode)
from .masks import RegionMask, is_subset

ROOT_ID = 0


@dataclass
class TreeNode:
    id: int
    region: RegionMask
    parent: int | None  # None for the root
    children: list[int] = field(default_factory=list)
    depth: int = 0

    @property
    def area(self) -> int:
        return self.region.area

    @property
    def is_root(self) -> bool:
        return self.parent is None


class ManipulationTree:
    """Rooted containment hierarchy of manipulated regions.

    Single-owner mutable value during construction; queries are safe
    concurrently once construction is done.
    """

    def __init__(self, width: int, height: int):
        if width < 1 or height < 1:
            raise InvalidDimensions(f"tree dimensions must be >= 1, got {width}x{height}")
        self.width = width
        self.height = height
        root = TreeNode(ROOT_ID, RegionMask.full(width, height), parent=None)
        self.nodes: dict[int, TreeNode] = {ROOT_ID: root}
        self.insertion_order: list[int] = []
        self._next_id = ROOT_ID + 1

    @property
    def root(self) -> TreeNode:
        return self.nodes[ROOT_ID]

    def node(self, node_id: int) -> TreeNode:
        try:
            return self.nodes[node_id]
        except KeyError:
            raise UnknownNode(f"no node with id {node_id}") from None

    def non_root_ids(self) -> list[int]:
        return [i for i in self.nodes if i != ROOT_ID]

    def insert_region(self, r: RegionMask) -> int:
        """Add a region under its deepest fully-containing node.

        The parent is the lexicographic (depth, area) maximum over all
        existing nodes whose region contains r; remaining ties go to the
        smallest node id. Returns the new node's id.
        """
        if r.shape != (self.height, self.width):
            raise DimensionMismatch(
                f"region shape {r.shape} does not match tree grid "
                f"{(self.height, self.width)}")
        if r.is_empty:
            raise EmptyRegion("cannot insert an empty region")
        parent = self._find_parent(r)
        node_id = self._next_id
        self._next_id += 1
        node = TreeNode(node_id, r, parent=parent.id, depth=parent.depth + 1)
        self.nodes[node_id] = node
        parent.children.append(node_id)
        self.insertion_order.append(node_id)
        return node_id

    def _find_parent(self, r: RegionMask) -> TreeNode:
        best = None
        for node_id in sorted(self.nodes):
            cand = self.nodes[node_id]
            if not is_subset(r, cand.region):
                continue
            if best is None or (cand.depth, cand.area) > (best.depth, best.area):
                best = cand
        assert best is not None  # the root contains everything
        return best

    def leaves(self) -> set[int]:
        """Ids of all childless nodes; the root only when it is alone."""
        return {i for i, n in self.nodes.items() if not n.children}

    def remove_leaf(self, node_id: int) -> "ManipulationTree":
        """Remove a non-root leaf; the rest of the tree is untouched."""
        node = self.node(node_id)
        if node.is_root:
            raise CannotRemoveRoot("the root cannot be removed")
        if node.children:
            raise NotALeaf(f"node {node_id} has children {node.children}")
        self.nodes[node.parent].children.remove(node_id)
        del self.nodes[node_id]
        self.insertion_order = [i for i in self.insertion_order if i != node_id]
        return self

    def copy(self) -> "ManipulationTree":
        """Structural copy; regions are shared (they are immutable)."""
        dup = ManipulationTree(self.width, self.height)
        for node in self.nodes.values():
            dup.nodes[node.id] = TreeNode(node.id, node.region, node.parent,
                                          list(node.children), node.depth)
        dup.insertion_order = list(self.insertion_order)
        dup._next_id = self._next_id
        return dup

    def union_region(self) -> RegionMask:
        """Union of every non-root node region."""
        acc = np.zeros((self.height, self.width), dtype=bool)
        for node_id in self.non_root_ids():
            acc |= self.nodes[node_id].region.member
        return RegionMask(acc)

    def check_invariants(self) -> list[str]:
        """Structural self-check; returns a list of violation messages."""
        problems = []
        for node in self.nodes.values():
            if node.is_root:
                if node.depth != 0:
                    problems.append("root depth is not 0")
                continue
            if node.parent not in self.nodes:
                problems.append(f"node {node.id} has unknown parent {node.parent}")
                continue
            parent = self.nodes[node.parent]
            if node.id not in parent.children:
                problems.append(f"node {node.id} missing from parent {parent.id} child list")
            if node.depth != parent.depth + 1:
                problems.append(f"node {node.id} depth {node.depth} != parent depth + 1")
            if not is_subset(node.region, parent.region):
                problems.append(f"node {node.id} region not contained in parent {parent.id}")
        child_edges = sum(len(n.children) for n in self.nodes.values())
        if child_edges != len(self.nodes) - 1:
            problems.append("child counts do not sum to |nodes| - 1")
        return problems


def new_tree(width: int, height: int) -> ManipulationTree:
    """Tree containing only the root, whose region is the full grid."""
    return ManipulationTree(width, height)
