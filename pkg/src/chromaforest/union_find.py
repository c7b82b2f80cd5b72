"""Disjoint-set forests used by every component-counting routine."""

from __future__ import annotations


class UnionFind:
    """Union-find with path compression and union by size.

    ``components`` tracks the number of disjoint sets, so counting the
    components of a graph is a matter of uniting its edges.
    """

    __slots__ = ("parent", "size", "components")

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n

    def find(self, x: int) -> int:
        root = x
        parent = self.parent
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the sets of ``a`` and ``b``; return False if already merged."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        return True

    def connected(self, a: int, b: int) -> bool:
        return self.find(a) == self.find(b)


class RollbackUnionFind:
    """Union-find supporting ``undo`` of the most recent successful union.

    No path compression, so every union can be reverted in O(1). Used by
    backtracking searches that add and remove edges in stack order.
    """

    __slots__ = ("parent", "size", "components", "_history")

    def __init__(self, n: int) -> None:
        self.parent = list(range(n))
        self.size = [1] * n
        self.components = n
        self._history: list[int] = []

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            x = parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        self.components -= 1
        self._history.append(rb)
        return True

    def undo(self) -> None:
        rb = self._history.pop()
        ra = self.parent[rb]
        self.parent[rb] = rb
        self.size[ra] -= self.size[rb]
        self.components += 1

    def copy(self) -> RollbackUnionFind:
        clone = RollbackUnionFind(0)
        clone.parent = self.parent[:]
        clone.size = self.size[:]
        clone.components = self.components
        clone._history = self._history[:]
        return clone
