"""Plain union-find, kept as an independent check on component labels."""

from __future__ import annotations

__all__ = ["UnionFind", "components_by_union_find"]


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, a: int) -> int:
        root = a
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[a] != root:
            self.parent[a], a = root, self.parent[a]
        return root

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1


def components_by_union_find(*perms) -> list[int]:
    """Component label per index, numbered by first occurrence."""
    n = len(perms[0])
    uf = UnionFind(n)
    for p in perms:
        for i, j in enumerate(p):
            uf.union(i, int(j))
    relabel: dict[int, int] = {}
    return [relabel.setdefault(uf.find(i), len(relabel)) for i in range(n)]
