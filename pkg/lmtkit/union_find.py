"""Disjoint sets over hashable items with deterministic class representatives."""

from typing import Dict, Hashable, Iterable, List


def order_key(item) -> str:
    """Total order used to pick representatives; stable across runs."""
    return repr(item)


class DisjointSet:
    """Union by rank with path compression.

    The representative reported by ``canonical`` is the smallest member of the
    class under ``order_key``, independent of the order of unions.
    """

    def __init__(self, items: Iterable[Hashable] = ()):
        self._parent: Dict[Hashable, Hashable] = {}
        self._rank: Dict[Hashable, int] = {}
        self._least: Dict[Hashable, Hashable] = {}
        for item in items:
            self.add(item)

    def __contains__(self, item):
        return item in self._parent

    def __len__(self):
        return len(self._parent)

    def add(self, item):
        if item not in self._parent:
            self._parent[item] = item
            self._rank[item] = 0
            self._least[item] = item

    def find(self, item):
        root = item
        while self._parent[root] != root:
            root = self._parent[root]
        while self._parent[item] != root:
            self._parent[item], item = root, self._parent[item]
        return root

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self._rank[ra] < self._rank[rb]:
            ra, rb = rb, ra
        self._parent[rb] = ra
        if self._rank[ra] == self._rank[rb]:
            self._rank[ra] += 1
        least_a, least_b = self._least[ra], self._least[rb]
        self._least[ra] = least_a if order_key(least_a) <= order_key(least_b) else least_b
        return True

    def canonical(self, item):
        return self._least[self.find(item)]

    def same(self, a, b) -> bool:
        return self.find(a) == self.find(b)

    def classes(self) -> List[List[Hashable]]:
        groups: Dict[Hashable, List[Hashable]] = {}
        for item in self._parent:
            groups.setdefault(self.find(item), []).append(item)
        out = [sorted(members, key=order_key) for members in groups.values()]
        return sorted(out, key=lambda members: order_key(members[0]))
