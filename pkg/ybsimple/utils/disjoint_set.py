"""Disjoint-set structure implementing the union-find strategy."""
from typing import List


class DisjointSet:
    """Disjoint-set structure with path compression and union by rank."""

    def __init__(self, count: int):
        """
        Create a disjoint-set structure.

        Elements range from 0 to :param:`count` − 1, each initially in its
        own singleton block.

        :param count: number of elements in the structure
        """
        self.parent = list(range(count))
        self.rank = [0] * count
        self.groups = count

    def find(self, element: int) -> int:
        """
        Identify the block to which an element belongs.

        :param element: element to test
        :returns: canonical element representing the block
        """
        root = element
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[element] != root:
            self.parent[element], element = root, self.parent[element]
        return root

    def unite(self, first: int, second: int) -> bool:
        """
        Unite the blocks of two elements.

        :returns: false if both were already in the same block
        """
        rep_first = self.find(first)
        rep_second = self.find(second)

        if rep_first == rep_second:
            return False

        if self.rank[rep_first] == self.rank[rep_second]:
            self.rank[rep_first] += 1
            self.parent[rep_second] = rep_first
        elif self.rank[rep_first] > self.rank[rep_second]:
            self.parent[rep_second] = rep_first
        else:
            self.parent[rep_first] = rep_second

        self.groups -= 1
        return True

    def __len__(self) -> int:
        """Get the number of blocks in this partition."""
        return self.groups

    def labels(self) -> List[int]:
        """Canonical block labels: blocks numbered by their smallest element."""
        numbering = {}
        result = []
        for i in range(len(self.parent)):
            root = self.find(i)
            if root not in numbering:
                numbering[root] = len(numbering)
            result.append(numbering[root])
        return result

    def to_list(self) -> List[List[int]]:
        """Create a list of all blocks, ordered by smallest element."""
        result: List[List[int]] = [[] for _ in range(self.groups)]
        for i, label in enumerate(self.labels()):
            result[label].append(i)
        return result

    def __repr__(self) -> str:
        return (
            "DisjointSet({"
            + ", ".join(f"{{{', '.join(map(str, group))}}}" for group in self.to_list())
            + "})"
        )
