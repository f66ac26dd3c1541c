"""Subset-queryable store of banned rule sets.

Sets are stored as sorted sequences in a trie. A query walks the trie and
only follows children whose key occurs in the query set, skipping over
query elements freely, so it visits at most the stored prefixes that are
themselves subsets of the query.
"""
from __future__ import annotations

from typing import Hashable, Iterable


class _Node:
    __slots__ = ("children", "terminal")

    def __init__(self):
        self.children: dict = {}
        self.terminal = False


class BannedPrefixTree:
    """Answers "is some stored set a subset of this one?"."""

    def __init__(self, sets: Iterable[Iterable[Hashable]] = ()):
        self._root = _Node()
        self._size = 0
        for s in sets:
            self.insert(s)

    def __len__(self) -> int:
        return self._size

    def insert(self, items: Iterable[Hashable]) -> None:
        node = self._root
        for x in sorted(set(items)):
            nxt = node.children.get(x)
            if nxt is None:
                nxt = node.children[x] = _Node()
            node = nxt
        if not node.terminal:
            node.terminal = True
            self._size += 1

    def exists_subset(self, items: Iterable[Hashable]) -> bool:
        query = sorted(set(items))
        n = len(query)
        stack = [(self._root, 0)]
        while stack:
            node, start = stack.pop()
            if node.terminal:
                return True
            if not node.children:
                continue
            for i in range(start, n):
                child = node.children.get(query[i])
                if child is not None:
                    stack.append((child, i + 1))
        return False

    def __contains__(self, items) -> bool:
        return self.exists_subset(items)


def banned_insert(tree: BannedPrefixTree, v) -> None:
    tree.insert(getattr(v, "rules", v))


def exists_subset(tree: BannedPrefixTree, v) -> bool:
    return tree.exists_subset(getattr(v, "rules", v))
