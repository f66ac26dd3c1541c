"""Exhaustive layer counts of the canonical hypothesis lattice.

Layer d holds every canonical core-rule set of size d reachable from the
empty set by rooted adjacency. The counts give the "total" column of the
growth table: how many vertices a search without pruning would meet.
"""
from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from .grammar import Vertex, adjacent_rules, canonical_key, canonicalize


@dataclass
class LayerCounts:
    exact: dict  # depth -> exact count
    lower_bound: int = 0  # count of the last exact layer; later layers are at least this
    complete_to: int = 0  # deepest exactly counted depth

    def total(self, depth: int) -> Optional[int]:
        return self.exact.get(depth)

    def at_least(self, depth: int) -> int:
        """A lower bound valid at any depth.

        Adding ``S -> X`` with a fresh ``X`` maps each vertex of one layer to a
        distinct vertex of the next, so layer sizes never decrease.
        """
        if depth in self.exact:
            return self.exact[depth]
        if depth > self.complete_to:
            return self.lower_bound
        return 0


def layer_counts(max_depth: int, max_fresh: int = 2, budget_vertices: int = 200_000, budget_seconds: Optional[float] = None) -> LayerCounts:
    """Count layers 0..max_depth, stopping early once a layer would exceed the budget."""
    layer = {canonical_key(()): Vertex()}
    exact = {0: 1}
    t0 = time.time()
    done = 0
    for d in range(1, max_depth + 1):
        nxt: dict = {}
        over = False
        for v in layer.values():
            for r in adjacent_rules(v, max_fresh=max_fresh, rooted=True):
                u = v.with_rule(r)
                key = canonical_key(u.rules)
                if key not in nxt:
                    nxt[key] = canonicalize(u)
                    if len(nxt) > budget_vertices:
                        over = True
                        break
            if over or (budget_seconds is not None and time.time() - t0 > budget_seconds):
                over = True
                break
        if over:
            break
        exact[d] = len(nxt)
        done = d
        layer = nxt
    return LayerCounts(exact, exact[done], done)
