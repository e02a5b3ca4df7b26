"""Augmenting-path max-flow on small integer-capacity networks.

Arc order is the tie-breaker everywhere: BFS scans residual arcs in the
order they were added, so flows, cuts and therefore every certificate
derived from them are reproducible.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass


@dataclass(frozen=True)
class FlowResult:
    value: int
    # Residual-reachable set from the source; None when the search stopped
    # early at `cutoff`, in which case it is not a minimum cut.
    reachable: frozenset[int] | None

    def cut(self, n: int) -> frozenset[int]:
        """Sink side of the minimum cut (complement of the reachable set)."""
        if self.reachable is None:
            raise ValueError("flow search stopped early; no minimum cut available")
        return frozenset(range(n)) - self.reachable


class FlowNetwork:
    """Mutable residual network; nodes are 0..n-1, arcs are added explicitly."""

    def __init__(self, n: int):
        self.n = n
        self._head: list[int] = []
        self._cap: list[int] = []
        self._adj: list[list[int]] = [[] for _ in range(n)]

    def add_arc(self, tail: int, head: int, cap: int = 1) -> int:
        """Add arc with capacity `cap`; returns its slot id."""
        slot = len(self._head)
        self._head.append(head)
        self._cap.append(cap)
        self._adj[tail].append(slot)
        # paired reverse slot
        self._head.append(tail)
        self._cap.append(0)
        self._adj[head].append(slot + 1)
        return slot

    def max_flow(self, source: int, sink: int, cutoff: int | None = None) -> FlowResult:
        if source == sink:
            raise ValueError("source and sink must differ")
        cap = self._cap
        head = self._head
        adj = self._adj
        value = 0
        while cutoff is None or value < cutoff:
            parent_slot = [-1] * self.n
            parent_slot[source] = -2
            queue = deque([source])
            while queue:
                u = queue.popleft()
                if u == sink:
                    break
                for slot in adj[u]:
                    v = head[slot]
                    if cap[slot] > 0 and parent_slot[v] == -1:
                        parent_slot[v] = slot
                        queue.append(v)
            if parent_slot[sink] == -1:
                reach = frozenset(v for v in range(self.n) if parent_slot[v] != -1)
                return FlowResult(value, reach)
            # unit augmentation along the BFS path
            v = sink
            while v != source:
                slot = parent_slot[v]
                cap[slot] -= 1
                cap[slot ^ 1] += 1
                v = head[slot ^ 1]
            value += 1
        return FlowResult(value, None)


def unit_max_flow(
    n: int,
    arcs: list[tuple[int, int]],
    source: int,
    sink: int,
    cutoff: int | None = None,
) -> FlowResult:
    """Max number of arc-disjoint source->sink paths; arcs taken in list order."""
    net = FlowNetwork(n)
    for tail, head in arcs:
        net.add_arc(tail, head, 1)
    return net.max_flow(source, sink, cutoff)
