"""Incidence structures, partitions, counting functions and unit cuts.

Everything downstream (matroid union, packing, orientation, games) speaks
in terms of these types.  All values are immutable after construction and
every operation here is pure.

Edge and arc identifiers are stable: graphs built from scratch get dense
ids 0..m-1, while derived graphs (contractions, deletions, induced
subgraphs) keep the original ids so that witnesses remain traceable.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import InputError
from .flow import unit_max_flow


class DisjointSet:
    """Union-find over 0..n-1 with union by size."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.size = [1] * n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a: int, b: int) -> bool:
        """Merge the classes of a and b; False if they already coincide."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.size[ra] < self.size[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.size[ra] += self.size[rb]
        return True


def _check_node(v: int, n: int) -> None:
    if not isinstance(v, int) or not 0 <= v < n:
        raise InputError(f"node {v!r} out of range 0..{n - 1}")


@dataclass(frozen=True)
class Graph:
    """Loopless undirected multigraph; edges are (id, u, v) triples."""

    n: int
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.n < 0:
            raise InputError("negative node count")
        seen = set()
        for eid, u, v in self.edges:
            _check_node(u, self.n)
            _check_node(v, self.n)
            if u == v:
                raise InputError(f"loop at node {u} (edge {eid}) is not allowed")
            if eid in seen:
                raise InputError(f"duplicate edge id {eid}")
            seen.add(eid)

    @staticmethod
    def build(n: int, pairs: list[tuple[int, int]] | tuple[tuple[int, int], ...]) -> "Graph":
        """Graph with dense edge ids assigned in input order."""
        return Graph(n, tuple((i, u, v) for i, (u, v) in enumerate(pairs)))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def by_id(self) -> dict[int, tuple[int, int]]:
        return {eid: (u, v) for eid, u, v in self.edges}

    def endpoints(self, eid: int) -> tuple[int, int]:
        return self.by_id[eid]

    @cached_property
    def edge_ids(self) -> tuple[int, ...]:
        return tuple(eid for eid, _, _ in self.edges)

    def degree(self, v: int) -> int:
        return sum((u == v) + (w == v) for _, u, w in self.edges)

    def components(self, edge_ids: set[int] | frozenset[int] | None = None) -> list[frozenset[int]]:
        """Connected components, optionally restricted to a subset of edges."""
        dsu = DisjointSet(self.n)
        for eid, u, v in self.edges:
            if edge_ids is None or eid in edge_ids:
                dsu.union(u, v)
        groups: dict[int, list[int]] = {}
        for v in range(self.n):
            groups.setdefault(dsu.find(v), []).append(v)
        return [frozenset(g) for g in sorted(groups.values())]

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def spanning_subgraph(self, edge_ids) -> bool:
        """True iff the given edges connect all n nodes."""
        dsu = DisjointSet(self.n)
        parts = self.n
        for eid in edge_ids:
            u, v = self.by_id[eid]
            if dsu.union(u, v):
                parts -= 1
        return parts == 1

    def is_forest(self, edge_ids) -> bool:
        dsu = DisjointSet(self.n)
        return all(dsu.union(*self.by_id[eid]) for eid in edge_ids)

    def is_spanning_tree(self, edge_ids) -> bool:
        ids = list(edge_ids)
        return len(ids) == self.n - 1 and self.is_forest(ids) and self.spanning_subgraph(ids)

    def delete_edges(self, edge_ids) -> "Graph":
        drop = set(edge_ids)
        return Graph(self.n, tuple(e for e in self.edges if e[0] not in drop))

    def add_edges(self, pairs) -> "Graph":
        """New graph with extra edges; fresh ids continue past the current maximum."""
        nxt = max(self.edge_ids, default=-1) + 1
        extra = tuple((nxt + i, u, v) for i, (u, v) in enumerate(pairs))
        return Graph(self.n, self.edges + extra)

    def induced(self, nodes) -> tuple["Graph", dict[int, int]]:
        """Subgraph on `nodes` (original edge ids kept) plus the node relabeling."""
        keep = sorted(set(nodes))
        relabel = {v: i for i, v in enumerate(keep)}
        edges = tuple(
            (eid, relabel[u], relabel[v])
            for eid, u, v in self.edges
            if u in relabel and v in relabel
        )
        return Graph(len(keep), edges), relabel


@dataclass(frozen=True)
class Digraph:
    """Loopless directed multigraph; arcs are (id, tail, head) triples."""

    n: int
    arcs: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        seen = set()
        for aid, tail, head in self.arcs:
            _check_node(tail, self.n)
            _check_node(head, self.n)
            if tail == head:
                raise InputError(f"loop at node {tail} (arc {aid}) is not allowed")
            if aid in seen:
                raise InputError(f"duplicate arc id {aid}")
            seen.add(aid)

    @staticmethod
    def build(n: int, pairs) -> "Digraph":
        return Digraph(n, tuple((i, t, h) for i, (t, h) in enumerate(pairs)))

    @property
    def m(self) -> int:
        return len(self.arcs)

    @cached_property
    def by_id(self) -> dict[int, tuple[int, int]]:
        return {aid: (t, h) for aid, t, h in self.arcs}

    def in_degree(self, x) -> int:
        """In-degree of a node or of a node set (arcs entering from outside)."""
        if isinstance(x, int):
            return sum(h == x for _, _, h in self.arcs)
        xs = set(x)
        return sum(h in xs and t not in xs for _, t, h in self.arcs)

    def reverse(self) -> "Digraph":
        return Digraph(self.n, tuple((aid, h, t) for aid, t, h in self.arcs))

    def underlying(self) -> Graph:
        """Undirected multigraph on the same ids."""
        return Graph(self.n, self.arcs)

    def delete_arcs(self, arc_ids) -> "Digraph":
        drop = set(arc_ids)
        return Digraph(self.n, tuple(a for a in self.arcs if a[0] not in drop))


@dataclass(frozen=True)
class MixedGraph:
    """Directed part A plus undirected part E; the two id spaces are separate."""

    n: int
    arcs: tuple[tuple[int, int, int], ...]
    edges: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        Digraph(self.n, self.arcs)
        Graph(self.n, self.edges)

    @staticmethod
    def build(n: int, arc_pairs, edge_pairs) -> "MixedGraph":
        return MixedGraph(
            n,
            tuple((i, t, h) for i, (t, h) in enumerate(arc_pairs)),
            tuple((i, u, v) for i, (u, v) in enumerate(edge_pairs)),
        )

    def directed_part(self) -> Digraph:
        return Digraph(self.n, self.arcs)

    def undirected_part(self) -> Graph:
        return Graph(self.n, self.edges)


@dataclass(frozen=True)
class Partition:
    """Ordered family of disjoint nonempty node blocks covering 0..n-1.

    Canonical form: blocks sorted by their smallest element.  `blocks` must
    already be canonical; use `from_blocks` for arbitrary input.
    """

    n: int
    blocks: tuple[frozenset[int], ...]

    def __post_init__(self):
        seen: set[int] = set()
        for block in self.blocks:
            if not block:
                raise InputError("empty block in partition")
            for v in block:
                _check_node(v, self.n)
                if v in seen:
                    raise InputError(f"node {v} appears in two blocks")
                seen.add(v)
        if len(seen) != self.n:
            raise InputError("partition does not cover all nodes")
        mins = [min(b) for b in self.blocks]
        if mins != sorted(mins):
            raise InputError("blocks not in canonical order (sort by smallest element)")

    @staticmethod
    def from_blocks(n: int, blocks) -> "Partition":
        materialized = [frozenset(b) for b in blocks]
        if any(not b for b in materialized):
            raise InputError("empty block in partition")
        return Partition(n, tuple(sorted(materialized, key=min)))

    @staticmethod
    def singletons(n: int) -> "Partition":
        return Partition(n, tuple(frozenset([v]) for v in range(n)))

    @staticmethod
    def trivial(n: int) -> "Partition":
        return Partition(n, (frozenset(range(n)),))

    def __len__(self) -> int:
        return len(self.blocks)

    @cached_property
    def block_index(self) -> dict[int, int]:
        idx = {}
        for i, block in enumerate(self.blocks):
            for v in block:
                idx[v] = i
        return idx

    def cross_edges(self, graph: Graph) -> list[int]:
        """Edge ids with endpoints in different blocks, ascending."""
        bi = self.block_index
        return sorted(eid for eid, u, v in graph.edges if bi[u] != bi[v])

    def deficit(self, graph: Graph, k: int) -> int:
        """k-deficit: (k(|P|-1) - cross-count)+ ."""
        cross, _ = partition_stats(graph, self)
        return max(0, k * (len(self) - 1) - cross)

    def as_lists(self) -> list[list[int]]:
        return [sorted(b) for b in self.blocks]


@dataclass(frozen=True)
class CutCertificate:
    """A node set X whose cut value violates a required bound."""

    node_set: frozenset[int]
    required: int
    actual: int

    def __post_init__(self):
        if self.actual >= self.required:
            raise InputError("not a violation: actual >= required")


def partition_stats(graph: Graph, partition: Partition) -> tuple[int, tuple[int, ...]]:
    """Cross-edge count and per-block induced edge counts.

    The identity cross + sum(induced) == m always holds.
    """
    if partition.n != graph.n:
        raise InputError("partition is over a different node set")
    bi = partition.block_index
    induced = [0] * len(partition)
    cross = 0
    for _, u, v in graph.edges:
        if bi[u] == bi[v]:
            induced[bi[u]] += 1
        else:
            cross += 1
    return cross, tuple(induced)


def contract(graph: Graph, partition: Partition) -> Graph:
    """One node per block; cross-edges keep their ids, induced edges vanish."""
    if partition.n != graph.n:
        raise InputError("partition is over a different node set")
    bi = partition.block_index
    edges = tuple(
        (eid, bi[u], bi[v]) for eid, u, v in graph.edges if bi[u] != bi[v]
    )
    return Graph(len(partition), edges)


def min_in_cut(digraph: Digraph, root: int, t: int) -> tuple[int, frozenset[int]]:
    """Menger: max arc-disjoint root->t dipaths and a set X achieving the min.

    Returns (value, X) with t in X, root not in X, and in-degree(X) == value.
    """
    _check_node(root, digraph.n)
    _check_node(t, digraph.n)
    if root == t:
        raise InputError("root and t must differ")
    arcs = [(tail, head) for _, tail, head in digraph.arcs]
    res = unit_max_flow(digraph.n, arcs, root, t)
    return res.value, res.cut(digraph.n)


def components_partition(graph: Graph, edge_ids=None) -> Partition:
    """Partition of V into connected components of (V, edge subset)."""
    return Partition.from_blocks(graph.n, graph.components(edge_ids))


def all_node_subsets(n: int, proper: bool = True, nonempty: bool = True):
    """Subsets of 0..n-1 in size-then-lex order; exponential, test-scale only."""
    lo = 1 if nonempty else 0
    hi = n - 1 if proper else n
    for r in range(lo, hi + 1):
        for combo in itertools.combinations(range(n), r):
            yield frozenset(combo)
