"""Orientation constructions and checkers bridging the undirected and
directed worlds.

Rooted k-arc-connected orientations come straight from a tree packing:
orient each tree away from the root, point the leftovers lower-to-higher,
and verify with cut probes.  The general (k,l) and hypergraph orientation
constructions are exhaustive at desk scale only; the decisions themselves
stay exact through the partition conditions.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass

from .core import Digraph, Graph, Partition, min_in_cut
from .errors import InputError, InstanceTooLargeError, InternalCertificateError
from .forests import DeficientPartition, TreePacking, check_partition_connected, pack_spanning_trees
from .hypergraphs import Dypergraph, HyperDeficientPartition, Hypergraph, pack_hypertrees

ORIENTATION_SEARCH_EDGES = 12
ORIENTATION_SEARCH_NODES = 10
HYPER_PARTITION_CAP = 12


def _orient_tree_away(graph: Graph, tree_ids, root: int) -> dict[int, tuple[int, int]]:
    """Parent-to-child direction for every tree edge, by BFS from the root."""
    adjacency: dict[int, list[tuple[int, int]]] = {}
    for eid in tree_ids:
        u, v = graph.by_id[eid]
        adjacency.setdefault(u, []).append((eid, v))
        adjacency.setdefault(v, []).append((eid, u))
    oriented: dict[int, tuple[int, int]] = {}
    seen = {root}
    queue = deque([root])
    while queue:
        u = queue.popleft()
        for eid, v in sorted(adjacency.get(u, [])):
            if v not in seen:
                seen.add(v)
                oriented[eid] = (u, v)
                queue.append(v)
    if len(oriented) != len(tuple(tree_ids)):
        raise InternalCertificateError("tree orientation did not reach every edge")
    return oriented


def orient_rooted_k(graph: Graph, root: int, k: int):
    """Rooted k-arc-connected orientation (k packed trees oriented away
    from the root, leftovers lower-to-higher), or the deficient partition."""
    if graph.n >= 1 and not 0 <= root < graph.n:
        raise InputError("root out of range")
    res = pack_spanning_trees(graph, k)
    if isinstance(res, DeficientPartition):
        return res
    assert isinstance(res, TreePacking)
    directed: dict[int, tuple[int, int]] = {}
    for tree in res.trees:
        directed.update(_orient_tree_away(graph, tree, root))
    arcs = []
    for eid, u, v in sorted(graph.edges):
        tail, head = directed.get(eid, (min(u, v), max(u, v)))
        arcs.append((eid, tail, head))
    oriented = Digraph(graph.n, tuple(arcs))
    for v in range(graph.n):
        if v != root and min_in_cut(oriented, root, v)[0] < k:
            raise InternalCertificateError("orientation failed its cut probes")
    return oriented


@dataclass(frozen=True)
class KLOrientationReport:
    connected: bool
    orientation: Digraph | None
    witness: DeficientPartition | None
    construction_skipped: bool = False


def _rooted_kl_ok(digraph: Digraph, root: int, k: int, l: int) -> bool:
    """rho(X) >= k and rho(V-X) >= l for all nonempty X avoiding the root."""
    for v in range(digraph.n):
        if v == root:
            continue
        if k > 0 and min_in_cut(digraph, root, v)[0] < k:
            return False
        if l > 0 and min_in_cut(digraph.reverse(), root, v)[0] < l:
            return False
    return True


def check_orientation_kl(graph: Graph, root: int, k: int, l: int) -> KLOrientationReport:
    """Rooted (k,l)-arc-connected orientability: decided exactly through
    (k,l)-partition-connectivity; an explicit orientation is found by
    backtracking over edge directions on small instances only."""
    if graph.n >= 1 and not 0 <= root < graph.n:
        raise InputError("root out of range")
    ok, witness = check_partition_connected(graph, k, l)
    if not ok:
        return KLOrientationReport(False, None, witness)
    if l == 0:
        oriented = orient_rooted_k(graph, root, k)
        assert isinstance(oriented, Digraph)
        return KLOrientationReport(True, oriented, None)
    if graph.m > ORIENTATION_SEARCH_EDGES or graph.n > ORIENTATION_SEARCH_NODES:
        return KLOrientationReport(True, None, None, construction_skipped=True)
    edges = sorted(graph.edges)
    for choices in itertools.product((0, 1), repeat=len(edges)):
        arcs = tuple(
            (eid, (u, v)[c], (v, u)[c]) for (eid, u, v), c in zip(edges, choices)
        )
        candidate = Digraph(graph.n, arcs)
        if _rooted_kl_ok(candidate, root, k, l):
            return KLOrientationReport(True, candidate, None)
    raise InternalCertificateError("no orientation found although the condition holds")


def orient_hypergraph_rooted_k(hypergraph: Hypergraph, root: int, k: int):
    """Out-rooted k-arc-connected orientation of a hypergraph via k packed
    spanning hypertrees (heads point away from the root along each
    trimming), or the deficient partition."""
    if hypergraph.n >= 1 and not 0 <= root < hypergraph.n:
        raise InputError("root out of range")
    res = pack_hypertrees(hypergraph, k)
    if isinstance(res, HyperDeficientPartition):
        return res
    heads: dict[int, int] = {}
    for tree, trimming in zip(res.trees, res.trimmings):
        pair_graph = Graph(hypergraph.n, tuple(trimming.pairs))
        oriented = _orient_tree_away(pair_graph, tree, root)
        for hid, (_, child) in oriented.items():
            heads[hid] = child
    entries = []
    for hid, members in sorted(hypergraph.hyperedges):
        entries.append((hid, members, heads.get(hid, min(members))))
    dyper = Dypergraph(hypergraph.n, tuple(entries))
    if hypergraph.n <= 16:
        from .arborescences import check_dypergraph_decomposition

        ok, _ = check_dypergraph_decomposition(dyper, root, k)
        if not ok:
            raise InternalCertificateError("hypergraph orientation failed cut checks")
    return dyper


@dataclass(frozen=True)
class HyperOrientationReport:
    orientable: bool
    witness: Partition | None
    failed_condition: str | None  # "crossing" or "weak"


def check_hyper_orientation(hypergraph: Hypergraph, root: int, k: int, l: int) -> HyperOrientationReport:
    """Rooted (k,l)-arc-connected orientability of a hypergraph.

    For l <= k the crossing condition e_H(P) >= k(|P|-1)+l over all
    partitions decides; for l > k the weak-partition count
    sum_Z (d_P(Z)-1) >= l(|P|-1)+k must hold as well.  The root plays no
    role in the conditions.  Full partition enumeration (hard cap).
    """
    from .testkit import set_partitions

    if hypergraph.n >= 1 and not 0 <= root < hypergraph.n:
        raise InputError("root out of range")
    if k < 0 or l < 0:
        raise InputError("k and l must be non-negative")
    if hypergraph.n > HYPER_PARTITION_CAP:
        raise InstanceTooLargeError(
            f"orientation checker enumerates partitions; n <= {HYPER_PARTITION_CAP}"
        )
    for partition in set_partitions(hypergraph.n):
        if len(partition) < 2:
            continue
        bi = partition.block_index
        crossing = 0
        weak_total = 0
        for _, members in hypergraph.hyperedges:
            touched = len({bi[v] for v in members})
            if touched >= 2:
                crossing += 1
            weak_total += touched - 1
        if crossing < k * (len(partition) - 1) + l:
            return HyperOrientationReport(False, partition, "crossing")
        if l > k and weak_total < l * (len(partition) - 1) + k:
            return HyperOrientationReport(False, partition, "weak")
    return HyperOrientationReport(True, None, None)
