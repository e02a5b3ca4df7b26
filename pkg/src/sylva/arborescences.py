"""Rooted connectivity, arborescence packing (weak and strong form),
covering checkers, the mixed-graph checker and the concise
k-edge-connectivity certificate.

The packer grows the k arborescences one frontier arc at a time.  An arc
uv is admissible for tree i when, after assigning it, every set X avoiding
the root still has enough supply: unused arcs entering X plus trees
already reaching into X total at least k.  That inequality is exactly a
min-cut in an auxiliary network with one unit supply node per tree, so
each candidate is screened by a single flow probe.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import CutCertificate, Digraph, Graph, MixedGraph, Partition, min_in_cut
from .errors import InputError, InstanceTooLargeError, InternalCertificateError
from .flow import FlowNetwork
from .forests import DenseSet, ForestCover, decompose_forests
from .hypergraphs import Dypergraph

SUBSET_CHECKER_CAP = 16
PARTITION_CHECKER_CAP = 12


def rooted_connectivity(digraph: Digraph, root: int) -> tuple[int, frozenset[int]]:
    """min over v != root of the root->v cut value, with a minimizing set."""
    if not 0 <= root < digraph.n:
        raise InputError("root out of range")
    if digraph.n < 2:
        raise InputError("rooted connectivity needs at least 2 nodes")
    best = None
    best_set = None
    for v in range(digraph.n):
        if v == root:
            continue
        value, cut = min_in_cut(digraph, root, v)
        if best is None or value < best:
            best, best_set = value, cut
    return best, best_set


@dataclass(frozen=True)
class ArborescencePacking:
    """Arc-disjoint spanning arborescences, one sorted arc-id tuple each."""

    trees: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class ArborescenceDeficiency:
    """Set X with rho_unused(X) + #(partial trees entering X) < k."""

    node_set: frozenset[int]
    unused_in: int
    trees_entering: int
    k: int


def verify_arborescence(digraph: Digraph, root: int, arc_ids, spanning: bool) -> bool:
    """In-degree 0 at the root, 1 elsewhere on covered nodes, all reachable."""
    indeg: dict[int, int] = {}
    covered = {root}
    for aid in arc_ids:
        if aid not in digraph.by_id:
            return False
        tail, head = digraph.by_id[aid]
        indeg[head] = indeg.get(head, 0) + 1
        covered.add(tail)
        covered.add(head)
    if indeg.get(root, 0) != 0:
        return False
    if any(indeg.get(v, 0) != 1 for v in covered if v != root):
        return False
    # reachability from the root inside the tree
    reached = {root}
    arcs = [digraph.by_id[a] for a in arc_ids]
    changed = True
    while changed:
        changed = False
        for tail, head in arcs:
            if tail in reached and head not in reached:
                reached.add(head)
                changed = True
    if reached != covered:
        return False
    return not spanning or covered == set(range(digraph.n))


def verify_arborescence_packing(
    digraph: Digraph, root: int, k: int, packing: ArborescencePacking, seeds=None
) -> bool:
    if len(packing.trees) != k:
        return False
    seen: set[int] = set()
    for i, tree in enumerate(packing.trees):
        ids = set(tree)
        if seen & ids:
            return False
        seen |= ids
        if seeds is not None and not set(seeds[i]) <= ids:
            return False
        if not verify_arborescence(digraph, root, ids, spanning=True):
            return False
    return True


class _Packer:
    def __init__(self, digraph: Digraph, root: int, k: int, seeds):
        self.d = digraph
        self.root = root
        self.k = k
        self.trees: list[list[int]] = [list(s) for s in seeds]
        self.covered: list[set[int]] = []
        used: set[int] = set()
        for i, seed in enumerate(seeds):
            ids = set(seed)
            if ids & used:
                raise InputError("seed arborescences share arcs")
            used |= ids
            if not verify_arborescence(digraph, root, ids, spanning=False):
                raise InputError(f"seed {i} is not a root arborescence")
            nodes = {root}
            for aid in ids:
                tail, head = digraph.by_id[aid]
                nodes.add(tail)
                nodes.add(head)
            self.covered.append(nodes)
        self.unused: set[int] = set(digraph.by_id) - used

    def supply_flow(self, sink: int, merged: int | None = None,
                    skip_arc: int | None = None, extra_cover: tuple[int, int] | None = None):
        """Max flow bounding min over X (sink in X, root/merged outside) of
        unused-arcs-into-X plus trees-touching-X."""
        d, root, k = self.d, self.root, self.k
        # tree supply nodes live after the graph nodes
        net = FlowNetwork(d.n + k)

        def site(v: int) -> int:
            return root if v == merged else v

        for aid in sorted(self.unused):
            if aid == skip_arc:
                continue
            tail, head = d.by_id[aid]
            tail, head = site(tail), site(head)
            if tail != head and head != root:
                net.add_arc(tail, head, 1)
        for j in range(k):
            net.add_arc(root, d.n + j, 1)
            cover = self.covered[j] | (
                {extra_cover[1]} if extra_cover is not None and extra_cover[0] == j else set()
            )
            for v in sorted(cover):
                v = site(v)
                if v != root:
                    net.add_arc(d.n + j, v, 1)
        return net.max_flow(root, sink, cutoff=k)

    def feasible_everywhere(self):
        """None if the strong-form inequality holds for all X, else a witness."""
        for v in range(self.d.n):
            if v == self.root:
                continue
            res = self.supply_flow(v)
            if res.value < self.k:
                x = frozenset(w for w in res.cut(self.d.n + self.k) if w < self.d.n)
                unused_in = sum(
                    self.d.by_id[a][1] in x and self.d.by_id[a][0] not in x
                    for a in self.unused
                )
                entering = sum(bool(x & cov) for cov in self.covered)
                witness = ArborescenceDeficiency(x, unused_in, entering, self.k)
                if unused_in + entering >= self.k:
                    raise InternalCertificateError("deficiency witness fails its bound")
                return witness
        return None

    def admissible(self, aid: int, tree: int) -> bool:
        tail, head = self.d.by_id[aid]
        res = self.supply_flow(head, merged=tail, skip_arc=aid, extra_cover=(tree, head))
        return res.value >= self.k

    def run(self):
        witness = self.feasible_everywhere()
        if witness is not None:
            return witness
        all_nodes = set(range(self.d.n))
        while True:
            active = [i for i in range(self.k) if self.covered[i] != all_nodes]
            if not active:
                break
            progressed = False
            for i in active:
                candidates = sorted(
                    aid
                    for aid in self.unused
                    if self.d.by_id[aid][0] in self.covered[i]
                    and self.d.by_id[aid][1] not in self.covered[i]
                )
                for aid in candidates:
                    if self.admissible(aid, i):
                        self.unused.discard(aid)
                        self.trees[i].append(aid)
                        self.covered[i].add(self.d.by_id[aid][1])
                        progressed = True
                        break
            if not progressed:
                raise InternalCertificateError("no admissible arc despite feasibility")
        return ArborescencePacking(tuple(tuple(sorted(t)) for t in self.trees))


def pack_arborescences(digraph: Digraph, root: int, k: int, seeds=None):
    """k arc-disjoint spanning root-arborescences extending the optional
    seeds, or a node set witnessing the strong-form deficiency."""
    if not 0 <= root < digraph.n:
        raise InputError("root out of range")
    if k < 0:
        raise InputError("k must be non-negative")
    if seeds is None:
        seeds = [[] for _ in range(k)]
    seeds = [list(s) for s in seeds]
    if len(seeds) != k:
        raise InputError("need one seed per requested arborescence")
    if k == 0:
        return ArborescencePacking(())
    if digraph.n == 1:
        return ArborescencePacking(tuple(tuple(sorted(s)) for s in seeds))
    result = _Packer(digraph, root, k, seeds).run()
    if isinstance(result, ArborescencePacking):
        if not verify_arborescence_packing(digraph, root, k, result, seeds):
            raise InternalCertificateError("packing failed re-verification")
    return result


@dataclass(frozen=True)
class DoubledCertificate:
    """k arc-disjoint spanning arborescences in the doubled digraph: the
    concise witness that the undirected graph is k-edge-connected."""

    digraph: Digraph
    packing: ArborescencePacking


def doubled_digraph(graph: Graph) -> Digraph:
    """Each edge e becomes arcs 2e (u->v) and 2e+1 (v->u)."""
    arcs = []
    for eid, u, v in sorted(graph.edges):
        arcs.append((2 * eid, u, v))
        arcs.append((2 * eid + 1, v, u))
    return Digraph(graph.n, tuple(arcs))


def certify_k_edge_connectivity(graph: Graph, k: int, root: int = 0):
    """Packing certificate of k-edge-connectivity, or a cut below k."""
    if k < 0:
        raise InputError("k must be non-negative")
    if graph.n >= 1 and not 0 <= root < graph.n:
        raise InputError("root out of range")
    doubled = doubled_digraph(graph)
    if k == 0 or graph.n <= 1:
        return DoubledCertificate(doubled, ArborescencePacking(tuple(() for _ in range(k))))
    res = pack_arborescences(doubled, root, k)
    if isinstance(res, ArborescencePacking):
        return DoubledCertificate(doubled, res)
    x = res.node_set
    actual = sum((u in x) != (v in x) for _, u, v in graph.edges)
    if actual >= k:
        raise InternalCertificateError("cut certificate fails its bound")
    return CutCertificate(x, k, actual)


def check_arborescence_cover(digraph: Digraph, root: int, k: int):
    """Can the arc set be covered by k spanning root-arborescences?

    (a) every in-degree at most k; (b) for every nonempty X avoiding the
    root, k - rho(X) <= sum over heads of arcs entering X of (k - rho(v)).
    Condition (b) is checked by subset enumeration (hard cap on n).
    """
    if not 0 <= root < digraph.n:
        raise InputError("root out of range")
    if k < 0:
        raise InputError("k must be non-negative")
    if digraph.in_degree(root) > 0:
        raise InputError("no arc may enter the root")
    for v in range(digraph.n):
        if v != root and digraph.in_degree(v) > k:
            return False, ("indegree", v, digraph.in_degree(v))
    if digraph.n > SUBSET_CHECKER_CAP:
        raise InstanceTooLargeError(f"cover checker enumerates subsets; n <= {SUBSET_CHECKER_CAP}")
    others = [v for v in range(digraph.n) if v != root]
    indeg = [digraph.in_degree(v) for v in range(digraph.n)]
    for r in range(1, len(others) + 1):
        for combo in itertools.combinations(others, r):
            x = frozenset(combo)
            heads = {head for _, tail, head in digraph.arcs if head in x and tail not in x}
            lhs = k - digraph.in_degree(x)
            rhs = sum(k - indeg[v] for v in heads)
            if lhs > rhs:
                return False, ("deficit", x, lhs, rhs)
    return True, None


def check_branching_cover(digraph: Digraph, k: int):
    """Can the arc set be covered by k branchings?  (a) in-degrees at most
    k; (b) the underlying graph decomposes into k forests (matroid union,
    polynomial)."""
    if k < 0:
        raise InputError("k must be non-negative")
    for v in range(digraph.n):
        if digraph.in_degree(v) > k:
            return False, ("indegree", v, digraph.in_degree(v))
    res = decompose_forests(digraph.underlying(), k)
    if isinstance(res, ForestCover):
        return True, None
    assert isinstance(res, DenseSet)
    return False, ("dense", res.nodes, res.induced)


def check_mixed_arborescence_packing(mixed: MixedGraph, root: int, k: int):
    """Partition condition for k edge-disjoint spanning mixed
    root-arborescences: for every partition with the root block set aside,
    undirected cross-edges must cover the in-degree shortfalls of the
    other blocks.  Full partition enumeration (hard cap on n)."""
    from .testkit import set_partitions

    if not 0 <= root < mixed.n:
        raise InputError("root out of range")
    if k < 0:
        raise InputError("k must be non-negative")
    if mixed.n > PARTITION_CHECKER_CAP:
        raise InstanceTooLargeError(
            f"mixed checker enumerates partitions; n <= {PARTITION_CHECKER_CAP}"
        )
    arcs = mixed.directed_part()
    edges = mixed.undirected_part()
    for partition in set_partitions(mixed.n):
        if len(partition) < 2:
            continue
        bi = partition.block_index
        cross = sum(bi[u] != bi[v] for _, u, v in edges.edges)
        shortfall = sum(
            k - arcs.in_degree(block)
            for block in partition.blocks
            if root not in block
        )
        if cross < shortfall:
            return False, partition
    return True, None


def check_dypergraph_decomposition(dypergraph: Dypergraph, root: int, k: int):
    """Out-rooted k-arc-connectivity of a dypergraph: every nonempty X
    avoiding the root is entered by at least k dyperedges.  Ordinary
    digraphs (all sizes 2) go through flows; otherwise subsets (capped)."""
    if not 0 <= root < dypergraph.n:
        raise InputError("root out of range")
    if k < 0:
        raise InputError("k must be non-negative")
    if dypergraph.n < 2:
        return True, None
    if all(len(members) == 2 for _, members, _ in dypergraph.dyperedges):
        arcs = []
        for did, members, head in sorted(dypergraph.dyperedges):
            (tail,) = members - {head}
            arcs.append((did, tail, head))
        value, cut = rooted_connectivity(Digraph(dypergraph.n, tuple(arcs)), root)
        if value >= k:
            return True, None
        return False, CutCertificate(cut, k, value)
    if dypergraph.n > SUBSET_CHECKER_CAP:
        raise InstanceTooLargeError(
            f"dypergraph checker enumerates subsets; n <= {SUBSET_CHECKER_CAP}"
        )
    others = [v for v in range(dypergraph.n) if v != root]
    for r in range(1, len(others) + 1):
        for combo in itertools.combinations(others, r):
            x = frozenset(combo)
            value = dypergraph.in_degree(x)
            if value < k:
                return False, CutCertificate(x, k, value)
    return True, None
