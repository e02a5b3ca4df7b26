"""Hypergraphs: hyperforest recognition, the hypergraphic matroid, rank
formula witnesses, and hypertree packing / hyperforest covering.

A family is a hyperforest iff every nonempty subfamily of j hyperedges
spans at least j+1 nodes.  That minimum surplus is computed by one
unit-capacity flow per forced hyperedge on the incidence structure;
an explicit trimming (one pair per hyperedge forming a forest) is
reconstructed only when a witness is requested.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .core import DisjointSet, Graph, Partition
from .errors import InputError, InstanceTooLargeError, InternalCertificateError
from .flow import FlowNetwork
from .matroids import (
    CoverViolation,
    IndependentCover,
    Matroid,
    cover_by_independent,
    matroid_union_max,
)

# Exact partition witnesses are extracted by subset DP; past this many
# nodes only the rank (not the witness partition) is available.
MAX_WITNESS_NODES = 13


@dataclass(frozen=True)
class Hypergraph:
    """Node set 0..n-1 plus hyperedges (id, node set) with at least 2 nodes."""

    n: int
    hyperedges: tuple[tuple[int, frozenset[int]], ...]

    def __post_init__(self):
        seen = set()
        for hid, members in self.hyperedges:
            if hid in seen:
                raise InputError(f"duplicate hyperedge id {hid}")
            seen.add(hid)
            if len(members) < 2:
                raise InputError(f"hyperedge {hid} has fewer than 2 nodes")
            for v in members:
                if not 0 <= v < self.n:
                    raise InputError(f"node {v} out of range in hyperedge {hid}")

    @staticmethod
    def build(n: int, member_sets) -> "Hypergraph":
        return Hypergraph(n, tuple((i, frozenset(ms)) for i, ms in enumerate(member_sets)))

    @staticmethod
    def from_graph(graph: Graph) -> "Hypergraph":
        return Hypergraph(graph.n, tuple((eid, frozenset((u, v))) for eid, u, v in graph.edges))

    @property
    def m(self) -> int:
        return len(self.hyperedges)

    @cached_property
    def by_id(self) -> dict[int, frozenset[int]]:
        return {hid: members for hid, members in self.hyperedges}

    def crossing_count(self, partition: Partition) -> int:
        """Hyperedges meeting at least two blocks."""
        bi = partition.block_index
        return sum(len({bi[v] for v in members}) >= 2 for _, members in self.hyperedges)

    def induced_count(self, nodes) -> int:
        nodes = frozenset(nodes)
        return sum(members <= nodes for _, members in self.hyperedges)


@dataclass(frozen=True)
class Dypergraph:
    """Directed hyperedges (id, node set Z, head z in Z); |Z| >= 2."""

    n: int
    dyperedges: tuple[tuple[int, frozenset[int], int], ...]

    def __post_init__(self):
        seen = set()
        for did, members, head in self.dyperedges:
            if did in seen:
                raise InputError(f"duplicate dyperedge id {did}")
            seen.add(did)
            if len(members) < 2:
                raise InputError(f"dyperedge {did} has fewer than 2 nodes")
            if head not in members:
                raise InputError(f"head {head} not a member of dyperedge {did}")
            for v in members:
                if not 0 <= v < self.n:
                    raise InputError(f"node {v} out of range in dyperedge {did}")

    @staticmethod
    def build(n: int, entries) -> "Dypergraph":
        """entries: iterable of (member set, head)."""
        return Dypergraph(
            n, tuple((i, frozenset(ms), head) for i, (ms, head) in enumerate(entries))
        )

    @property
    def m(self) -> int:
        return len(self.dyperedges)

    def in_degree(self, x) -> int:
        """Dyperedges entering X: head inside, some tail outside."""
        xs = frozenset([x]) if isinstance(x, int) else frozenset(x)
        return sum(head in xs and not members <= xs for _, members, head in self.dyperedges)


@dataclass(frozen=True)
class Trimming:
    """Chosen pair per hyperedge; the pairs form a forest when witnessing."""

    pairs: tuple[tuple[int, int, int], ...]  # (hyperedge id, u, v)

    def as_graph_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for _, u, v in self.pairs]


@dataclass(frozen=True)
class ViolatingFamily:
    """Subfamily J whose union has at most |J| nodes (Lovász failure)."""

    hyperedge_ids: tuple[int, ...]
    union_size: int


def _min_surplus_forced(members: list[tuple[int, frozenset[int]]], forced_idx: int):
    """min over subfamilies J containing the forced hyperedge of
    |union(J)| - |J|, with a minimizing J (by index)."""
    nodes = sorted(set().union(*(ms for _, ms in members)))
    node_pos = {v: i for i, v in enumerate(nodes)}
    f = len(members)
    big = f + len(nodes) + 1
    # layout: 0 = source, 1..f hyperedges, then nodes, last = sink
    net = FlowNetwork(2 + f + len(nodes))
    sink = 1 + f + len(nodes)
    for i, (_, ms) in enumerate(members):
        net.add_arc(0, 1 + i, big if i == forced_idx else 1)
        for v in sorted(ms):
            net.add_arc(1 + i, 1 + f + node_pos[v], big)
    for i in range(len(nodes)):
        net.add_arc(1 + f + i, sink, 1)
    res = net.max_flow(0, sink)
    fam = [i for i in range(f) if (1 + i) in res.reachable]
    return res.value - f, fam


def _family_is_hyperforest(members: list[tuple[int, frozenset[int]]]):
    """(True, None) or (False, violating index list)."""
    for forced in range(len(members)):
        surplus, fam = _min_surplus_forced(members, forced)
        if surplus <= 0:
            return False, fam
    return True, None


def is_hyperforest(hypergraph: Hypergraph, subset=None):
    """Trimming witness that the subfamily is a hyperforest, or a violating
    subfamily J with |union(J)| <= |J|."""
    ids = sorted(hypergraph.by_id) if subset is None else sorted(subset)
    members = [(hid, hypergraph.by_id[hid]) for hid in ids]
    for hid, _ in members:
        if hid not in hypergraph.by_id:
            raise InputError(f"unknown hyperedge id {hid}")
    if not members:
        return Trimming(())
    ok, fam = _family_is_hyperforest(members)
    if not ok:
        bad_ids = tuple(members[i][0] for i in fam)
        union = frozenset().union(*(members[i][1] for i in fam))
        witness = ViolatingFamily(bad_ids, len(union))
        if witness.union_size > len(bad_ids):
            raise InternalCertificateError("violating family has positive surplus")
        return witness
    # fix pairs one hyperedge at a time; a pair choice is kept whenever the
    # partially trimmed family still satisfies the union condition
    work = list(members)
    chosen: list[tuple[int, int, int]] = []
    for pos in range(len(work)):
        hid, ms = work[pos]
        if len(ms) == 2:
            u, v = sorted(ms)
            chosen.append((hid, u, v))
            continue
        fixed = False
        for u, v in itertools.combinations(sorted(ms), 2):
            trial = work[:pos] + [(hid, frozenset((u, v)))] + work[pos + 1:]
            if _family_is_hyperforest(trial)[0]:
                work = trial
                chosen.append((hid, u, v))
                fixed = True
                break
        if not fixed:
            raise InternalCertificateError("hyperforest admitted no trimming step")
    trimming = Trimming(tuple(chosen))
    dsu = DisjointSet(hypergraph.n)
    if not all(dsu.union(u, v) for _, u, v in trimming.pairs):
        raise InternalCertificateError("trimming pairs contain a cycle")
    return trimming


class HypergraphicMatroid(Matroid):
    """Lorea's matroid: independent subfamilies are the hyperforests.

    Ground element i is the i-th hyperedge in id order; `ids`/`positions`
    translate, mirroring GraphicMatroid.
    """

    def __init__(self, hypergraph: Hypergraph):
        self.hypergraph = hypergraph
        self.size = hypergraph.m
        ordered = sorted(hypergraph.hyperedges)
        self.ids: tuple[int, ...] = tuple(h[0] for h in ordered)
        self._members = [ms for _, ms in ordered]
        self._pos = {hid: i for i, hid in enumerate(self.ids)}

    def positions(self, hyperedge_ids) -> frozenset[int]:
        return frozenset(self._pos[h] for h in hyperedge_ids)

    def ids_of(self, positions) -> tuple[int, ...]:
        return tuple(sorted(self.ids[p] for p in positions))

    def is_independent(self, subset):
        if len(subset) > max(self.hypergraph.n - 1, 0):
            return False
        members = [(e, self._members[e]) for e in sorted(subset)]
        if not members:
            return True
        return _family_is_hyperforest(members)[0]


# ---------------------------------------------------------------------------
# rank formula and partition witnesses


def _partition_dp(hypergraph: Hypergraph, k: int) -> tuple[int, Partition]:
    """Exact minimizer of sum over blocks of [k(|B|-1) - i_H(B)] by subset
    dynamic programming; with the |edges| offset this is the k-fold rank."""
    n = hypergraph.n
    if n > MAX_WITNESS_NODES:
        raise InstanceTooLargeError(
            f"partition witness needs n <= {MAX_WITNESS_NODES}, got {n}"
        )
    full = (1 << n) - 1
    induced = [0] * (full + 1)
    for _, ms in hypergraph.hyperedges:
        induced[sum(1 << v for v in ms)] += 1
    for bit in range(n):
        b = 1 << bit
        for mask in range(full + 1):
            if mask & b:
                induced[mask] += induced[mask ^ b]

    def beta(mask: int) -> int:
        return k * (mask.bit_count() - 1) - induced[mask]

    best: dict[int, int] = {0: 0}
    pick: dict[int, int] = {}
    for mask in range(1, full + 1):
        low = mask & (-mask)
        sub = mask
        best_val = None
        best_sub = None
        while sub:
            if sub & low:
                val = beta(sub) + best[mask ^ sub]
                if best_val is None or val < best_val:
                    best_val, best_sub = val, sub
            sub = (sub - 1) & mask
        best[mask] = best_val
        pick[mask] = best_sub
    blocks = []
    mask = full
    while mask:
        sub = pick[mask]
        blocks.append(frozenset(v for v in range(n) if sub & (1 << v)))
        mask ^= sub
    return best[full], Partition.from_blocks(n, blocks)


def hypergraphic_rank(hypergraph: Hypergraph) -> tuple[int, Partition]:
    """Rank of the hypergraphic matroid with a partition attaining
    min over P of |V| - |P| + e_H(P); partition-connected iff rank = n-1."""
    matroid = HypergraphicMatroid(hypergraph)
    rank = matroid.rank()
    value, partition = _partition_dp(hypergraph, 1)
    if value + hypergraph.m != rank:
        raise InternalCertificateError("rank formula minimizer does not match rank")
    return rank, partition


@dataclass(frozen=True)
class HypertreePacking:
    """Disjoint spanning hypertrees, each with a witnessing trimming."""

    trees: tuple[tuple[int, ...], ...]
    trimmings: tuple[Trimming, ...]


@dataclass(frozen=True)
class HyperDeficientPartition:
    """Partition with fewer than k(|P|-1) crossing hyperedges."""

    partition: Partition
    k: int
    crossing: int

    @property
    def deficit(self) -> int:
        return self.k * (len(self.partition) - 1) - self.crossing


@dataclass(frozen=True)
class HyperforestCover:
    forests: tuple[tuple[int, ...], ...]
    trimmings: tuple[Trimming, ...]


@dataclass(frozen=True)
class HyperDenseSet:
    """Node set X with more than k(|X|-1) induced hyperedges."""

    nodes: frozenset[int]
    k: int
    induced: int


def verify_hypertree_packing(hypergraph: Hypergraph, k: int, packing: HypertreePacking) -> bool:
    if len(packing.trees) != k:
        return False
    seen: set[int] = set()
    for tree, trimming in zip(packing.trees, packing.trimmings):
        ids = set(tree)
        if seen & ids or len(ids) != max(hypergraph.n - 1, 0):
            return False
        seen |= ids
        if sorted(hid for hid, _, _ in trimming.pairs) != sorted(ids):
            return False
        dsu = DisjointSet(hypergraph.n)
        joined = hypergraph.n
        for hid, u, v in trimming.pairs:
            if not {u, v} <= hypergraph.by_id[hid]:
                return False
            if not dsu.union(u, v):
                return False
            joined -= 1
        if joined != 1:
            return False
    return True


def verify_hyper_deficient(hypergraph: Hypergraph, witness: HyperDeficientPartition) -> bool:
    crossing = hypergraph.crossing_count(witness.partition)
    return crossing == witness.crossing and crossing < witness.k * (len(witness.partition) - 1)


def pack_hypertrees(hypergraph: Hypergraph, k: int):
    """k disjoint spanning hypertrees, or a partition showing that the
    hypergraph is not k-partition-connected."""
    if k < 1:
        raise InputError("k must be at least 1")
    if hypergraph.n <= 1:
        return HypertreePacking(tuple(() for _ in range(k)), tuple(Trimming(()) for _ in range(k)))
    matroid = HypergraphicMatroid(hypergraph)
    res = matroid_union_max([matroid] * k)
    target = k * (hypergraph.n - 1)
    if res.rank == target:
        trees = tuple(matroid.ids_of(part) for part in res.labeling.parts())
        trimmings = []
        for tree in trees:
            witness = is_hyperforest(hypergraph, tree)
            if not isinstance(witness, Trimming):
                raise InternalCertificateError("packed class is not a hyperforest")
            trimmings.append(witness)
        packing = HypertreePacking(trees, tuple(trimmings))
        if not verify_hypertree_packing(hypergraph, k, packing):
            raise InternalCertificateError("hypertree packing failed verification")
        return packing
    value, partition = _partition_dp(hypergraph, k)
    if value + hypergraph.m != res.rank:
        raise InternalCertificateError("k-fold rank minimizer does not match rank")
    witness = HyperDeficientPartition(partition, k, hypergraph.crossing_count(partition))
    if not verify_hyper_deficient(hypergraph, witness):
        raise InternalCertificateError("deficient partition failed verification")
    return witness


def cover_by_hyperforests(hypergraph: Hypergraph, k: int):
    """Decomposition into k hyperforests, or a node set X with
    i_E(X) > k(|X|-1)."""
    if k < 1:
        raise InputError("k must be at least 1")
    matroid = HypergraphicMatroid(hypergraph)
    res = cover_by_independent([matroid] * k)
    if isinstance(res, IndependentCover):
        forests = tuple(matroid.ids_of(part) for part in res.labeling.parts())
        trimmings = []
        for forest in forests:
            witness = is_hyperforest(hypergraph, forest)
            if not isinstance(witness, Trimming):
                raise InternalCertificateError("cover class is not a hyperforest")
            trimmings.append(witness)
        return HyperforestCover(forests, tuple(trimmings))
    assert isinstance(res, CoverViolation)
    bad_ids = matroid.ids_of(res.elements)
    sub = Hypergraph(hypergraph.n, tuple((h, hypergraph.by_id[h]) for h in bad_ids))
    _, partition = _partition_dp(sub, 1)
    for block in partition.blocks:
        if sub.induced_count(block) > k * (len(block) - 1):
            witness = HyperDenseSet(block, k, hypergraph.induced_count(block))
            if witness.induced <= k * (len(block) - 1):
                raise InternalCertificateError("dense set failed verification")
            return witness
    raise InternalCertificateError("cover violation produced no dense block")
