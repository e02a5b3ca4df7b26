"""Tree packing, forest covering, deficiency, augmentation and sparsity.

Thin certified layers over the matroid union engine: every decision comes
back with either a constructive witness (trees, forests, new edges) or a
dual certificate (deficient partition, dense node set, ground-set
violation), and each witness can be re-checked with nothing beyond the
counting helpers in `core`.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import Graph, Partition, components_partition, contract, partition_stats
from .errors import InputError, InternalCertificateError
from .matroids import (
    BasisPacking,
    CoverViolation,
    GraphicMatroid,
    IndependentCover,
    Labeling,
    MinorMatroid,
    PackDeficiency,
    TruncatedMatroid,
    matroid_union_max,
    pack_bases,
    cover_by_independent,
    shift_one,
)


# ---------------------------------------------------------------------------
# result types


@dataclass(frozen=True)
class TreePacking:
    """Edge-disjoint spanning trees, one id tuple per tree."""

    trees: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class DeficientPartition:
    """Partition violating the cross-edge bound e_G(P) >= k(|P|-1) + slack."""

    partition: Partition
    k: int
    slack: int
    deficit: int


@dataclass(frozen=True)
class ForestCover:
    """Partition of the edge set into forests, one id tuple per forest."""

    forests: tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class DenseSet:
    """Node set with i_G(X) > k(|X|-1) - slack: too many induced edges."""

    nodes: frozenset[int]
    k: int
    slack: int
    induced: int


@dataclass(frozen=True)
class GroundCertificate:
    """Edge set X with |X| > sum of the per-forest capped ranks."""

    edge_ids: frozenset[int]
    ranks: tuple[int, ...]


@dataclass(frozen=True)
class Augmentation:
    """New edges reaching k-tree-connectivity, with a packing of the
    augmented graph as the constructive receipt (new edge i carries id
    max-original-id + 1 + i)."""

    new_edges: tuple[tuple[int, int], ...]
    mode: str
    trees: tuple[tuple[int, ...], ...] = ()


@dataclass(frozen=True)
class AugmentInfeasible:
    needed: int
    budget: int
    witness: DeficientPartition


@dataclass(frozen=True)
class CannotSpan:
    """Extension certificate: forest `tree_index` cannot reach every node
    inside its allowed edge set (the partition has no available cross-edge)."""

    tree_index: int
    partition: Partition


@dataclass(frozen=True)
class ExtendPackCertificate:
    """Edge set with |X| < sum of co-ranks of the extension minors."""

    edge_ids: frozenset[int]
    coranks: tuple[int, ...]


@dataclass(frozen=True)
class ExtendCoverCertificate:
    """Edge set with |X| > sum of ranks of the extension minors."""

    edge_ids: frozenset[int]
    ranks: tuple[int, ...]


@dataclass(frozen=True)
class BoundsUnmet:
    """Lower bounds unreachable by exchange chains from the capped cover.

    Not a closed-form certificate; exactness is oracle-checked at desk
    scale (see tests), since no clean feasibility condition is available
    for simultaneous lower and upper bounds.
    """

    cover: ForestCover
    lower: tuple[int, ...]


# ---------------------------------------------------------------------------
# verifiers (counting only)


def verify_tree_packing(graph: Graph, k: int, packing: TreePacking) -> bool:
    if len(packing.trees) != k:
        return False
    seen: set[int] = set()
    for tree in packing.trees:
        ids = set(tree)
        if seen & ids:
            return False
        seen |= ids
        if graph.n >= 1 and not graph.is_spanning_tree(ids):
            return False
    return True


def verify_deficient_partition(graph: Graph, witness: DeficientPartition) -> bool:
    cross, _ = partition_stats(graph, witness.partition)
    bound = witness.k * (len(witness.partition) - 1) + witness.slack
    return cross < bound and witness.deficit == bound - cross


def verify_forest_cover(graph: Graph, k: int, cover: ForestCover,
                        caps: list[int] | None = None) -> bool:
    if len(cover.forests) != k:
        return False
    all_ids: list[int] = []
    for i, forest in enumerate(cover.forests):
        if caps is not None and len(forest) > caps[i]:
            return False
        if not graph.is_forest(forest):
            return False
        all_ids.extend(forest)
    return sorted(all_ids) == sorted(graph.edge_ids)


def verify_dense_set(graph: Graph, witness: DenseSet) -> bool:
    nodes = witness.nodes
    induced = sum(u in nodes and v in nodes for _, u, v in graph.edges)
    return (
        induced == witness.induced
        and induced > witness.k * (len(nodes) - 1) - witness.slack
    )


# ---------------------------------------------------------------------------
# packing and covering


def _trees_from_labeling(gm: GraphicMatroid, labeling: Labeling) -> tuple[tuple[int, ...], ...]:
    return tuple(gm.ids_of(part) for part in labeling.parts())


def pack_spanning_trees(graph: Graph, k: int):
    """k edge-disjoint spanning trees, or a partition with positive k-deficit."""
    if k < 0:
        raise InputError("k must be non-negative")
    if k == 0:
        return TreePacking(())
    if graph.n <= 1:
        return TreePacking(tuple(() for _ in range(k)))
    gm = GraphicMatroid(graph)
    res = matroid_union_max([gm] * k)
    target = k * (graph.n - 1)
    if res.rank == target:
        packing = TreePacking(_trees_from_labeling(gm, res.labeling))
        if not verify_tree_packing(graph, k, packing):
            raise InternalCertificateError("packing failed re-verification")
        return packing
    x_ids = gm.ids_of(res.certificate)
    partition = components_partition(graph, set(x_ids))
    witness = DeficientPartition(partition, k, 0, target - res.rank)
    if not verify_deficient_partition(graph, witness):
        raise InternalCertificateError("deficient partition failed re-verification")
    return witness


def verify_tutte_condition(graph: Graph, removed_edges, k: int) -> bool:
    """|F| >= k(q(G,F)-1) where q counts components after deleting F."""
    removed = set(removed_edges)
    unknown = removed - set(graph.edge_ids)
    if unknown:
        raise InputError(f"unknown edge ids {sorted(unknown)}")
    keep = set(graph.edge_ids) - removed
    q = len(graph.components(keep))
    return len(removed) >= k * (q - 1)


def _dense_set_from_edges(graph: Graph, edge_ids, k: int) -> DenseSet:
    """Node set of one over-dense component of the certificate edges."""
    ids = set(edge_ids)
    for block in graph.components(ids):
        induced = sum(u in block and v in block for _, u, v in graph.edges)
        if induced > k * (len(block) - 1):
            return DenseSet(block, k, 0, induced)
    raise InternalCertificateError("no dense component in covering certificate")


def decompose_forests(graph: Graph, k: int, caps: list[int] | None = None):
    """Partition E into k forests (optionally size-capped), or a certificate."""
    if k < 0:
        raise InputError("k must be non-negative")
    if caps is not None:
        if len(caps) != k:
            raise InputError("need one cap per forest")
        if any(c < 0 for c in caps):
            raise InputError("caps must be non-negative")
    if k == 0:
        if graph.m == 0:
            return ForestCover(())
        return _dense_set_from_edges(graph, graph.edge_ids, 0)
    gm = GraphicMatroid(graph)
    if caps is None:
        matroids = [gm] * k
    else:
        matroids = [TruncatedMatroid(gm, c) for c in caps]
    res = cover_by_independent(matroids)
    if isinstance(res, IndependentCover):
        cover = ForestCover(_trees_from_labeling(gm, res.labeling))
        if not verify_forest_cover(graph, k, cover, caps):
            raise InternalCertificateError("forest cover failed re-verification")
        return cover
    assert isinstance(res, CoverViolation)
    x_ids = gm.ids_of(res.elements)
    if caps is None:
        witness = _dense_set_from_edges(graph, x_ids, k)
        if not verify_dense_set(graph, witness):
            raise InternalCertificateError("dense set failed re-verification")
        return witness
    return GroundCertificate(frozenset(x_ids), res.ranks)


def arboricity(graph: Graph) -> int:
    """Least k admitting a k-forest decomposition (0 for edgeless graphs)."""
    if graph.m == 0:
        return 0
    k = 1
    while True:
        if isinstance(decompose_forests(graph, k), ForestCover):
            return k
        k += 1


def partition_deficiency(graph: Graph, k: int) -> tuple[int, Partition]:
    """Largest k-deficit over all partitions, with a partition attaining it."""
    if k < 0:
        raise InputError("k must be non-negative")
    if graph.n < 1:
        raise InputError("graph has no nodes")
    if k == 0 or graph.n == 1:
        return 0, Partition.trivial(graph.n)
    gm = GraphicMatroid(graph)
    res = matroid_union_max([gm] * k)
    deficiency = k * (graph.n - 1) - res.rank
    if deficiency == 0:
        return 0, Partition.trivial(graph.n)
    partition = components_partition(graph, set(gm.ids_of(res.certificate)))
    if partition.deficit(graph, k) != deficiency:
        raise InternalCertificateError("witness partition misses the deficiency")
    return deficiency, partition


def _lowest_id_spanning_tree(graph: Graph) -> list[int]:
    gm = GraphicMatroid(graph)
    basis = gm.ids_of(gm.greedy_basis())
    return list(basis)


def augment_to_k_tree_connected(graph: Graph, k: int, budget: int | None = None,
                                mode: str = "star"):
    """Minimum set of new edges (exactly the k-deficiency many) whose
    addition makes the graph k-tree-connected.

    star mode draws candidates from the star at node 0; parallel mode from
    copies of the lowest-id spanning tree, so it requires a connected graph.
    """
    if mode not in ("star", "parallel"):
        raise InputError(f"unknown augmentation mode {mode!r}")
    needed, witness = partition_deficiency(graph, k)
    if budget is not None and budget < needed:
        cross, _ = partition_stats(graph, witness)
        bound = k * (len(witness) - 1)
        return AugmentInfeasible(
            needed, budget, DeficientPartition(witness, k, 0, bound - cross)
        )
    if needed == 0:
        packed = pack_spanning_trees(graph, k)
        assert isinstance(packed, TreePacking)
        return Augmentation((), mode, packed.trees)
    if mode == "star":
        candidates = [(0, v) for v in range(1, graph.n) for _ in range(k)]
    else:
        if not graph.is_connected():
            raise InputError("parallel mode needs a connected graph")
        tree = _lowest_id_spanning_tree(graph)
        candidates = [graph.by_id[eid] for eid in tree for _ in range(k)]
    augmented = graph.add_edges(candidates)
    original_ids = set(graph.edge_ids)
    gm = GraphicMatroid(augmented)
    weights = [2.0 if gm.ids[p] in original_ids else 1.0 for p in range(gm.size)]
    res = matroid_union_max([gm] * k, weights=weights)
    chosen_new = [eid for eid in gm.ids_of(
        frozenset(e for e, lab in enumerate(res.labeling.labels) if lab is not None)
    ) if eid not in original_ids]
    if len(chosen_new) != needed:
        raise InternalCertificateError(
            f"augmentation picked {len(chosen_new)} edges, deficiency is {needed}"
        )
    new_pairs = tuple(augmented.by_id[eid] for eid in sorted(chosen_new))
    # re-pack on graph.add_edges(new_pairs) so the receipt's ids line up
    # with what a consumer reconstructs
    final = graph.add_edges(new_pairs)
    packed = pack_spanning_trees(final, k)
    if not isinstance(packed, TreePacking):
        raise InternalCertificateError("augmented graph does not pack")
    return Augmentation(new_pairs, mode, packed.trees)


def extend_forests(graph: Graph, forests, allowed, mode: str):
    """Grow given disjoint forests into disjoint spanning trees (mode
    "pack") or into a full forest decomposition (mode "cover"), keeping
    forest i inside its allowed edge set."""
    if mode not in ("pack", "cover"):
        raise InputError(f"unknown mode {mode!r}")
    k = len(forests)
    if len(allowed) != k:
        raise InputError("need one allowed set per forest")
    forests = [frozenset(f) for f in forests]
    allowed = [frozenset(a) for a in allowed]
    edge_ids = set(graph.edge_ids)
    taken: set[int] = set()
    for i in range(k):
        if not forests[i] <= allowed[i]:
            raise InputError(f"forest {i} leaves its allowed set")
        if not allowed[i] <= edge_ids:
            raise InputError(f"allowed set {i} mentions unknown edges")
        if forests[i] & taken:
            raise InputError("given forests are not disjoint")
        taken |= forests[i]
        if not graph.is_forest(forests[i]):
            raise InputError(f"given edge set {i} is not a forest")
    gm = GraphicMatroid(graph)
    forced = frozenset().union(*forests) if forests else frozenset()
    minors = [
        MinorMatroid(
            gm,
            allowed=gm.positions(allowed[i] - forced),
            contracted=gm.positions(forests[i]),
        )
        for i in range(k)
    ]
    if mode == "pack":
        for i in range(k):
            want = graph.n - 1 - len(forests[i])
            if minors[i].rank() < want:
                avail = (allowed[i] - forced) | forests[i]
                return CannotSpan(i, components_partition(graph, avail))
        res = pack_bases(minors)
        if isinstance(res, BasisPacking):
            trees = tuple(
                tuple(sorted(set(gm.ids_of(part)) | forests[i]))
                for i, part in enumerate(res.labeling.parts())
            )
            packing = TreePacking(trees)
            if not verify_tree_packing(graph, k, packing):
                raise InternalCertificateError("extended packing failed verification")
            return packing
        assert isinstance(res, PackDeficiency)
        return ExtendPackCertificate(frozenset(gm.ids_of(res.elements)), res.coranks)
    # cover mode: the forced edges are pre-assigned, so the union must
    # label everything outside them
    res = matroid_union_max(minors)
    if res.rank == gm.size - len(forced):
        out = tuple(
            tuple(sorted(set(gm.ids_of(part)) | forests[i]))
            for i, part in enumerate(res.labeling.parts())
        )
        cover = ForestCover(out)
        if not verify_forest_cover(graph, k, cover):
            raise InternalCertificateError("extended cover failed verification")
        return cover
    x = res.certificate - gm.positions(forced)
    ranks = tuple(m.rank(x) for m in minors)
    witness = ExtendCoverCertificate(frozenset(gm.ids_of(x)), ranks)
    if len(x) <= sum(ranks):
        raise InternalCertificateError("extension violation failed its own check")
    return witness


# ---------------------------------------------------------------------------
# partition connectivity and sparsity


def check_partition_connected(graph: Graph, k: int, l: int = 0):
    """(k,l)-partition-connectivity: every partition has at least
    k(|P|-1)+l cross-edges; equivalently k spanning trees survive deleting
    any l edges.

    Deletion sets range over l-subsets of one maximum packing (exact for
    l <= k) and fall back to all l-subsets of E otherwise; exponential in
    l, intended for small l.
    """
    if k < 1:
        raise InputError("k must be at least 1")
    if l < 0:
        raise InputError("l must be non-negative")
    res = pack_spanning_trees(graph, k)
    if isinstance(res, DeficientPartition):
        cross, _ = partition_stats(graph, res.partition)
        bound = k * (len(res.partition) - 1) + l
        return False, DeficientPartition(res.partition, k, l, bound - cross)
    if l == 0:
        return True, None

    def try_deletions(pool):
        for removed in itertools.combinations(sorted(pool), l):
            attempt = pack_spanning_trees(graph.delete_edges(removed), k)
            if isinstance(attempt, DeficientPartition):
                partition = attempt.partition
                cross, _ = partition_stats(graph, partition)
                bound = k * (len(partition) - 1) + l
                if cross >= bound:
                    raise InternalCertificateError("deletion witness does not lift")
                return DeficientPartition(partition, k, l, bound - cross)
        return None

    packing_edges = [eid for tree in res.trees for eid in tree]
    witness = try_deletions(packing_edges)
    if witness is not None:
        return False, witness
    if l <= k:
        return True, None
    witness = try_deletions(graph.edge_ids)
    if witness is not None:
        return False, witness
    return True, None


def check_forest_sparse(graph: Graph, k: int, l: int):
    """(k,l)-forest-sparsity: i_G(X) <= k(|X|-1) - l for every |X| >= 2.

    Tested by adding l parallel copies of each existing edge and asking for
    a k-forest decomposition; a violating X must induce an edge, so the
    probes are exhaustive.
    """
    if not 0 <= l < k:
        raise InputError("need 0 <= l < k")
    if l == 0:
        res = decompose_forests(graph, k)
        if isinstance(res, ForestCover):
            return True, None
        assert isinstance(res, DenseSet)
        return False, DenseSet(res.nodes, k, 0, res.induced)
    seen_pairs: set[frozenset[int]] = set()
    for _, u, v in sorted(graph.edges):
        pair = frozenset((u, v))
        if pair in seen_pairs:
            continue
        seen_pairs.add(pair)
        probe = graph.add_edges([(u, v)] * l)
        res = decompose_forests(probe, k)
        if isinstance(res, DenseSet):
            nodes = res.nodes
            induced = sum(a in nodes and b in nodes for _, a, b in graph.edges)
            witness = DenseSet(nodes, k, l, induced)
            if not verify_dense_set(graph, witness):
                raise InternalCertificateError("sparsity witness failed verification")
            return False, witness
    return True, None


def check_forest_tight(graph: Graph, k: int, l: int):
    """(k,l)-forest-sparse with exactly k(n-1)-l edges."""
    expected = k * (graph.n - 1) - l
    if graph.m != expected:
        return False, ("size", graph.m, expected)
    ok, witness = check_forest_sparse(graph, k, l)
    if not ok:
        return False, ("dense", witness)
    return True, None


def check_laman(graph: Graph):
    """Generic minimal rigidity count in the plane: (2,1)-forest-tight."""
    return check_forest_tight(graph, 2, 1)


def check_body_bar(graph: Graph, d: int):
    """Rigid body-bar realizability in dimension d: d(d+1)/2 spanning trees."""
    if d < 1:
        raise InputError("dimension must be at least 1")
    res = pack_spanning_trees(graph, d * (d + 1) // 2)
    if isinstance(res, TreePacking):
        return True, res
    return False, res


def check_highly_tree_connected(graph: Graph, k: int):
    """e_G(P) >= k(|P|-1) + 1 for every partition: (k,1)-partition-connected."""
    return check_partition_connected(graph, k, 1)


# ---------------------------------------------------------------------------
# brick-style fixed point (used by the switching game)


def brick_partition(graph: Graph, k: int) -> Partition:
    """Coarsest fixed point of certificate contraction.

    Repeatedly packs, contracts the blocks of the returned deficient
    partition (each block induces a k-tree-connected subgraph), and stops
    when the quotient's certificate is all singletons.  On desk-scale
    instances this matches the minimum-size maximum-deficit partition.
    """
    if graph.n == 0:
        raise InputError("empty graph")
    current = Partition.singletons(graph.n)
    if isinstance(pack_spanning_trees(graph, k), TreePacking):
        return Partition.trivial(graph.n)
    while True:
        quotient = contract(graph, current)
        res = pack_spanning_trees(quotient, k)
        if isinstance(res, TreePacking):
            raise InternalCertificateError("quotient packs although the graph does not")
        refinement = res.partition
        if len(refinement) == quotient.n:
            return current
        merged = [
            frozenset().union(*(current.blocks[i] for i in block))
            for block in refinement.blocks
        ]
        current = Partition.from_blocks(graph.n, merged)


# ---------------------------------------------------------------------------
# size-constrained decompositions


def decompose_forests_bounded(graph: Graph, k: int, lower, upper):
    """Forest decomposition with per-class size windows lower_i..upper_i.

    Runs the capped decomposition, then routes single-element exchange
    chains from classes above their lower bound into deficient classes.
    """
    lower = list(lower)
    upper = list(upper)
    if len(lower) != k or len(upper) != k:
        raise InputError("need one bound pair per forest")
    if any(lo < 0 or lo > hi for lo, hi in zip(lower, upper)):
        raise InputError("bounds must satisfy 0 <= lower <= upper")
    if sum(lower) > graph.m or sum(upper) < graph.m:
        return BoundsUnmet(ForestCover(()), tuple(lower))
    res = decompose_forests(graph, k, caps=upper)
    if not isinstance(res, ForestCover):
        return res
    gm = GraphicMatroid(graph)
    matroids = [TruncatedMatroid(gm, c) for c in upper]
    labels: list[int | None] = [None] * gm.size
    for i, forest in enumerate(res.forests):
        for pos in gm.positions(forest):
            labels[pos] = i
    labeling = Labeling(k, tuple(labels))
    while True:
        sizes = [len(part) for part in labeling.parts()]
        needy = [i for i in range(k) if sizes[i] < lower[i]]
        if not needy:
            cover = ForestCover(_trees_from_labeling(gm, labeling))
            if not verify_forest_cover(graph, k, cover, upper):
                raise InternalCertificateError("rebalanced cover failed verification")
            return cover
        donors = [j for j in range(k) if sizes[j] > lower[j]]
        shifted = shift_one(matroids, labeling, needy[0], donors)
        if shifted is None:
            return BoundsUnmet(ForestCover(_trees_from_labeling(gm, labeling)),
                               tuple(lower))
        labeling = shifted
