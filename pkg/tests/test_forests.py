import itertools

import pytest

from sylva.core import Graph, Partition, partition_stats
from sylva.errors import InputError
from sylva.forests import (
    Augmentation,
    AugmentInfeasible,
    BoundsUnmet,
    CannotSpan,
    DeficientPartition,
    DenseSet,
    ExtendPackCertificate,
    ForestCover,
    GroundCertificate,
    TreePacking,
    arboricity,
    augment_to_k_tree_connected,
    brick_partition,
    check_body_bar,
    check_forest_sparse,
    check_forest_tight,
    check_highly_tree_connected,
    check_laman,
    check_partition_connected,
    decompose_forests,
    decompose_forests_bounded,
    extend_forests,
    pack_spanning_trees,
    partition_deficiency,
    verify_deficient_partition,
    verify_forest_cover,
    verify_tree_packing,
    verify_tutte_condition,
)
from sylva.testkit import (
    atlas_connected,
    oracle_forest_sparse,
    oracle_max_density,
    oracle_partition_connected,
    oracle_partitions,
    oracle_trees,
    random_multigraph,
)


# ---------------------------------------------------------------------------
# packing


def test_pack_triangle_deficient(triangle):
    res = pack_spanning_trees(triangle, 2)
    assert isinstance(res, DeficientPartition)
    assert res.partition == Partition.singletons(3)
    assert res.deficit == 1  # e = 3 < 2*(3-1)
    assert verify_deficient_partition(triangle, res)


def test_pack_single_node_many_trees():
    res = pack_spanning_trees(Graph.build(1, []), 5)
    assert isinstance(res, TreePacking)
    assert res.trees == ((), (), (), (), ())


def test_pack_k4(k4):
    res = pack_spanning_trees(k4, 2)
    assert isinstance(res, TreePacking)
    assert verify_tree_packing(k4, 2, res)


def test_pack_zero():
    assert pack_spanning_trees(Graph.build(3, [(0, 1)]), 0) == TreePacking(())


def test_pack_disconnected_certificate():
    g = Graph.build(4, [(0, 1), (2, 3)])
    res = pack_spanning_trees(g, 1)
    assert isinstance(res, DeficientPartition)
    assert verify_deficient_partition(g, res)


def test_pack_dichotomy_small_atlas():
    for g in atlas_connected(5):
        for k in (1, 2, 3):
            res = pack_spanning_trees(g, k)
            exact = oracle_trees(g, k)
            if isinstance(res, TreePacking):
                assert exact is not None
                assert verify_tree_packing(g, k, res)
            else:
                assert exact is None
                assert verify_deficient_partition(g, res)


# ---------------------------------------------------------------------------
# Tutte's condition


def test_tutte_trivial(triangle):
    for k in range(4):
        assert verify_tutte_condition(triangle, set(), k)


def test_tutte_triangle_full_set(triangle):
    assert not verify_tutte_condition(triangle, triangle.edge_ids, 2)


def test_tutte_k4_all_subsets(k4):
    for r in range(7):
        for combo in itertools.combinations(k4.edge_ids, r):
            assert verify_tutte_condition(k4, combo, 2)


def test_tutte_equivalence_with_partition_condition():
    # both conditions hold or both fail, matching packability (n <= 5)
    for g in atlas_connected(5):
        for k in (1, 2):
            tutte = all(
                verify_tutte_condition(g, combo, k)
                for r in range(g.m + 1)
                for combo in itertools.combinations(g.edge_ids, r)
            )
            nash, _ = oracle_partitions(g, k)
            packs = isinstance(pack_spanning_trees(g, k), TreePacking)
            assert tutte == (nash == 0) == packs


# ---------------------------------------------------------------------------
# covering, arboricity


def test_decompose_triangle(triangle):
    res = decompose_forests(triangle, 2)
    assert isinstance(res, ForestCover)
    assert verify_forest_cover(triangle, 2, res)
    dense = decompose_forests(triangle, 1)
    assert isinstance(dense, DenseSet)
    assert dense.nodes == frozenset({0, 1, 2})
    assert dense.induced == 3


def test_decompose_with_caps(k4):
    res = decompose_forests(k4, 2, caps=[3, 3])
    assert isinstance(res, ForestCover)
    assert all(len(f) == 3 for f in res.forests)
    capped = decompose_forests(k4, 2, caps=[2, 3])
    assert isinstance(capped, GroundCertificate)


def test_decompose_matches_subset_condition():
    for seed in range(40):
        g = random_multigraph(seed, 5, 7)
        for k in (1, 2, 3):
            res = decompose_forests(g, k)
            ok, witness = oracle_forest_sparse(g, k, 0)
            assert isinstance(res, ForestCover) == ok
            if not ok:
                assert isinstance(res, DenseSet)
                induced = sum(
                    u in res.nodes and v in res.nodes for _, u, v in g.edges
                )
                assert induced > k * (len(res.nodes) - 1)


def test_arboricity_values(triangle, k4):
    assert arboricity(Graph.build(4, [])) == 0
    assert arboricity(triangle) == 2
    assert arboricity(k4) == 2


def test_arboricity_equals_density_formula():
    for seed in range(30):
        g = random_multigraph(seed, 6, 9)
        assert arboricity(g) == oracle_max_density(g)


# ---------------------------------------------------------------------------
# deficiency and augmentation


def test_deficiency_examples(triangle, k4):
    assert partition_deficiency(k4, 2) == (0, Partition.trivial(4))
    value, witness = partition_deficiency(triangle, 2)
    assert value == 1 and witness == Partition.singletons(3)


def test_deficiency_spanning_tree_formula():
    for n in (2, 3, 4, 5):
        tree = Graph.build(n, [(i, i + 1) for i in range(n - 1)])
        for k in (1, 2, 3):
            value, witness = partition_deficiency(tree, k)
            assert value == (k - 1) * (n - 1)
            assert witness.deficit(tree, k) == value


def test_deficiency_matches_oracle():
    for seed in range(25):
        g = random_multigraph(seed, 5, 6)
        for k in (1, 2, 3):
            value, witness = partition_deficiency(g, k)
            exact, _ = oracle_partitions(g, k)
            assert value == exact
            assert witness.deficit(g, k) == value


def test_augment_triangle(triangle):
    for mode in ("star", "parallel"):
        res = augment_to_k_tree_connected(triangle, 2, mode=mode)
        assert isinstance(res, Augmentation)
        assert len(res.new_edges) == 1
        packed = pack_spanning_trees(triangle.add_edges(res.new_edges), 2)
        assert isinstance(packed, TreePacking)


def test_augment_budget(triangle, k4):
    res = augment_to_k_tree_connected(k4, 2, budget=0)
    assert isinstance(res, Augmentation) and res.new_edges == ()
    res = augment_to_k_tree_connected(triangle, 2, budget=0)
    assert isinstance(res, AugmentInfeasible)
    assert res.needed == 1
    assert res.witness.partition == Partition.singletons(3)


def test_augment_star_reaches_deficiency():
    for seed in range(20):
        g = random_multigraph(seed, 5, 5)
        value, _ = partition_deficiency(g, 2)
        res = augment_to_k_tree_connected(g, 2, mode="star")
        assert isinstance(res, Augmentation)
        assert len(res.new_edges) == value
        assert all(u == 0 for u, _ in res.new_edges)  # star at node 0
        packed = pack_spanning_trees(g.add_edges(res.new_edges), 2)
        assert isinstance(packed, TreePacking)


def test_augment_parallel_needs_connected():
    g = Graph.build(4, [(0, 1), (2, 3)])
    with pytest.raises(InputError):
        augment_to_k_tree_connected(g, 1, mode="parallel")


# ---------------------------------------------------------------------------
# extension


def test_extend_degenerates_to_pack_and_cover(k4, triangle):
    all_edges = set(k4.edge_ids)
    res = extend_forests(k4, [set(), set()], [all_edges, all_edges], "pack")
    assert isinstance(res, TreePacking)
    res = extend_forests(triangle, [set(), set()],
                         [set(triangle.edge_ids)] * 2, "cover")
    assert isinstance(res, ForestCover)


def test_extend_k4_with_given_forest(k4):
    # forest {01, 23} completes to two disjoint spanning trees
    res = extend_forests(k4, [{0, 5}, set()], [set(k4.edge_ids)] * 2, "pack")
    assert isinstance(res, TreePacking)
    assert {0, 5} <= set(res.trees[0])


def test_extend_cannot_span(triangle):
    res = extend_forests(triangle, [set(), set()], [{0}, set(triangle.edge_ids)],
                         "pack")
    assert isinstance(res, CannotSpan)
    assert res.tree_index == 0


def test_extend_matches_exhaustive_completion(k4):
    # every pair of disjoint 2-edge forests either completes or certifies
    ids = list(k4.edge_ids)
    for f1 in itertools.combinations(ids, 2):
        if not k4.is_forest(f1):
            continue
        rest = [e for e in ids if e not in f1]
        for f2 in itertools.combinations(rest, 2):
            if not k4.is_forest(f2):
                continue
            res = extend_forests(k4, [set(f1), set(f2)],
                                 [set(ids)] * 2, "pack")
            exact = _exhaustive_completion(k4, [set(f1), set(f2)])
            if isinstance(res, TreePacking):
                assert exact
            else:
                assert isinstance(res, (ExtendPackCertificate, CannotSpan))
                assert not exact


def _exhaustive_completion(g, forests):
    ids = sorted(g.edge_ids)
    used = set().union(*forests)
    free = [e for e in ids if e not in used]
    need = [g.n - 1 - len(f) for f in forests]
    for extra1 in itertools.combinations(free, need[0]):
        t1 = set(forests[0]) | set(extra1)
        if not g.is_spanning_tree(t1):
            continue
        rest = [e for e in free if e not in extra1]
        for extra2 in itertools.combinations(rest, need[1]):
            t2 = set(forests[1]) | set(extra2)
            if g.is_spanning_tree(t2):
                return True
    return False


def test_extend_input_validation(k4):
    with pytest.raises(InputError):
        extend_forests(k4, [{0, 1, 3}], [set(k4.edge_ids)], "pack")  # cycle
    with pytest.raises(InputError):
        extend_forests(k4, [{0}], [{1}], "pack")  # forest outside allowed
    with pytest.raises(InputError):
        extend_forests(k4, [{0}, {0}], [set(k4.edge_ids)] * 2, "pack")


# ---------------------------------------------------------------------------
# partition connectivity and sparsity counts


def test_partition_connected_doubled_cycle(doubled_c4):
    # (k,k)-partition-connectivity is 2k-edge-connectivity
    ok, _ = check_partition_connected(doubled_c4, 1, 1)
    assert ok


def test_partition_connected_k4(k4):
    ok, witness = check_partition_connected(k4, 2, 1)
    assert not ok
    cross, _ = partition_stats(k4, witness.partition)
    assert cross < 2 * (len(witness.partition) - 1) + 1


def test_partition_connected_trivial(triangle):
    assert check_partition_connected(triangle, 1, 0) == (True, None)


def test_partition_connected_matches_oracle():
    for seed in range(25):
        g = random_multigraph(seed, 5, 8)
        for k in (1, 2):
            for l in (0, 1, 2):
                mine, witness = check_partition_connected(g, k, l)
                exact, _ = oracle_partition_connected(g, k, l)
                assert mine == exact
                if witness is not None:
                    assert verify_deficient_partition(g, witness)
    # brute force over all partitions stays the reference up to n = 8
    for seed in range(6):
        g = random_multigraph(100 + seed, 8, 13)
        for k, l in ((1, 1), (2, 1), (1, 2)):
            mine, witness = check_partition_connected(g, k, l)
            exact, _ = oracle_partition_connected(g, k, l)
            assert mine == exact
            if witness is not None:
                assert verify_deficient_partition(g, witness)


def test_forest_sparse_examples(k4):
    # triangle with a pendant edge: sparse(2,1) holds, tightness fails
    tp = Graph.build(4, [(0, 1), (1, 2), (0, 2), (2, 3)])
    ok, _ = check_forest_sparse(tp, 2, 1)
    assert ok
    assert check_laman(tp) == (False, ("size", 4, 5))
    assert check_laman(k4) == (False, ("size", 6, 5))


def test_laman_positive():
    # K4 minus one edge has 5 = 2*4 - 3 edges and is (2,1)-forest-tight
    g = Graph.build(4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
    ok, cert = check_laman(g)
    assert ok


def test_forest_sparse_matches_oracle():
    for seed in range(25):
        g = random_multigraph(seed, 5, 7)
        for k, l in ((2, 1), (3, 1), (3, 2)):
            mine, witness = check_forest_sparse(g, k, l)
            exact, _ = oracle_forest_sparse(g, k, l)
            assert mine == exact
            if witness is not None:
                induced = sum(
                    u in witness.nodes and v in witness.nodes
                    for _, u, v in g.edges
                )
                assert induced > k * (len(witness.nodes) - 1) - l


def test_body_bar(triangle, k4):
    # d = 1: one spanning tree, i.e. connectivity
    assert check_body_bar(triangle, 1)[0]
    assert not check_body_bar(Graph.build(3, [(0, 1)]), 1)[0]
    # d = 2 needs 3 disjoint spanning trees
    assert not check_body_bar(k4, 2)[0]


def test_highly_tree_connected(doubled_c4, k4):
    assert check_highly_tree_connected(doubled_c4, 1)[0]
    assert not check_highly_tree_connected(k4, 2)[0]


# ---------------------------------------------------------------------------
# brick fixed point and bounded decompositions


def test_brick_partition_triangle(triangle):
    assert brick_partition(triangle, 2) == Partition.singletons(3)


def test_brick_partition_merges_parallel_block():
    g = Graph.build(3, [(0, 1), (0, 1), (1, 2)])
    assert brick_partition(g, 2) == Partition.from_blocks(3, [{0, 1}, {2}])


def test_brick_partition_2tc(k4):
    assert brick_partition(k4, 2) == Partition.trivial(4)


def test_bounded_decomposition(k4):
    res = decompose_forests_bounded(k4, 2, [3, 3], [3, 3])
    assert isinstance(res, ForestCover)
    res = decompose_forests_bounded(k4, 3, [2, 2, 2], [2, 2, 2])
    assert isinstance(res, ForestCover)
    assert [len(f) for f in res.forests] == [2, 2, 2]
    bad = decompose_forests_bounded(k4, 2, [4, 4], [6, 6])
    assert isinstance(bad, BoundsUnmet)


def test_bounded_matches_exhaustive():
    # oracle: try every labeling within the bounds (|E| up to 8)
    for seed in range(12):
        g = random_multigraph(seed, 4, 6)
        for k, lower, upper in ((2, [2, 2], [4, 4]), (2, [3, 3], [3, 3]),
                                (3, [1, 1, 1], [3, 3, 3])):
            res = decompose_forests_bounded(g, k, lower, upper)
            exact = _exhaustive_bounded(g, k, lower, upper)
            assert isinstance(res, ForestCover) == exact
    for seed in range(10):
        g = random_multigraph(seed, 5, 8)
        for k, lower, upper in ((2, [3, 3], [5, 5]), (2, [4, 4], [4, 4]),
                                (3, [1, 3, 3], [2, 3, 3])):
            res = decompose_forests_bounded(g, k, lower, upper)
            exact = _exhaustive_bounded(g, k, lower, upper)
            assert isinstance(res, ForestCover) == exact


def _exhaustive_bounded(g, k, lower, upper):
    ids = sorted(g.edge_ids)
    for labels in itertools.product(range(k), repeat=len(ids)):
        classes = [[] for _ in range(k)]
        for eid, lab in zip(ids, labels):
            classes[lab].append(eid)
        if all(lower[i] <= len(c) <= upper[i] for i, c in enumerate(classes)) \
                and all(g.is_forest(c) for c in classes):
            return True
    return False
