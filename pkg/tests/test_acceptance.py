"""Acceptance suite: one test per criterion, property-based at desk scale.

Run with `pytest tests/test_acceptance.py -s` to see one PASS line per
criterion.  Expected values come from the exhaustive oracles in
sylva.testkit; tolerances are exact throughout.
"""
import itertools

from sylva.core import (
    CutCertificate,
    Digraph,
    Graph,
    Partition,
    all_node_subsets,
    min_in_cut,
    partition_stats,
)
from sylva.arborescences import (
    ArborescencePacking,
    DoubledCertificate,
    certify_k_edge_connectivity,
    pack_arborescences,
    rooted_connectivity,
    verify_arborescence,
    verify_arborescence_packing,
)
from sylva.forests import (
    Augmentation,
    DeficientPartition,
    DenseSet,
    ForestCover,
    TreePacking,
    arboricity,
    augment_to_k_tree_connected,
    check_partition_connected,
    decompose_forests,
    pack_spanning_trees,
    partition_deficiency,
    verify_deficient_partition,
    verify_forest_cover,
    verify_tree_packing,
)
from sylva.game import GameState, analyze, build_core, engine_move
from sylva.hypergraphs import (
    HyperDeficientPartition,
    Hypergraph,
    HypergraphicMatroid,
    HypertreePacking,
    Trimming,
    ViolatingFamily,
    hypergraphic_rank,
    is_hyperforest,
    pack_hypertrees,
    verify_hyper_deficient,
    verify_hypertree_packing,
)
from sylva.matroids import (
    GraphicMatroid,
    PartitionMatroid,
    TruncatedMatroid,
    matroid_union_max,
    union_rank_formula_value,
)
from sylva.orientations import orient_hypergraph_rooted_k, orient_rooted_k
from sylva.testkit import (
    SplitMix64,
    atlas_connected,
    connected_multigraphs,
    gen_kl_pinch,
    gen_kv,
    gen_mader,
    gen_pinch_2k,
    oracle_arborescence_completion,
    oracle_edge_connectivity,
    oracle_forest_sparse,
    oracle_hyperforest,
    oracle_max_density,
    oracle_minimax,
    oracle_partitions,
    oracle_rooted_connectivity,
    oracle_trees,
    oracle_whiteley,
    random_digraph,
    random_multigraph,
    terminal_pair_classes,
)


def _report(number: int, message: str) -> None:
    print(f"ACCEPTANCE {number}: PASS — {message}", flush=True)


def test_criterion_01_packing_dichotomy():
    """Exactly one of packing / deficient partition, matching the oracles,
    over all connected graphs with n <= 6 and k in 1..3."""
    graphs = [g for g in atlas_connected(6)]
    checked = 0
    for g in graphs:
        for k in (1, 2, 3):
            res = pack_spanning_trees(g, k)
            max_deficit, _ = oracle_partitions(g, k)
            exact_trees = oracle_trees(g, k)
            if isinstance(res, TreePacking):
                assert verify_tree_packing(g, k, res)
                assert max_deficit == 0
                assert exact_trees is not None
            else:
                assert isinstance(res, DeficientPartition)
                assert verify_deficient_partition(g, res)
                assert max_deficit > 0
                assert exact_trees is None
            checked += 1
    _report(1, f"packing dichotomy on {len(graphs)} graphs x 3 k-values "
               f"({checked} instances) matches both oracles")


def test_criterion_02_covering_duality():
    """decompose_forests matches the induced-count condition by subset
    enumeration (n <= 8, k <= 3); arboricity equals the density formula."""
    family = [g for g in atlas_connected(6)]
    family += [random_multigraph(seed, 7, 10) for seed in range(25)]
    family += [random_multigraph(seed, 8, 11) for seed in range(25, 45)]
    checked = 0
    for g in family:
        for k in (1, 2, 3):
            res = decompose_forests(g, k)
            sparse = all(
                sum(u in x and v in x for _, u, v in g.edges) <= k * (len(x) - 1)
                for x in all_node_subsets(g.n, proper=False)
                if len(x) >= 2
            )
            if isinstance(res, ForestCover):
                assert sparse
                assert verify_forest_cover(g, k, res)
            else:
                assert isinstance(res, DenseSet)
                assert not sparse
                induced = sum(
                    u in res.nodes and v in res.nodes for _, u, v in g.edges
                )
                assert induced > k * (len(res.nodes) - 1)
            checked += 1
        assert arboricity(g) == oracle_max_density(g)
    _report(2, f"covering duality and arboricity formula on {len(family)} "
               f"graphs ({checked} decompositions), exact")


def test_criterion_03_matroid_rank_formula():
    """Union rank equals min over all X of |S-X| + sum r_i(X), by full
    subset enumeration, over graphic / partition / truncated /
    hypergraphic oracles."""
    k4 = Graph.build(4, list(itertools.combinations(range(4), 2)))
    doubled_c3 = Graph.build(3, [(0, 1), (1, 2), (0, 2)] * 2)
    twelve = Graph.build(4, [(i % 4, (i + 1) % 4) for i in range(8)]
                         + [(0, 2), (1, 3), (0, 2), (1, 3)])
    h8 = Hypergraph.build(5, [{0, 1, 2}, {1, 2, 3}, {2, 3, 4}, {0, 4},
                              {0, 1, 2, 3}, {3, 4}, {0, 3}, {1, 4}])
    instances = [
        [GraphicMatroid(k4)] * 2,
        [GraphicMatroid(doubled_c3)] * 3,
        [GraphicMatroid(twelve)] * 2,
        [PartitionMatroid(12, [i % 4 for i in range(12)], [1, 2, 1, 2]),
         GraphicMatroid(twelve)],
        [TruncatedMatroid(GraphicMatroid(twelve), 2)] * 3,
        [HypergraphicMatroid(h8)] * 2,
        [HypergraphicMatroid(h8), TruncatedMatroid(HypergraphicMatroid(h8), 2)],
    ]
    for matroids in instances:
        size = matroids[0].size
        assert size <= 12
        res = matroid_union_max(matroids)
        best = min(
            union_rank_formula_value(matroids, x)
            for r in range(size + 1)
            for x in itertools.combinations(range(size), r)
        )
        assert res.rank == best
        assert union_rank_formula_value(matroids, res.certificate) == best
        assert res.labeling.verify(matroids)
    _report(3, f"rank formula verified by full subset enumeration on "
               f"{len(instances)} oracle families (|S| <= 12)")


def test_criterion_04_deficiency_and_augmentation():
    """Pi_k equals the oracle maximum deficit (n <= 8); augmentation emits
    exactly Pi_k edges in both star and parallel mode, and the result
    packs."""
    family = [g for g in atlas_connected(6) if g.n >= 2]
    family += [random_multigraph(seed, 7, 8) for seed in range(12)]
    family += [random_multigraph(seed, 8, 9) for seed in range(12, 20)]
    checked = 0
    for g in family:
        for k in (1, 2, 3):
            value, witness = partition_deficiency(g, k)
            exact, _ = oracle_partitions(g, k)
            assert value == exact
            assert witness.deficit(g, k) == value
            res = augment_to_k_tree_connected(g, k, mode="star")
            assert isinstance(res, Augmentation)
            assert len(res.new_edges) == value
            assert verify_tree_packing(g.add_edges(res.new_edges), k,
                                       TreePacking(res.trees))
            if g.is_connected():
                par = augment_to_k_tree_connected(g, k, mode="parallel")
                assert len(par.new_edges) == value
                assert verify_tree_packing(g.add_edges(par.new_edges), k,
                                           TreePacking(par.trees))
            checked += 1
    _report(4, f"deficiency equals oracle and both augmentation modes emit "
               f"exactly Pi_k edges on {checked} instances")


def test_criterion_05_arborescence_dichotomy():
    """Weak and strong form on 500 seeded digraphs (n <= 7) plus generated
    rooted-connected instances; seeded strong-form cases match brute-force
    completion."""
    rng = SplitMix64(99)
    weak_checked = 0
    for seed in range(500):
        n = 3 + seed % 5
        m = n + rng.randrange(2 * n)
        d = random_digraph(seed, n, m)
        k = 1 + seed % 3
        res = pack_arborescences(d, 0, k)
        value, _ = rooted_connectivity(d, 0)
        if isinstance(res, ArborescencePacking):
            assert value >= k
            assert verify_arborescence_packing(d, 0, k, res)
        else:
            assert value < k
            x = res.node_set
            entering = sum(
                d.by_id[a][1] in x and d.by_id[a][0] not in x for a in d.by_id
            )
            assert entering < k
        weak_checked += 1
    for seed in range(100):
        d, root = gen_mader(seed, 6 + seed % 5, 1 + seed % 3)
        k = 1 + seed % 3
        res = pack_arborescences(d, root, k)
        assert isinstance(res, ArborescencePacking)
        assert verify_arborescence_packing(d, root, k, res)
    def random_seed_trees(d, rng, k):
        """Arc-disjoint root arborescence stubs grown from random frontier
        arcs; they may or may not be completable."""
        taken: set[int] = set()
        out = []
        for _ in range(k):
            covered = {0}
            tree: list[int] = []
            for _ in range(rng.randrange(3)):
                frontier = [
                    aid for aid, (tail, head) in sorted(d.by_id.items())
                    if aid not in taken and tail in covered and head not in covered
                ]
                if not frontier:
                    break
                aid = frontier[rng.randrange(len(frontier))]
                tree.append(aid)
                taken.add(aid)
                covered.add(d.by_id[aid][1])
            out.append(sorted(tree))
        return out

    strong_checked = strong_infeasible = 0
    for seed in range(150):
        rng = SplitMix64(4000 + seed)
        d = random_digraph(1000 + seed, 3 + seed % 4, 6 + seed % 6)
        seeds = random_seed_trees(d, rng, 2)
        assert all(verify_arborescence(d, 0, s, spanning=False) for s in seeds)
        res = pack_arborescences(d, 0, 2, seeds=seeds)
        exact = oracle_arborescence_completion(d, 0, 2, seeds)
        assert isinstance(res, ArborescencePacking) == exact
        if isinstance(res, ArborescencePacking):
            assert verify_arborescence_packing(d, 0, 2, res, seeds)
        else:
            strong_infeasible += 1
        strong_checked += 1
    _report(5, f"arborescence dichotomy on 500 random + 100 generated "
               f"digraphs; {strong_checked} seeded strong-form cases "
               f"({strong_infeasible} infeasible) match exhaustive completion")


def test_criterion_06_orientation_soundness():
    """Every produced orientation passes independent cut verification;
    feasibility coincides with k-partition-connectivity on the n <= 6
    exhaustive set."""
    graphs = atlas_connected(6)
    produced = 0
    for g in graphs:
        for k in (1, 2):
            max_deficit, _ = oracle_partitions(g, k)
            res = orient_rooted_k(g, 0, k)
            if isinstance(res, Digraph):
                assert max_deficit == 0
                for v in range(g.n):
                    if v != 0:
                        assert min_in_cut(res, 0, v)[0] >= k
                produced += 1
            else:
                assert max_deficit > 0
    hyper_produced = 0
    for seed in range(30):
        rng = SplitMix64(seed)
        n = 4 + seed % 2
        members = []
        for _ in range(n + 1):
            size = 2 + rng.randrange(2)
            nodes = set()
            while len(nodes) < size:
                nodes.add(rng.randrange(n))
            members.append(nodes)
        h = Hypergraph.build(n, members)
        res = orient_hypergraph_rooted_k(h, 0, 1)
        if isinstance(res, HyperDeficientPartition):
            assert verify_hyper_deficient(h, res)
            continue
        for x in all_node_subsets(h.n):
            if 0 not in x:
                assert res.in_degree(x) >= 1
        hyper_produced += 1
    _report(6, f"{produced} graph orientations and {hyper_produced} "
               f"hypergraph orientations pass independent cut checks; "
               f"feasibility matches partition connectivity on the "
               f"exhaustive n <= 6 set")


def test_criterion_07_hypergraph_criteria():
    """Hyperforest recognition matches the union-count enumeration (up to
    10 hyperedges); rank matches the partition formula (n <= 6); packing
    matches k-partition-connectivity; includes the 3-node single-hyperedge
    case (connected but not partition-connected)."""
    single = Hypergraph.build(3, [{0, 1, 2}])
    # connected (every cut is crossed) but not partition-connected
    assert all(
        sum(1 for _, ms in single.hyperedges if ms & x and ms - x) >= 1
        for x in all_node_subsets(3)
    )
    rank, witness = hypergraphic_rank(single)
    assert rank == 1 < single.n - 1
    assert (3 - len(witness)) + single.crossing_count(witness) == 1
    res = pack_hypertrees(single, 1)
    assert isinstance(res, HyperDeficientPartition)

    rng = SplitMix64(7)
    checked_forest = checked_rank = checked_pack = 0
    for seed in range(80):
        n = 4 + seed % 3
        m = 3 + rng.randrange(8)
        members = []
        for _ in range(m):
            size = 2 + rng.randrange(min(3, n - 1))
            nodes = set()
            while len(nodes) < size:
                nodes.add(rng.randrange(n))
            members.append(nodes)
        h = Hypergraph.build(n, members)
        if h.m <= 10:
            mine = is_hyperforest(h)
            exact = oracle_hyperforest([ms for _, ms in sorted(h.hyperedges)])
            assert isinstance(mine, Trimming) == exact
            checked_forest += 1
        rank, witness = hypergraphic_rank(h)
        exact_rank, _ = oracle_whiteley(h)
        assert rank == exact_rank
        assert (h.n - len(witness)) + h.crossing_count(witness) == rank
        checked_rank += 1
        for k in (1, 2):
            res = pack_hypertrees(h, k)
            exact_value, _ = oracle_whiteley(h, k)
            packable = exact_value == k * (h.n - 1)
            if isinstance(res, HypertreePacking):
                assert packable
                assert verify_hypertree_packing(h, k, res)
            else:
                assert not packable
                assert verify_hyper_deficient(h, res)
            checked_pack += 1
    _report(7, f"hyperforest x{checked_forest}, rank x{checked_rank} and "
               f"packing x{checked_pack} all match their enumerations; "
               f"single-hyperedge case included")


def test_criterion_08_game_soundness():
    """Over all connected multigraphs with at most 8 edges (terminal pairs
    up to automorphism), both variants and move orders: analysis equals
    minimax, and the predicted winner's engine never loses against an
    exhaustive adversary."""
    family = connected_multigraphs(8)

    def engine_never_loses(g, variant, first, s=None, t=None):
        analysis = analyze(g, variant, first, s, t)
        engine = analysis.winner

        def rec(state, core):
            w = state.winner()
            if w is not None:
                assert w == engine, (g.edges, variant, first, s, t, state.history)
                return
            if not state.untagged():
                return
            if state.to_move == engine:
                eid, core2 = engine_move(state, core)
                rec(state.apply(eid), core2)
            else:
                for eid in state.untagged():
                    rec(state.apply(eid), core)

        core = build_core(g, analysis, engine, variant, first, s, t)
        rec(GameState.opening(g, variant, first, s, t), core)
        return analysis.winner

    configs = 0
    for g in family:
        for first in ("cut", "short"):
            winner = engine_never_loses(g, "global", first)
            assert winner == oracle_minimax(g, "global", first)
            configs += 1
        for s, t in terminal_pair_classes(g):
            for first in ("cut", "short"):
                winner = engine_never_loses(g, "st", first, s, t)
                assert winner == oracle_minimax(g, "st", first, s, t)
                configs += 1
    _report(8, f"game soundness on {len(family)} graphs / {configs} "
               f"configurations: analysis equals minimax and engines never "
               f"lose")


def test_criterion_09_generators():
    """1000 seeded runs per generator family pass their polynomial
    validators; small outputs also pass the exhaustive oracles."""
    small_checked = 0
    for seed in range(1000):
        k = 1 + seed % 3
        g = gen_pinch_2k(seed, 4 + seed % 9, k)
        if g.n >= 2:
            doubled = [(u, v) for _, u, v in g.edges]
            doubled += [(v, u) for u, v in doubled]
            d = Digraph.build(g.n, doubled)
            for v in range(1, g.n):
                assert min_in_cut(d, 0, v)[0] >= 2 * k
            if g.n <= 7:
                exact, _ = oracle_edge_connectivity(g)
                assert exact >= 2 * k
                small_checked += 1
    for seed in range(1000):
        k = 1 + seed % 3
        d, root = gen_mader(seed, 4 + seed % 9, k)
        if d.n >= 2:
            assert rooted_connectivity(d, root)[0] >= k
            if d.n <= 7:
                exact, _ = oracle_rooted_connectivity(d, root)
                assert exact >= k
                small_checked += 1
    kl_params = [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2)]
    for seed in range(1000):
        k, l = kl_params[seed % len(kl_params)]
        g = gen_kl_pinch(seed, 3 + seed % 7, k, l)
        assert isinstance(pack_spanning_trees(g, k), TreePacking)
        if g.n <= 6:
            ok, _ = check_partition_connected(g, k, l)
            assert ok
            small_checked += 1
    for seed in range(1000):
        k, l = kl_params[seed % len(kl_params)]
        if l >= k:
            k, l = k + 1, l
        d, root = gen_kv(seed, 3 + seed % 7, k, l)
        if d.n >= 2:
            assert rooted_connectivity(d, root)[0] >= k
            if l:
                assert rooted_connectivity(d.reverse(), root)[0] >= l
            if d.n <= 7:
                exact, _ = oracle_rooted_connectivity(d, root)
                assert exact >= k
                small_checked += 1
    _report(9, f"4 x 1000 seeded generator runs validated "
               f"({small_checked} small outputs also pass exhaustive oracles)")


def test_criterion_10_paper_regressions():
    """Pinned equivalences: the triangle vs its parallel extension, K4,
    doubled cycles, and deletion-resilience of 2k-edge-connected graphs."""
    triangle = Graph.build(3, [(0, 1), (1, 2), (0, 2)])
    assert isinstance(pack_spanning_trees(triangle, 2), DeficientPartition)
    plus = triangle.add_edges([(0, 1)])
    assert isinstance(pack_spanning_trees(plus, 2), TreePacking)
    k4 = Graph.build(4, list(itertools.combinations(range(4), 2)))
    assert isinstance(pack_spanning_trees(k4, 2), TreePacking)

    # (k,k)-partition-connectivity is 2k-edge-connectivity on doubled cycles
    for n in (3, 4, 5):
        pairs = [(i, (i + 1) % n) for i in range(n)]
        doubled = Graph.build(n, pairs * 2)
        for k in (1, 2):
            ok, _ = check_partition_connected(doubled, k, k)
            exact, _ = oracle_edge_connectivity(doubled)
            assert ok == (exact >= 2 * k)

    # 2k-edge-connected graphs stay k-tree-connected after any k deletions
    for n in (4, 5):
        pairs = [(i, (i + 1) % n) for i in range(n)]
        doubled = Graph.build(n, pairs * 2)
        exact, _ = oracle_edge_connectivity(doubled)
        assert exact == 4  # doubled cycle is 4-edge-connected: k = 2
        for removed in itertools.combinations(doubled.edge_ids, 2):
            rest = doubled.delete_edges(removed)
            assert isinstance(pack_spanning_trees(rest, 2), TreePacking)
    _report(10, "paper-pinned regressions hold (triangle, K4, doubled "
                "cycles, deletion resilience)")
