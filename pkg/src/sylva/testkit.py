"""Brute-force oracles and constructive instance generators.

The oracles are the single source of ground truth for the expected values
in the test suite: exhaustive partition/subset/tree/game-tree searches at
Bell/Catalan scale.  The generators build guaranteed-YES instances from
the constructive characterizations (pinching sequences), so every output
is certified by construction and re-checked by a polynomial validator.
"""
from __future__ import annotations

import itertools
from functools import lru_cache

from .core import Digraph, Graph, Partition, all_node_subsets, partition_stats
from .errors import InputError, InstanceTooLargeError

_MASK64 = (1 << 64) - 1

PRNG_ALGORITHM = "splitmix64"


class SplitMix64:
    """Deterministic 64-bit generator; same stream for the same seed on any
    platform, so generated corpora are reproducible by seed alone."""

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next_word(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randrange(self, n: int) -> int:
        if n <= 0:
            raise InputError("randrange needs a positive bound")
        return self.next_word() % n

    def choice(self, seq):
        return seq[self.randrange(len(seq))]

    def coin(self) -> bool:
        return bool(self.next_word() & 1)


# ---------------------------------------------------------------------------
# exhaustive enumeration primitives


def set_partitions(n: int):
    """All partitions of 0..n-1 via restricted-growth strings."""
    if n == 0:
        return
    codes = [0] * n

    def rec(i: int, maxed: int):
        if i == n:
            blocks: dict[int, list[int]] = {}
            for v, c in enumerate(codes):
                blocks.setdefault(c, []).append(v)
            yield Partition.from_blocks(n, blocks.values())
            return
        for c in range(maxed + 2):
            codes[i] = c
            yield from rec(i + 1, max(maxed, c))

    yield from rec(1, 0)


def oracle_partitions(graph: Graph, k: int) -> tuple[int, Partition]:
    """Exact maximum k-deficit and an argmax partition, by full enumeration."""
    if graph.n > 10:
        raise InstanceTooLargeError("partition oracle is for n <= 10")
    best = 0
    best_partition = Partition.trivial(graph.n)
    for partition in set_partitions(graph.n):
        cross, _ = partition_stats(graph, partition)
        deficit = k * (len(partition) - 1) - cross
        if deficit > best:
            best = deficit
            best_partition = partition
    return best, best_partition


def _spanning_trees(graph: Graph, available: list[int]):
    need = graph.n - 1
    if len(available) < need:
        return
    for combo in itertools.combinations(available, need):
        if graph.is_spanning_tree(combo):
            yield combo


def oracle_trees(graph: Graph, k: int):
    """Exhaustive search for k disjoint spanning trees; None if impossible."""
    if k == 0:
        return ()
    if graph.n <= 1:
        return tuple(() for _ in range(k))
    if graph.m > 18:
        raise InstanceTooLargeError("tree oracle is for m <= 18")

    def rec(chosen: list, available: list[int]):
        if len(chosen) == k:
            return tuple(chosen)
        if len(available) < (k - len(chosen)) * (graph.n - 1):
            return None
        for tree in _spanning_trees(graph, available):
            used = set(tree)
            rest = [e for e in available if e not in used]
            res = rec(chosen + [tuple(tree)], rest)
            if res is not None:
                return res
        return None

    return rec([], sorted(graph.edge_ids))


def oracle_max_density(graph: Graph) -> int:
    """max over |X| >= 2 of ceil(i_G(X) / (|X|-1)); equals the arboricity."""
    best = 0
    for x in all_node_subsets(graph.n, proper=False):
        if len(x) < 2:
            continue
        induced = sum(u in x and v in x for _, u, v in graph.edges)
        best = max(best, -(-induced // (len(x) - 1)))
    return best


def oracle_partition_connected(graph: Graph, k: int, l: int) -> tuple[bool, Partition | None]:
    """Brute-force (k,l)-partition-connectivity over all partitions."""
    for partition in set_partitions(graph.n):
        if len(partition) < 2:
            continue
        cross, _ = partition_stats(graph, partition)
        if cross < k * (len(partition) - 1) + l:
            return False, partition
    return True, None


def oracle_forest_sparse(graph: Graph, k: int, l: int) -> tuple[bool, frozenset | None]:
    for x in all_node_subsets(graph.n, proper=False):
        if len(x) < 2:
            continue
        induced = sum(u in x and v in x for _, u, v in graph.edges)
        if induced > k * (len(x) - 1) - l:
            return False, x
    return True, None


def oracle_edge_connectivity(graph: Graph) -> tuple[int, frozenset]:
    """Global min cut by subset enumeration (n <= 16)."""
    if graph.n > 16:
        raise InstanceTooLargeError("cut oracle is for n <= 16")
    if graph.n <= 1:
        return len(graph.edges), frozenset()
    best = None
    best_set = None
    for x in all_node_subsets(graph.n):
        if 0 not in x:
            d = sum((u in x) != (v in x) for _, u, v in graph.edges)
            if best is None or d < best:
                best, best_set = d, x
    return best, best_set


def oracle_rooted_connectivity(digraph: Digraph, root: int) -> tuple[int, frozenset | None]:
    """min in-degree over nonempty X <= V - root, by subset enumeration."""
    if digraph.n > 16:
        raise InstanceTooLargeError("rooted cut oracle is for n <= 16")
    best = None
    best_set = None
    others = [v for v in range(digraph.n) if v != root]
    for r in range(1, len(others) + 1):
        for combo in itertools.combinations(others, r):
            x = frozenset(combo)
            d = digraph.in_degree(x)
            if best is None or d < best:
                best, best_set = d, x
    if best is None:
        return 10 ** 9, None
    return best, best_set


def oracle_union_rank(matroids) -> tuple[int, frozenset]:
    """min over all X of |S-X| + sum_i r_i(X), with an argmin."""
    size = matroids[0].size
    if size > 16:
        raise InstanceTooLargeError("rank-formula oracle is for |S| <= 16")
    best = None
    best_set = None
    for r in range(size + 1):
        for combo in itertools.combinations(range(size), r):
            x = frozenset(combo)
            value = (size - len(x)) + sum(m.rank(x) for m in matroids)
            if best is None or value < best:
                best, best_set = value, x
    return best, best_set


# ---------------------------------------------------------------------------
# switching-game ground truth


def game_win_masks(graph: Graph, variant: str, s: int | None = None, t: int | None = None):
    """Minimal winning edge masks for Short and Cut, over edge-id order."""
    order = sorted(graph.edge_ids)
    pos = {eid: i for i, eid in enumerate(order)}
    short_masks: set[int] = set()
    cut_masks: set[int] = set()
    if variant == "global":
        for tree in _spanning_trees(graph, order):
            short_masks.add(sum(1 << pos[e] for e in tree))
        for x in all_node_subsets(graph.n):
            if 0 in x:
                continue
            mask = sum(1 << pos[eid] for eid, u, v in graph.edges if (u in x) != (v in x))
            cut_masks.add(mask)
    else:
        # minimal connecting sets = simple s-t paths (per parallel-edge choice)
        def paths(node, visited, mask):
            if node == t:
                short_masks.add(mask)
                return
            for eid, u, v in graph.edges:
                nxt = v if u == node else u if v == node else None
                if nxt is None or nxt in visited:
                    continue
                paths(nxt, visited | {nxt}, mask | (1 << pos[eid]))

        paths(s, {s}, 0)
        for x in all_node_subsets(graph.n):
            if s in x and t not in x:
                mask = sum(1 << pos[eid] for eid, u, v in graph.edges if (u in x) != (v in x))
                cut_masks.add(mask)

    def minimalize(masks):
        out = []
        for m in sorted(masks, key=lambda z: bin(z).count("1")):
            if not any(prev & ~m == 0 for prev in out):
                out.append(m)
        return tuple(out)

    return minimalize(short_masks), minimalize(cut_masks), order


def oracle_minimax(graph: Graph, variant: str, first: str,
                   s: int | None = None, t: int | None = None) -> str:
    """Exact winner by full game-tree search (independent of the engine)."""
    if graph.m > 12:
        raise InstanceTooLargeError("minimax oracle is for m <= 12")
    short_masks, cut_masks, order = game_win_masks(graph, variant, s, t)
    full = (1 << len(order)) - 1

    @lru_cache(maxsize=None)
    def solve(short_mask: int, cut_mask: int, short_moves: bool) -> bool:
        """True iff Short wins with optimal play from this position."""
        if any(w & ~short_mask == 0 for w in short_masks):
            return True
        if any(w & ~cut_mask == 0 for w in cut_masks):
            return False
        untagged = full & ~(short_mask | cut_mask)
        assert untagged, "finished game with no winner"
        bit = 1
        while bit <= untagged:
            if untagged & bit:
                if short_moves and solve(short_mask | bit, cut_mask, False):
                    return True
                if not short_moves and not solve(short_mask, cut_mask | bit, True):
                    return False
            bit <<= 1
        return not short_moves

    winner_short = solve(0, 0, first == "short")
    solve.cache_clear()
    return "short" if winner_short else "cut"


def oracle_arborescence_completion(digraph: Digraph, root: int, k: int, seeds) -> bool:
    """Exhaustive search: can the seed arborescences be extended to k
    arc-disjoint spanning ones?  Grows the first non-spanning tree by every
    admissible frontier arc in turn."""
    if digraph.n > 7:
        raise InstanceTooLargeError("completion oracle is for n <= 7")
    by_id = digraph.by_id
    all_nodes = frozenset(range(digraph.n))

    def covered(tree):
        nodes = {root}
        for aid in tree:
            nodes.add(by_id[aid][0])
            nodes.add(by_id[aid][1])
        return nodes

    def rec(trees, used):
        nodesets = [covered(t) for t in trees]
        try:
            i = next(j for j, ns in enumerate(nodesets) if ns != all_nodes)
        except StopIteration:
            return True
        for aid, (tail, head) in sorted(by_id.items()):
            if aid in used or tail not in nodesets[i] or head in nodesets[i]:
                continue
            trees[i].append(aid)
            if rec(trees, used | {aid}):
                return True
            trees[i].pop()
        return False

    trees = [list(s) for s in seeds]
    used = {aid for s in seeds for aid in s}
    return rec(trees, frozenset(used))


def oracle_hyperforest(members: list, subset=None) -> bool:
    """Direct Lovász-condition enumeration: every nonempty subfamily of j
    hyperedges spans at least j+1 nodes.  `members` is a list of node sets."""
    chosen = list(members) if subset is None else [members[i] for i in subset]
    if len(chosen) > 12:
        raise InstanceTooLargeError("hyperforest oracle is for <= 12 hyperedges")
    for r in range(1, len(chosen) + 1):
        for combo in itertools.combinations(chosen, r):
            if len(frozenset().union(*combo)) <= r:
                return False
    return True


def oracle_whiteley(hypergraph, k: int = 1) -> tuple[int, Partition]:
    """min over partitions of k(|V| - |P|) + e_H(P), by enumeration."""
    if hypergraph.n > 9:
        raise InstanceTooLargeError("rank-formula oracle is for n <= 9")
    best = None
    best_partition = None
    for partition in set_partitions(hypergraph.n):
        value = k * (hypergraph.n - len(partition)) + hypergraph.crossing_count(partition)
        if best is None or value < best:
            best, best_partition = value, partition
    return best, best_partition


def oracle_short_st_subset(graph: Graph, s: int, t: int) -> frozenset | None:
    """Exhaustive search for U containing s,t with G|U 2-tree-connected."""
    from .forests import TreePacking, pack_spanning_trees

    if graph.n > 10:
        raise InstanceTooLargeError("subset oracle is for n <= 10")
    rest = [v for v in range(graph.n) if v not in (s, t)]
    for r in range(len(rest) + 1):
        for extra in itertools.combinations(rest, r):
            u = frozenset((s, t) + extra)
            sub, _ = graph.induced(u)
            if isinstance(pack_spanning_trees(sub, 2), TreePacking):
                return u
    return None


# ---------------------------------------------------------------------------
# constructive generators (pinching sequences)


def _strip_loops(pairs):
    return [(u, v) for u, v in pairs if u != v]


def gen_pinch_2k(seed: int, steps: int, k: int) -> Graph:
    """Random build of a 2k-edge-connected graph: add edges / pinch k edges
    through a new node.  Loops may appear internally and are dropped from
    the output; they carry no cut value."""
    if k < 1:
        raise InputError("k must be at least 1")
    rng = SplitMix64(seed)
    n = 1
    pairs: list[tuple[int, int]] = []
    for _ in range(steps):
        if len(pairs) >= k and rng.coin():
            chosen = sorted(_sample(rng, len(pairs), k), reverse=True)
            z = n
            n += 1
            for idx in chosen:
                u, v = pairs.pop(idx)
                pairs.append((u, z))
                pairs.append((z, v))
        else:
            pairs.append((rng.randrange(n), rng.randrange(n)))
    return Graph.build(n, _strip_loops(pairs))


def gen_mader(seed: int, steps: int, k: int) -> tuple[Digraph, int]:
    """Random build of a rooted k-arc-connected digraph from root 0:
    add arcs, add a fresh node with k entering arcs, or pinch j <= k arcs
    and complete the in-degree with new entering arcs."""
    if k < 1:
        raise InputError("k must be at least 1")
    rng = SplitMix64(seed)
    n = 1
    pairs: list[tuple[int, int]] = []
    for _ in range(steps):
        op = rng.randrange(3)
        if op == 0 and n >= 2:
            u = rng.randrange(n)
            v = rng.randrange(n - 1)
            pairs.append((u, v if v < u else v + 1))
        elif op == 2 and pairs:
            j = 1 + rng.randrange(min(k, len(pairs)))
            chosen = sorted(_sample(rng, len(pairs), j), reverse=True)
            z = n
            n += 1
            for idx in chosen:
                u, v = pairs.pop(idx)
                pairs.append((u, z))
                pairs.append((z, v))
            for _ in range(k - j):
                pairs.append((rng.randrange(n - 1), z))
        else:
            z = n
            n += 1
            for _ in range(k):
                pairs.append((rng.randrange(n - 1), z))
    return Digraph.build(n, _strip_loops(pairs)), 0


def gen_kl_pinch(seed: int, steps: int, k: int, l: int) -> Graph:
    """Random build of a (k,l)-partition-connected graph: pinch j edges
    (l <= j <= k) through a new node and add k-j fresh edges to it."""
    if not 0 <= l < k:
        raise InputError("need 0 <= l < k")
    rng = SplitMix64(seed)
    n = 1
    pairs: list[tuple[int, int]] = []
    for _ in range(steps):
        lo = max(l, 0)
        can_pinch = len(pairs) >= lo
        if can_pinch and rng.coin():
            hi = min(k, len(pairs))
            j = lo + rng.randrange(hi - lo + 1)
            chosen = sorted(_sample(rng, len(pairs), j), reverse=True)
            z = n
            n += 1
            for idx in chosen:
                u, v = pairs.pop(idx)
                pairs.append((u, z))
                pairs.append((z, v))
            for _ in range(k - j):
                pairs.append((rng.randrange(n - 1), z))
        else:
            pairs.append((rng.randrange(n), rng.randrange(n)))
    return Graph.build(n, _strip_loops(pairs))


def gen_kv(seed: int, steps: int, k: int, l: int) -> tuple[Digraph, int]:
    """Random build of a rooted (k,l)-arc-connected digraph from root 0:
    pinch j arcs (l <= j <= k-1) through a new node and complete with new
    entering arcs.  Internal loops bootstrap the start and are dropped."""
    if not 0 <= l <= k - 1:
        raise InputError("need 0 <= l <= k-1")
    rng = SplitMix64(seed)
    n = 1
    pairs: list[tuple[int, int]] = []
    for _ in range(steps):
        hi = min(k - 1, len(pairs))
        if hi >= l and rng.coin():
            j = l + rng.randrange(hi - l + 1)
            chosen = sorted(_sample(rng, len(pairs), j), reverse=True)
            z = n
            n += 1
            for idx in chosen:
                u, v = pairs.pop(idx)
                pairs.append((u, z))
                pairs.append((z, v))
            for _ in range(k - j):
                pairs.append((rng.randrange(n - 1), z))
        else:
            pairs.append((rng.randrange(n), rng.randrange(n)))
    return Digraph.build(n, _strip_loops(pairs)), 0


def _sample(rng: SplitMix64, n: int, k: int) -> list[int]:
    """k distinct indices out of range(n), order-stable for a given stream."""
    if k > n:
        raise InputError("sample larger than population")
    picked: list[int] = []
    pool = list(range(n))
    for _ in range(k):
        picked.append(pool.pop(rng.randrange(len(pool))))
    return picked


def random_digraph(seed: int, n: int, m: int) -> Digraph:
    rng = SplitMix64(seed)
    pairs = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        pairs.append((u, v if v < u else v + 1))
    return Digraph.build(n, pairs)


def random_multigraph(seed: int, n: int, m: int) -> Graph:
    rng = SplitMix64(seed)
    pairs = []
    for _ in range(m):
        u = rng.randrange(n)
        v = rng.randrange(n - 1)
        pairs.append((u, v if v < u else v + 1))
    return Graph.build(n, pairs)


# ---------------------------------------------------------------------------
# exhaustive graph families (networkx-backed; imported lazily)


def atlas_connected(max_nodes: int, max_edges: int | None = None) -> list[Graph]:
    """All connected simple graphs with 1..max_nodes nodes, up to iso."""
    import networkx as nx
    from networkx.generators.atlas import graph_atlas_g

    if max_nodes > 7:
        raise InstanceTooLargeError("atlas stops at 7 nodes")
    out = []
    for g in graph_atlas_g():
        if g.number_of_nodes() == 0 or g.number_of_nodes() > max_nodes:
            continue
        if max_edges is not None and g.number_of_edges() > max_edges:
            continue
        if not nx.is_connected(g):
            continue
        nodes = sorted(g.nodes())
        relabel = {v: i for i, v in enumerate(nodes)}
        out.append(Graph.build(len(nodes), [(relabel[u], relabel[v]) for u, v in g.edges()]))
    return out


def _nx_multigraph(graph: Graph):
    import networkx as nx

    g = nx.MultiGraph()
    g.add_nodes_from(range(graph.n))
    g.add_edges_from((u, v) for _, u, v in graph.edges)
    return g


def _simple_connected_bases(max_edges: int) -> list[Graph]:
    import networkx as nx

    if max_edges > 8:
        raise InstanceTooLargeError("family enumeration written for m <= 8")
    bases = [g for g in atlas_connected(7, max_edges) if g.n >= 3]
    if max_edges >= 7:
        for t in nx.nonisomorphic_trees(8):
            bases.append(Graph.build(8, sorted((min(u, v), max(u, v)) for u, v in t.edges())))
    if max_edges >= 8:
        for t in nx.nonisomorphic_trees(9):
            bases.append(Graph.build(9, sorted((min(u, v), max(u, v)) for u, v in t.edges())))
        # connected (8,8): one cycle; tree plus one chord, deduplicated
        seen: list = []
        found = []
        for t in nx.nonisomorphic_trees(8):
            tedges = {frozenset(e) for e in t.edges()}
            for u, v in itertools.combinations(range(8), 2):
                if frozenset((u, v)) in tedges:
                    continue
                g = nx.Graph(t)
                g.add_edge(u, v)
                if not any(nx.is_isomorphic(g, h) for h in seen):
                    seen.append(g)
                    found.append(Graph.build(
                        8, sorted((min(a, b), max(a, b)) for a, b in g.edges())))
        bases.extend(found)
    return bases


def connected_multigraphs(max_edges: int, min_nodes: int = 3) -> list[Graph]:
    """All connected loopless multigraphs with at most max_edges edges and
    at least min_nodes nodes, up to isomorphism."""
    import networkx as nx

    out: list[Graph] = []
    buckets: dict[tuple, list] = {}
    for base in _simple_connected_bases(max_edges):
        if base.n < min_nodes:
            continue
        r = base.m
        pairs = [(u, v) for _, u, v in base.edges]
        for extra in _compositions(max_edges - r, r):
            mpairs = []
            for (u, v), extra_copies in zip(pairs, extra):
                mpairs.extend([(u, v)] * (1 + extra_copies))
            candidate = Graph.build(base.n, sorted(mpairs))
            mult = tuple(sorted(1 + e for e in extra))
            degs = tuple(sorted(candidate.degree(v) for v in range(candidate.n)))
            key = (candidate.n, candidate.m, mult, degs)
            nxg = _nx_multigraph(candidate)
            known = buckets.setdefault(key, [])
            if not any(nx.is_isomorphic(nxg, other) for other in known):
                known.append(nxg)
                out.append(candidate)
    return out


def _compositions(total_at_most: int, parts: int):
    """All tuples of `parts` non-negative ints summing to <= total_at_most."""
    if parts == 0:
        yield ()
        return
    for first in range(total_at_most + 1):
        for rest in _compositions(total_at_most - first, parts - 1):
            yield (first,) + rest


def terminal_pair_classes(graph: Graph) -> list[tuple[int, int]]:
    """Unordered node pairs up to graph automorphism (exact, via colored
    isomorphism tests); sound representatives for s-t game sweeps."""
    import networkx as nx

    base = _nx_multigraph(graph)

    def colored(pair):
        g = base.copy()
        for v in g.nodes:
            g.nodes[v]["terminal"] = v in pair
        return g

    reps: list[tuple[int, int]] = []
    rep_graphs = []
    for s, t in itertools.combinations(range(graph.n), 2):
        g = colored((s, t))
        if not any(
            nx.is_isomorphic(g, h, node_match=lambda a, b: a["terminal"] == b["terminal"])
            for h in rep_graphs
        ):
            rep_graphs.append(g)
            reps.append((s, t))
    return reps
