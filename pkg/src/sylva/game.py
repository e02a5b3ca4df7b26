"""Shannon switching game: winner analysis, certificate-backed strategies
for both players, both move orders, and the global and s-t variants.

Short's engine maintains two edge-disjoint spanning trees of a derived
graph in which her tagged edges are contracted and Cut's tagged edges are
deleted; the reply to an attack on one tree is the reconnecting exchange
from the other.  Cut's global engine tags cross-edges of a deficient
partition; her s-t engine runs the matroid dual of Short's pairing, two
spanning trees through a virtual terminal edge whose complements are her
disjoint claim reservoirs.  A predicted loser falls back to a documented
heuristic with no guarantee.
"""
from __future__ import annotations

from dataclasses import dataclass, replace

from .core import DisjointSet, Graph, Partition, contract
from .errors import InputError, InternalCertificateError
from .forests import (
    DeficientPartition,
    ForestCover,
    TreePacking,
    brick_partition,
    extend_forests,
    pack_spanning_trees,
    partition_deficiency,
)

GLOBAL, ST = "global", "st"
SHORT, CUT = "short", "cut"


# ---------------------------------------------------------------------------
# game state


@dataclass(frozen=True)
class GameState:
    graph: Graph
    variant: str
    first: str
    s: int | None
    t: int | None
    short_tags: frozenset[int]
    cut_tags: frozenset[int]
    to_move: str
    history: tuple[tuple[str, int], ...] = ()

    @staticmethod
    def opening(graph: Graph, variant: str, first: str,
                s: int | None = None, t: int | None = None) -> "GameState":
        return GameState(graph, variant, first, s, t, frozenset(), frozenset(), first)

    def untagged(self) -> list[int]:
        tagged = self.short_tags | self.cut_tags
        return [eid for eid in sorted(self.graph.edge_ids) if eid not in tagged]

    def apply(self, eid: int) -> "GameState":
        if self.winner() is not None:
            raise InputError("game already decided")
        if eid not in self.graph.by_id:
            raise InputError(f"unknown edge {eid}")
        if eid in self.short_tags or eid in self.cut_tags:
            raise InputError(f"edge {eid} already tagged")
        mover = self.to_move
        short_tags = self.short_tags | {eid} if mover == SHORT else self.short_tags
        cut_tags = self.cut_tags | {eid} if mover == CUT else self.cut_tags
        return replace(
            self,
            short_tags=short_tags,
            cut_tags=cut_tags,
            to_move=CUT if mover == SHORT else SHORT,
            history=self.history + ((mover, eid),),
        )

    def winner(self) -> str | None:
        """Short owns a spanning tree / s-t path; Cut owns a cut."""
        g = self.graph
        if self.variant == GLOBAL:
            if g.spanning_subgraph(self.short_tags):
                return SHORT
            open_ids = set(g.edge_ids) - self.cut_tags
            if len(g.components(open_ids)) > 1:
                return CUT
            return None
        dsu = DisjointSet(g.n)
        for eid in self.short_tags:
            dsu.union(*g.by_id[eid])
        if dsu.find(self.s) == dsu.find(self.t):
            return SHORT
        dsu = DisjointSet(g.n)
        for eid in set(g.edge_ids) - self.cut_tags:
            dsu.union(*g.by_id[eid])
        if dsu.find(self.s) != dsu.find(self.t):
            return CUT
        return None


# ---------------------------------------------------------------------------
# analysis certificates


@dataclass(frozen=True)
class ShortCertificate:
    """Two spanning trees of the playable region sharing at most one edge.

    nodes: the region (all of V for the global game, the 2-tree-connected
    set U for s-t); first_edge: the edge Short tags first (the common tree
    edge, or the s-t contraction move), if any.
    """

    nodes: frozenset[int]
    trees: tuple[tuple[int, ...], tuple[int, ...]]
    first_edge: int | None = None


@dataclass(frozen=True)
class CutCertificate:
    """Deficient partition (global) or separating partition with a forest
    split of the quotient (s-t)."""

    partition: Partition
    deficit: int
    forest_split: tuple[tuple[int, ...], tuple[int, ...]] | None = None


@dataclass(frozen=True)
class GameAnalysis:
    winner: str
    certificate: object | None
    note: str | None = None


def _validate(graph: Graph, variant: str, first: str, s, t) -> None:
    if variant not in (GLOBAL, ST):
        raise InputError(f"unknown variant {variant!r}")
    if first not in (SHORT, CUT):
        raise InputError(f"unknown first mover {first!r}")
    if graph.n < 3:
        raise InputError("the game needs at least 3 nodes")
    if not graph.is_connected():
        raise InputError("the game needs a connected graph")
    if variant == ST:
        if s is None or t is None:
            raise InputError("s-t variant needs both terminals")
        if not (0 <= s < graph.n and 0 <= t < graph.n) or s == t:
            raise InputError("terminals must be distinct valid nodes")


def _trees_sharing_at_most_one(graph: Graph):
    """Two spanning trees with at most one common edge (needs deficiency
    <= 1); returns (shared-edge-or-None, (tree1, tree2))."""
    packed = pack_spanning_trees(graph, 2)
    if isinstance(packed, TreePacking):
        return None, packed.trees
    # deficiency exactly 1: add one parallel copy of a tree edge, pack,
    # then swap the copy back to the original edge
    from .forests import Augmentation, augment_to_k_tree_connected

    aug = augment_to_k_tree_connected(graph, 2, mode="parallel")
    assert isinstance(aug, Augmentation) and len(aug.new_edges) == 1
    (u, v) = aug.new_edges[0]
    plus = graph.add_edges([(u, v)])
    virtual = max(plus.edge_ids)
    packed = pack_spanning_trees(plus, 2)
    assert isinstance(packed, TreePacking)
    original = min(
        eid for eid, a, b in graph.edges if {a, b} == {u, v}
    )
    trees = []
    for tree in packed.trees:
        trees.append(tuple(sorted(original if eid == virtual else eid for eid in tree)))
    shared = set(trees[0]) & set(trees[1])
    if len(shared) > 1:
        raise InternalCertificateError("tree pair shares more than one edge")
    return (original if shared else None), (trees[0], trees[1])


def _analyze_st_cut_first(graph: Graph, s: int, t: int) -> GameAnalysis:
    bricks = brick_partition(graph, 2)
    bi = bricks.block_index
    if bi[s] == bi[t]:
        block = bricks.blocks[bi[s]]
        sub, _ = graph.induced(block)
        packed = pack_spanning_trees(sub, 2)
        if not isinstance(packed, TreePacking):
            raise InternalCertificateError("brick block does not pack two trees")
        return GameAnalysis(SHORT, ShortCertificate(block, packed.trees))
    quotient = contract(graph, bricks)
    deficit = bricks.deficit(graph, 2)
    plus = quotient.add_edges([(bi[s], bi[t])])
    virtual = max(plus.edge_ids)
    split = None
    res = extend_forests(
        plus, [{virtual}, set()], [set(plus.edge_ids)] * 2, "cover"
    )
    if isinstance(res, ForestCover):
        f1 = tuple(eid for eid in res.forests[0] if eid != virtual)
        split = (f1, res.forests[1])
    note = None if split is not None else "no forest split found for the separating partition"
    return GameAnalysis(CUT, CutCertificate(bricks, deficit, split), note)


def analyze(graph: Graph, variant: str, first: str,
            s: int | None = None, t: int | None = None) -> GameAnalysis:
    """Predicted winner with a strategy certificate.

    global, Cut first: Short wins iff two disjoint spanning trees exist.
    global, Short first: Short wins iff the 2-deficiency is at most 1
    (two spanning trees sharing at most one edge).
    s-t: Short wins iff some set containing both terminals induces a
    2-tree-connected subgraph (Short first gains one contraction move).
    """
    _validate(graph, variant, first, s, t)
    if variant == GLOBAL:
        if first == CUT:
            res = pack_spanning_trees(graph, 2)
            if isinstance(res, TreePacking):
                return GameAnalysis(
                    SHORT, ShortCertificate(frozenset(range(graph.n)), res.trees)
                )
            return GameAnalysis(CUT, CutCertificate(res.partition, res.deficit))
        deficiency, witness = partition_deficiency(graph, 2)
        if deficiency <= 1:
            shared, trees = _trees_sharing_at_most_one(graph)
            return GameAnalysis(
                SHORT,
                ShortCertificate(frozenset(range(graph.n)), trees, first_edge=shared),
            )
        return GameAnalysis(CUT, CutCertificate(witness, deficiency))
    if first == CUT:
        return _analyze_st_cut_first(graph, s, t)
    # Short first: winning without the extra move, or one free contraction
    direct = _analyze_st_cut_first(graph, s, t)
    if direct.winner == SHORT:
        return direct
    for eid, u, v in sorted(graph.edges):
        blocks = [{u, v}] + [{w} for w in range(graph.n) if w not in (u, v)]
        partition = Partition.from_blocks(graph.n, blocks)
        quotient = contract(graph, partition)
        bi = partition.block_index
        inner = _analyze_st_cut_first(quotient, bi[s], bi[t])
        if inner.winner == SHORT:
            cert: ShortCertificate = inner.certificate
            nodes = frozenset().union(
                *(partition.blocks[b] for b in cert.nodes)
            )
            return GameAnalysis(
                SHORT, ShortCertificate(nodes, cert.trees, first_edge=eid)
            )
    return GameAnalysis(
        CUT, None, note="Short has no winning first move; no closed-form certificate"
    )


# ---------------------------------------------------------------------------
# strategy cores


@dataclass(frozen=True)
class ShortCore:
    """Derived graph (Short tags contracted, Cut tags deleted, restricted
    to the certificate region) carrying two disjoint spanning trees."""

    side: str
    graph: Graph
    node_map: tuple[int, ...]  # original node -> derived node, -1 outside
    trees: tuple[tuple[int, ...], tuple[int, ...]]
    pending: int | None = None


@dataclass(frozen=True)
class CutCore:
    """Deficient partition with its cross-edge list (global variant)."""

    side: str
    partition: Partition
    cross_edges: tuple[int, ...]


@dataclass(frozen=True)
class CutStCore:
    """Pairing core for Cut in the s-t game (dual of Short's tree pair).

    graph: the brick quotient with Cut's claims deleted and Short's claims
    contracted, plus a virtual terminal edge recording where s and t live.
    trees: two spanning trees through the virtual edge that jointly cover
    every region edge; their complements are Cut's two disjoint claim
    reservoirs.  A Short contraction that opens a cycle in one tree forces
    the deletion reply from that cycle.  pending: at most one edge Cut
    claims before anything else (a quotient s-t edge or the one edge left
    uncovered by the pair).  synced: history prefix already incorporated.
    """

    side: str
    graph: Graph
    virtual: int
    trees: tuple[tuple[int, ...], tuple[int, ...]]
    pending: tuple[int, ...] = ()
    synced: int = 0


@dataclass(frozen=True)
class DeferredCutCore:
    """Cut moving second in the s-t game: the pairing structure is built
    only after Short's first contraction reshapes the bricks."""

    side: str
    s: int
    t: int


@dataclass(frozen=True)
class HeuristicCore:
    """No certificate: the predicted loser plays a one-ply deficiency
    heuristic; explicitly not guaranteed."""

    side: str


def _terminals_cut(graph: Graph, virtual: int) -> bool:
    """True when the remaining playable edges no longer join s and t."""
    s, t = graph.by_id[virtual]
    keep = set(graph.edge_ids) - {virtual}
    comps = graph.components(keep)
    return next(c for c in comps if s in c) != next(c for c in comps if t in c)


def _merged_tree_pair(base: Graph, sq: int, tq: int):
    """Two terminal-separating spanning forests covering all of `base`,
    read off a 2-forest decomposition of the terminal-identified graph."""
    from .forests import decompose_forests

    blocks = [{sq, tq}] + [{w} for w in range(base.n) if w not in (sq, tq)]
    merged = contract(base, Partition.from_blocks(base.n, blocks))
    if merged.m != base.m:
        return None  # an edge joins the terminals; caller removes it first
    if not merged.is_connected():
        return None
    res = decompose_forests(merged, 2)
    if not isinstance(res, ForestCover):
        return None
    trees = []
    for forest in res.forests:
        dsu = DisjointSet(merged.n)
        tree = set(forest)
        for eid in forest:
            dsu.union(*merged.by_id[eid])
        for eid in sorted(merged.edge_ids):
            if eid not in tree and dsu.union(*merged.by_id[eid]):
                tree.add(eid)
        trees.append(tree)
    return trees[0], trees[1]


def _build_cut_st_core(graph: Graph, s: int, t: int, bricks: Partition):
    """Pairing core on the brick quotient, or None.

    One pre-claim is available (Cut effectively moves first after it), so a
    single quotient s-t edge or a single uncovered edge is tolerated.
    """
    quotient = contract(graph, bricks)
    bi = bricks.block_index
    sq, tq = bi[s], bi[t]
    st_edges = sorted(
        eid for eid, u, v in quotient.edges if {u, v} == {sq, tq}
    )
    if len(st_edges) > 1:
        return None
    base = quotient.delete_edges(st_edges)
    pending = list(st_edges)
    pair = _merged_tree_pair(base, sq, tq)
    if pair is None and not pending:
        for x in sorted(base.edge_ids):
            pair = _merged_tree_pair(base.delete_edges({x}), sq, tq)
            if pair is not None:
                pending = [x]
                break
    if pair is None:
        return None
    # real edges always carry non-negative ids, so -1 can never collide,
    # even with edges that vanished from this quotient but remain playable
    virtual = -1
    plus = Graph(base.n, base.edges + ((virtual, sq, tq),))
    trees = tuple(tuple(sorted(t_ | {virtual})) for t_ in pair)
    working = plus.delete_edges(pending)
    for tree in trees:
        if not working.is_spanning_tree(tree):
            raise InternalCertificateError("pairing tree is not spanning")
    return CutStCore(CUT, plus, virtual, trees, tuple(pending))


def build_core(graph: Graph, analysis: GameAnalysis, side: str,
               variant: str = GLOBAL, first: str = CUT,
               s: int | None = None, t: int | None = None):
    """Initial strategy core for the engine playing `side`."""
    if analysis.winner != side or (analysis.certificate is None and side == SHORT):
        return HeuristicCore(side)
    cert = analysis.certificate
    if side == SHORT:
        assert isinstance(cert, ShortCertificate)
        nodes = sorted(cert.nodes)
        sub, relabel = graph.induced(nodes)
        node_map = tuple(relabel.get(v, -1) for v in range(graph.n))
        return ShortCore(SHORT, sub, node_map, cert.trees, cert.first_edge)
    if variant == GLOBAL:
        assert isinstance(cert, CutCertificate)
        cross = tuple(cert.partition.cross_edges(graph))
        return CutCore(CUT, cert.partition, cross)
    if first == SHORT:
        return DeferredCutCore(CUT, s, t)
    assert isinstance(cert, CutCertificate)
    core = _build_cut_st_core(graph, s, t, cert.partition)
    return core if core is not None else HeuristicCore(CUT)


def _contract_edge(core: ShortCore, eid: int) -> ShortCore:
    """Contract a derived edge Short has tagged; repair both trees."""
    g = core.graph
    u, v = g.by_id[eid]
    trees = [set(t) for t in core.trees]
    removed = {eid}
    for tree in trees:
        tree.discard(eid)
    # contracting identifies u and v: each tree still containing a u-v path
    # would close a cycle, so drop the lowest-id edge on that path
    for tree in trees:
        path = _tree_path(g, tree, u, v)
        if path:
            tree.discard(min(path))
    blocks = [{u, v}] + [{w} for w in range(g.n) if w not in (u, v)]
    partition = Partition.from_blocks(g.n, blocks)
    derived = contract(g.delete_edges(removed), partition)
    bi = partition.block_index
    node_map = tuple(
        bi[core.node_map[w]] if core.node_map[w] >= 0 else -1
        for w in range(len(core.node_map))
    )
    return ShortCore(
        SHORT, derived, node_map,
        (tuple(sorted(trees[0])), tuple(sorted(trees[1]))),
        None,
    )


def _tree_path(graph: Graph, tree_ids, a: int, b: int) -> list[int]:
    """Edge ids on the unique a-b path inside a forest (empty if none)."""
    if a == b:
        return []
    adjacency: dict[int, list[tuple[int, int]]] = {}
    for eid in tree_ids:
        u, v = graph.by_id[eid]
        adjacency.setdefault(u, []).append((eid, v))
        adjacency.setdefault(v, []).append((eid, u))
    parent: dict[int, tuple[int, int]] = {a: (-1, a)}
    stack = [a]
    while stack:
        u = stack.pop()
        if u == b:
            break
        for eid, v in adjacency.get(u, []):
            if v not in parent:
                parent[v] = (eid, u)
                stack.append(v)
    if b not in parent:
        return []
    path = []
    node = b
    while node != a:
        eid, node = parent[node]
        path.append(eid)
    return path


def _delete_edge(core: ShortCore, eid: int) -> tuple[ShortCore, int | None]:
    """Remove a Cut-tagged derived edge; if it hit a tree, return the
    forced reconnecting reply from the other tree."""
    g = core.graph
    trees = [set(t) for t in core.trees]
    hit = 0 if eid in trees[0] else 1 if eid in trees[1] else None
    if hit is None:
        return replace(core, graph=g.delete_edges({eid})), None
    trees[hit].discard(eid)
    dsu = DisjointSet(g.n)
    for other in trees[hit]:
        dsu.union(*g.by_id[other])
    candidates = [
        f for f in sorted(trees[1 - hit])
        if dsu.find(g.by_id[f][0]) != dsu.find(g.by_id[f][1])
    ]
    if not candidates:
        raise InternalCertificateError("no reconnecting edge: tree invariant broken")
    reply = candidates[0]
    new_core = replace(
        core,
        graph=g.delete_edges({eid}),
        trees=(tuple(sorted(trees[0])), tuple(sorted(trees[1]))),
    )
    return new_core, reply


def _cut_core_react(core: CutStCore, eid: int) -> tuple[CutStCore, int | None]:
    """Incorporate a Short contraction; the tree the contraction closed a
    cycle in forces the deletion reply from that cycle."""
    g = core.graph
    if eid not in g.by_id:
        return core, None
    u, v = g.by_id[eid]
    trees = [set(t) for t in core.trees]
    parallels = {
        other for other, a, b in g.edges if {a, b} == {u, v} and other != eid
    }
    for tree in trees:
        tree.discard(eid)
        tree.difference_update(parallels)  # loops vanish under contraction
    blocks = [{u, v}] + [{w} for w in range(g.n) if w not in (u, v)]
    derived = contract(g, Partition.from_blocks(g.n, blocks))
    out = replace(
        core, graph=derived,
        trees=(tuple(sorted(trees[0])), tuple(sorted(trees[1]))),
    )
    if core.virtual not in derived.by_id:
        # Short merged the terminal blocks; nothing left to pair on
        return out, None
    forced = None
    for i, tree in enumerate(trees):
        if len(tree) <= derived.n - 1:
            continue
        # the one cycle runs along the old u-v path of this tree; reply
        # with a path edge that is neither shared nor virtual
        path = _tree_path(g, tree, u, v)
        other = trees[1 - i]
        candidates = [
            f for f in sorted(path) if f not in other and f != core.virtual
        ]
        if not candidates:
            raise InternalCertificateError("cut pairing found no reply edge")
        forced = candidates[0]
    return out, forced


def _cut_core_self_tag(core: CutStCore, eid: int) -> CutStCore:
    """Apply Cut's own deletion; a tree losing a real edge reconnects
    through the lowest-id crossing edge."""
    g = core.graph
    if eid not in g.by_id:
        return core
    derived = g.delete_edges({eid})
    trees = [set(t) for t in core.trees]
    for tree in trees:
        if eid not in tree:
            continue
        tree.discard(eid)
        dsu = DisjointSet(derived.n)
        for other in tree:
            dsu.union(*derived.by_id[other])
        if len({dsu.find(w) for w in range(derived.n)}) > 1:
            reconnect = [
                f for f, a, b in sorted(derived.edges)
                if dsu.find(a) != dsu.find(b)
            ]
            if not reconnect:
                # the deleted edge was a bridge of the region: the region
                # is split and the pairing has done its job
                continue
            tree.add(reconnect[0])
    return replace(
        core, graph=derived,
        trees=(tuple(sorted(trees[0])), tuple(sorted(trees[1]))),
    )


def _cut_st_move(state: GameState, core: CutStCore) -> tuple[int, CutStCore]:
    tagged = state.short_tags | state.cut_tags
    forced = None
    idx = core.synced
    while idx < len(state.history):
        mover, eid = state.history[idx]
        idx += 1
        if mover == CUT:
            continue
        core, reply = _cut_core_react(core, eid)
        if reply is not None:
            forced = reply
    core = replace(core, synced=idx)
    pending = [eid for eid in core.pending if eid not in tagged]
    if pending:
        eid = pending[0]
        core = replace(core, pending=tuple(pending[1:]))
        return eid, _cut_core_self_tag(core, eid)
    if forced is not None and forced not in tagged:
        return forced, _cut_core_self_tag(core, forced)
    # free move: win if possible, else claim a non-bridge region edge
    g = core.graph
    playable = [
        eid for eid in sorted(g.edge_ids)
        if eid not in tagged and eid != core.virtual
    ]
    if core.virtual in g.by_id:
        for eid in playable:
            if _terminals_cut(g.delete_edges({eid}), core.virtual):
                return eid, _cut_core_self_tag(core, eid)
    base_comps = len(g.components())
    for eid in playable:
        if len(g.components(set(g.edge_ids) - {eid})) == base_comps:
            return eid, _cut_core_self_tag(core, eid)
    if playable:
        return playable[0], _cut_core_self_tag(core, playable[0])
    return state.untagged()[0], core


def engine_move(state: GameState, core) -> tuple[int, object]:
    """Edge the engine tags now, plus the updated core."""
    if state.to_move != core.side:
        raise InputError("not the engine's turn")
    untagged = state.untagged()
    if not untagged:
        raise InputError("no untagged edge left")

    if isinstance(core, CutCore):
        tagged = state.short_tags | state.cut_tags
        for eid in core.cross_edges:
            if eid not in tagged:
                return eid, core
        return untagged[0], core

    if isinstance(core, CutStCore):
        return _cut_st_move(state, core)

    if isinstance(core, DeferredCutCore):
        if not state.history or state.history[0][0] != SHORT:
            return _heuristic_move(state, HeuristicCore(CUT)), core
        first_edge = state.history[0][1]
        u, v = state.graph.by_id[first_edge]
        blocks = [{u, v}] + [{w} for w in range(state.graph.n) if w not in (u, v)]
        partition = Partition.from_blocks(state.graph.n, blocks)
        derived = contract(state.graph, partition)
        bi = partition.block_index
        inner = _analyze_st_cut_first(derived, bi[core.s], bi[core.t])
        if inner.winner != CUT or not isinstance(inner.certificate, CutCertificate):
            return _heuristic_move(state, HeuristicCore(CUT)), HeuristicCore(CUT)
        built = _build_cut_st_core(derived, bi[core.s], bi[core.t],
                                   inner.certificate.partition)
        if built is None:
            return _heuristic_move(state, HeuristicCore(CUT)), HeuristicCore(CUT)
        built = replace(built, synced=1)
        return _cut_st_move(state, built)

    if isinstance(core, HeuristicCore):
        return _heuristic_move(state, core), core

    assert isinstance(core, ShortCore)
    if core.pending is not None and core.pending in {
        eid for eid in untagged
    }:
        eid = core.pending
        if eid in core.graph.by_id:
            return eid, _contract_edge(replace(core, pending=None), eid)
        return eid, replace(core, pending=None)
    # react to Cut's latest tag if it touched the derived graph
    forced: int | None = None
    working = core
    if state.history and state.history[-1][0] == CUT:
        last = state.history[-1][1]
        if last in working.graph.by_id:
            working, forced = _delete_edge(working, last)
    if forced is not None:
        return forced, _contract_edge(working, forced)
    # free move: lowest-id untagged edge, preferring the derived region
    for eid in untagged:
        if eid in working.graph.by_id:
            return eid, _contract_edge(working, eid)
    return untagged[0], working


def _derived_for_heuristic(state: GameState) -> Graph:
    blocks = DisjointSet(state.graph.n)
    for eid in state.short_tags:
        blocks.union(*state.graph.by_id[eid])
    groups: dict[int, set[int]] = {}
    for v in range(state.graph.n):
        groups.setdefault(blocks.find(v), set()).add(v)
    partition = Partition.from_blocks(state.graph.n, groups.values())
    return contract(state.graph.delete_edges(state.cut_tags), partition)


def _heuristic_move(state: GameState, core: HeuristicCore) -> int:
    """One-ply look-ahead on the 2-deficiency of the derived graph."""
    derived = _derived_for_heuristic(state)
    best_edge = None
    best_score = None
    for eid in state.untagged():
        if eid not in derived.by_id:
            continue
        if core.side == CUT:
            probe = derived.delete_edges({eid})
            score = partition_deficiency(probe, 2)[0]
        else:
            u, v = derived.by_id[eid]
            if u == v:
                continue
            blocks = [{u, v}] + [{w} for w in range(derived.n) if w not in (u, v)]
            probe = contract(derived.delete_edges({eid}),
                             Partition.from_blocks(derived.n, blocks))
            score = -partition_deficiency(probe, 2)[0]
        if best_score is None or score > best_score:
            best_edge, best_score = eid, score
    if best_edge is None:
        return state.untagged()[0]
    return best_edge


# ---------------------------------------------------------------------------
# playout harness


@dataclass(frozen=True)
class Transcript:
    moves: tuple[tuple[str, int], ...]
    winner: str


def play_out(graph: Graph, variant: str, first: str, engine_side: str,
             opponent_policy, s: int | None = None, t: int | None = None,
             check_cores: bool = False) -> Transcript:
    """Run one full game: the engine plays `engine_side` from its analysis
    certificate, the opponent is a callable state -> edge id."""
    analysis = analyze(graph, variant, first, s, t)
    core = build_core(graph, analysis, engine_side, variant, first, s, t)
    state = GameState.opening(graph, variant, first, s, t)
    while state.winner() is None and state.untagged():
        if state.to_move == engine_side:
            eid, core = engine_move(state, core)
            if check_cores and isinstance(core, ShortCore) and core.graph.n > 1:
                probe = pack_spanning_trees(core.graph, 2)
                if not isinstance(probe, TreePacking):
                    raise InternalCertificateError("short core lost its tree pair")
        else:
            eid = opponent_policy(state)
        state = state.apply(eid)
    winner = state.winner()
    if winner is None:
        raise InternalCertificateError("finished game without a winner")
    return Transcript(state.history, winner)
