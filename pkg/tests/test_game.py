import itertools

import pytest

from sylva.core import Graph
from sylva.errors import InputError
from sylva.forests import TreePacking, pack_spanning_trees
from sylva.game import (
    CUT,
    SHORT,
    CutCertificate,
    GameState,
    ShortCertificate,
    ShortCore,
    analyze,
    build_core,
    engine_move,
    play_out,
)
from sylva.testkit import oracle_minimax, oracle_short_st_subset, random_multigraph


def exhaustive_adversary_never_beats_engine(g, variant, first, s=None, t=None,
                                            check_cores=False):
    analysis = analyze(g, variant, first, s, t)
    engine = analysis.winner
    core = build_core(g, analysis, engine, variant, first, s, t)

    def rec(state, core):
        w = state.winner()
        if w is not None:
            assert w == engine, f"engine lost: {state.history}"
            return
        if not state.untagged():
            return
        if state.to_move == engine:
            eid, core2 = engine_move(state, core)
            if check_cores and isinstance(core2, ShortCore) and core2.graph.n > 1:
                assert isinstance(pack_spanning_trees(core2.graph, 2), TreePacking)
            rec(state.apply(eid), core2)
        else:
            for eid in state.untagged():
                rec(state.apply(eid), core)

    rec(GameState.opening(g, variant, first, s, t), core)
    return analysis


def test_validation(triangle):
    two = Graph.build(2, [(0, 1)])
    with pytest.raises(InputError):
        analyze(two, "global", "cut")
    with pytest.raises(InputError):
        analyze(Graph.build(4, [(0, 1), (2, 3)]), "global", "cut")
    with pytest.raises(InputError):
        analyze(triangle, "st", "cut")  # missing terminals
    with pytest.raises(InputError):
        analyze(triangle, "st", "cut", 1, 1)


def test_triangle_analysis(triangle):
    res = analyze(triangle, "global", "cut")
    assert res.winner == CUT
    assert isinstance(res.certificate, CutCertificate)
    assert res.certificate.partition.as_lists() == [[0], [1], [2]]
    short_first = analyze(triangle, "global", "short")
    assert short_first.winner == SHORT
    cert = short_first.certificate
    assert isinstance(cert, ShortCertificate)
    # the two trees share exactly the edge Short tags first
    shared = set(cert.trees[0]) & set(cert.trees[1])
    assert shared == {cert.first_edge}


def test_k4_analysis(k4):
    for first in ("cut", "short"):
        res = analyze(k4, "global", first)
        assert res.winner == SHORT


def test_engine_reply_rule(k4):
    analysis = analyze(k4, "global", "cut")
    core = build_core(k4, analysis, SHORT, "global", "cut")
    state = GameState.opening(k4, "global", "cut").apply(0)  # Cut tags edge 01
    eid, _ = engine_move(state, core)
    # the reply is the lowest-id edge of the other tree reconnecting the
    # two components of the hit tree minus the attacked edge
    t1, t2 = core.trees
    hit, other = (t1, t2) if 0 in t1 else (t2, t1)
    comps = k4.components(set(hit) - {0})
    block = next(c for c in comps if 0 in c)
    candidates = [
        f for f in other
        if (k4.by_id[f][0] in block) != (k4.by_id[f][1] in block)
    ]
    assert eid == min(candidates)


def test_engine_any_edge_reply(k4):
    # Cut tags an edge outside both trees: Short replies with the lowest
    # untagged edge of the playable region
    analysis = analyze(k4, "global", "cut")
    core = build_core(k4, analysis, SHORT, "global", "cut")
    outside = [e for e in k4.edge_ids
               if e not in core.trees[0] and e not in core.trees[1]]
    if outside:
        state = GameState.opening(k4, "global", "cut").apply(outside[0])
        eid, _ = engine_move(state, core)
        assert eid == min(e for e in k4.edge_ids if e != outside[0])


def test_cut_engine_tags_cross_edges(triangle):
    analysis = analyze(triangle, "global", "cut")
    core = build_core(triangle, analysis, CUT, "global", "cut")
    state = GameState.opening(triangle, "global", "cut")
    eid, _ = engine_move(state, core)
    assert eid == 0  # all edges cross the singleton partition; lowest id


def test_play_out_engine_vs_engine(k4, triangle):
    def engine_policy(graph, variant, first, s=None, t=None):
        analysis = analyze(graph, variant, first, s, t)
        cores = {
            side: build_core(graph, analysis, side, variant, first, s, t)
            for side in (SHORT, CUT)
        }
        state = GameState.opening(graph, variant, first, s, t)
        while state.winner() is None and state.untagged():
            side = state.to_move
            eid, cores[side] = engine_move(state, cores[side])
            state = state.apply(eid)
        return analysis.winner, state.winner()

    assert engine_policy(k4, "global", "cut") == (SHORT, SHORT)
    assert engine_policy(triangle, "global", "cut") == (CUT, CUT)
    assert engine_policy(triangle, "global", "short") == (SHORT, SHORT)


def test_play_out_harness(k4):
    transcript = play_out(k4, "global", "cut", SHORT,
                          lambda state: state.untagged()[0])
    assert transcript.winner == SHORT
    # transcript alternates starting with Cut
    movers = [m for m, _ in transcript.moves]
    assert movers[0] == CUT
    assert all(movers[i] != movers[i + 1] for i in range(len(movers) - 1))


def test_engine_never_loses_with_core_checks(k4, triangle, c4):
    exhaustive_adversary_never_beats_engine(k4, "global", "cut", check_cores=True)
    exhaustive_adversary_never_beats_engine(k4, "global", "short", check_cores=True)
    exhaustive_adversary_never_beats_engine(triangle, "global", "cut")
    exhaustive_adversary_never_beats_engine(c4, "st", "cut", 0, 2)
    exhaustive_adversary_never_beats_engine(c4, "st", "short", 0, 2)


def test_st_brick_subset_agrees_with_exhaustive_search():
    for seed in range(30):
        g = random_multigraph(seed, 5, 7)
        if not g.is_connected():
            continue
        for s, t in itertools.combinations(range(g.n), 2):
            res = analyze(g, "st", "cut", s, t)
            subset = oracle_short_st_subset(g, s, t)
            assert (res.winner == SHORT) == (subset is not None)


def test_analysis_matches_minimax_random():
    for seed in range(60):
        g = random_multigraph(seed, 4, 6)
        if not g.is_connected():
            continue
        for variant in ("global", "st"):
            for first in ("cut", "short"):
                if variant == "st":
                    for s, t in itertools.combinations(range(g.n), 2):
                        res = analyze(g, variant, first, s, t)
                        assert res.winner == oracle_minimax(g, variant, first, s, t)
                else:
                    res = analyze(g, variant, first)
                    assert res.winner == oracle_minimax(g, variant, first)


def test_winner_detection_terminality(k4):
    # every completed transcript has exactly one winner
    state = GameState.opening(k4, "global", "cut")
    for eid in k4.edge_ids:
        if state.winner() is not None:
            break
        state = state.apply(state.untagged()[0])
    assert state.winner() in (SHORT, CUT)
