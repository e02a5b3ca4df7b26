import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sylva.core import (
    Digraph,
    Graph,
    Partition,
    contract,
    min_in_cut,
    partition_stats,
)
from sylva.errors import InputError


def test_loops_rejected():
    with pytest.raises(InputError):
        Graph.build(3, [(0, 0)])
    with pytest.raises(InputError):
        Digraph.build(3, [(1, 1)])


def test_parallel_edges_allowed():
    g = Graph.build(2, [(0, 1), (0, 1), (1, 0)])
    assert g.m == 3
    assert g.degree(0) == 3


def test_partition_validation():
    with pytest.raises(InputError):
        Partition.from_blocks(3, [{0, 1}])  # uncovered node
    with pytest.raises(InputError):
        Partition.from_blocks(3, [{0, 1}, {1, 2}])  # overlap
    with pytest.raises(InputError):
        Partition.from_blocks(3, [{0, 1, 2}, set()])


def test_partition_stats_triangle(triangle):
    # every edge crosses the singleton partition
    assert partition_stats(triangle, Partition.singletons(3)) == (3, (0, 0, 0))
    # nothing crosses the trivial partition
    assert partition_stats(triangle, Partition.trivial(3)) == (0, (3,))


def test_partition_stats_k4(k4):
    cross, induced = partition_stats(k4, Partition.from_blocks(4, [{0, 1}, {2, 3}]))
    assert cross == 4
    assert induced == (1, 1)


def test_contract_identity_up_to_relabel(k4):
    res = contract(k4, Partition.singletons(4))
    assert res.n == 4
    assert sorted(res.edges) == sorted(k4.edges)


def test_contract_triangle_keeps_ids(triangle):
    res = contract(triangle, Partition.from_blocks(3, [{0, 1}, {2}]))
    assert res.n == 2
    # edges 12 and 02 survive with their original ids, 01 is gone
    assert sorted(e[0] for e in res.edges) == [1, 2]


def test_contract_to_point(k4):
    assert contract(k4, Partition.trivial(4)).m == 0


@settings(max_examples=60, deadline=None)
@given(st.data())
def test_partition_identity_random_multigraphs(data):
    n = data.draw(st.integers(2, 7))
    m = data.draw(st.integers(0, 12))
    pairs = [
        data.draw(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))
                  .filter(lambda uv: uv[0] != uv[1]))
        for _ in range(m)
    ]
    g = Graph.build(n, pairs)
    codes = [data.draw(st.integers(0, n - 1)) for _ in range(n)]
    blocks = {}
    for v, c in enumerate(codes):
        blocks.setdefault(c, set()).add(v)
    p = Partition.from_blocks(n, blocks.values())
    cross, induced = partition_stats(g, p)
    assert cross + sum(induced) == g.m
    # contraction then singleton stats reproduces the cross count
    q = contract(g, p)
    cross2, _ = partition_stats(q, Partition.singletons(q.n))
    assert cross2 == cross


def test_min_in_cut_cycle(directed_triangle):
    value, cut = min_in_cut(directed_triangle, 0, 2)
    assert value == 1
    assert 2 in cut and 0 not in cut
    assert directed_triangle.in_degree(cut) == 1


def test_min_in_cut_doubled():
    d = Digraph.build(3, [(0, 1), (1, 2), (2, 0)] * 2)
    assert min_in_cut(d, 0, 2)[0] == 2


def test_min_in_cut_isolated_root():
    d = Digraph.build(2, [(0, 1)])
    value, cut = min_in_cut(d, 1, 0)
    assert value == 0
    assert cut == frozenset({0})


def test_min_in_cut_matches_enumeration():
    from sylva.testkit import oracle_rooted_connectivity, random_digraph
    from sylva.arborescences import rooted_connectivity

    for seed in range(25):
        d = random_digraph(seed, 5, 8)
        value, cut = rooted_connectivity(d, 0)
        oracle_value, _ = oracle_rooted_connectivity(d, 0)
        assert value == oracle_value
        assert d.in_degree(cut) == value
