import random
from itertools import combinations

import pytest
from hypothesis import given, strategies as st

from conftest import specs, tournaments
from oracles import has_cycle_any_length, is_transitive_by_order, random_tournament
from sectour.dsl import parse_spec
from sectour.errors import InvalidParameter
from sectour.tournament import (Compose, HighlyRegular, Tournament, Transitive,
                                compose, find_dicycle, format_edge_list,
                                highly_regular, is_acyclic_set, is_equivalent_set,
                                parse_edge_list, realize, replace_block,
                                resolve_block, transitive_tournament)


def test_r3_is_the_directed_triangle():
    assert set(highly_regular(3).edges()) == {(1, 2), (2, 3), (3, 1)}


def test_r1_has_no_edges():
    T = highly_regular(1)
    assert T.n == 1 and T.edges() == []


def test_r5_steps():
    T = highly_regular(5)
    assert set(T.edges()) == {(i, (i + s - 1) % 5 + 1) for i in range(1, 6) for s in (1, 2)}


@pytest.mark.parametrize("m", [0, -3, 2, 10])
def test_highly_regular_rejects_bad_order(m):
    with pytest.raises(InvalidParameter):
        highly_regular(m)


@pytest.mark.parametrize("m", range(1, 102, 2))
def test_highly_regular_is_regular(m):
    T = highly_regular(m)
    assert {T.out_degree(v) for v in T.vertices} == {(m - 1) // 2}
    assert all(T.out_degree(v) + T.in_degree(v) == m - 1 for v in T.vertices)


def test_transitive():
    assert transitive_tournament(1).n == 1
    assert set(transitive_tournament(3).edges()) == {(1, 2), (1, 3), (2, 3)}
    assert is_acyclic_set(transitive_tournament(4), range(1, 5))
    with pytest.raises(InvalidParameter):
        transitive_tournament(0)


def test_compose_of_points_is_quotient():
    assert compose(highly_regular(3), [highly_regular(1)] * 3) == highly_regular(3)


def test_example_tournament(example):
    T = realize(example)
    assert T.n == 9
    for cyc in [(3, 4, 5), (6, 7, 8)]:
        a, b, c = cyc
        assert T.beats(a, b) and T.beats(b, c) and T.beats(c, a)
    blocks = [{1}, {2}, {3, 4, 5}, {6, 7, 8}, {9}]
    for i in range(5):
        for step in (1, 2):
            j = (i + step) % 5
            assert all(T.beats(u, v) for u in blocks[i] for v in blocks[j])


def test_compose_tt2_has_one_equivalent_pair():
    T = compose(highly_regular(3), [transitive_tournament(2), highly_regular(1), highly_regular(1)])
    assert T.n == 4
    pairs = [p for p in combinations(T.vertices, 2) if is_equivalent_set(T, p)]
    assert pairs == [(1, 2)]


def test_compose_arity_mismatch():
    with pytest.raises(InvalidParameter):
        compose(highly_regular(3), [highly_regular(1)] * 2)


def test_realize_sizes():
    assert realize(Transitive(3)) == transitive_tournament(3)
    assert realize(parse_spec("R3(R3,R3,R1)")).n == 7


def test_r1_spellings_coincide():
    assert HighlyRegular(1) == Transitive(1)
    assert parse_spec("R1") == parse_spec("TT1")


def test_spec_invariants():
    with pytest.raises(InvalidParameter):
        Compose(5, (Transitive(1),) * 4)
    with pytest.raises(InvalidParameter):
        Compose(4, (Transitive(1),) * 4)
    with pytest.raises(InvalidParameter):
        HighlyRegular(4)


@given(specs(max_n=14))
def test_realized_size_is_leaf_sum(spec):
    assert realize(spec).n == spec.n


@given(specs(max_n=12, composite=True))
def test_blocks_restrict_and_are_equivalent(spec):
    T = realize(spec)
    for i, child in enumerate(spec.children, 1):
        sub, verts = resolve_block(spec, (i,))
        assert sub == child
        U = realize(child)
        lo = verts[0] - 1
        assert all(T.beats(u + lo, v + lo) == U.beats(u, v)
                   for u in U.vertices for v in U.vertices if u != v)
        assert is_equivalent_set(T, verts)


def test_acyclic_examples(example):
    T = realize(example)
    assert is_acyclic_set(T, {2, 4, 5, 6, 7})
    assert not is_acyclic_set(T, {6, 7, 8})
    assert is_acyclic_set(T, set()) and is_acyclic_set(T, {1, 6})
    with pytest.raises(InvalidParameter):
        is_acyclic_set(T, {10})


def test_find_dicycle(example):
    T = realize(example)
    a, b, c = find_dicycle(T, {1, 3, 8, 9})
    assert T.beats(a, b) and T.beats(b, c) and T.beats(c, a)
    assert (a, b, c) == (1, 3, 8)
    assert find_dicycle(transitive_tournament(5), range(1, 6)) is None
    assert find_dicycle(highly_regular(3), {1, 2, 3}) == (1, 2, 3)


@given(tournaments(max_n=6), st.data())
def test_acyclicity_matches_brute_force(T, data):
    S = data.draw(st.sets(st.integers(1, T.n)))
    expected = not has_cycle_any_length(T, S)
    assert is_acyclic_set(T, S) == expected == is_transitive_by_order(T, S)
    assert (find_dicycle(T, S) is None) == expected


def test_acyclicity_exhaustive_small():
    rng = random.Random(5)
    for n in range(1, 9):
        T = random_tournament(rng, n)
        for mask in range(1 << n):
            S = [v for v in T.vertices if mask >> (v - 1) & 1]
            assert is_acyclic_set(T, S) == (not has_cycle_any_length(T, S))


NESTED = "R5(R1,R5(R1,R1,R3,R3,R1),R3,R5,R1)"


def test_resolve_block_nested():
    spec = parse_spec(NESTED)
    sub, verts = resolve_block(spec, (2, 3))
    assert sub == HighlyRegular(3)
    # inner Example occupies 2..10, so its vertices 3,4,5 become 4,5,6
    assert verts == (4, 5, 6)
    assert resolve_block(spec, ())[0] == spec
    assert resolve_block(parse_spec("R3(R3,R1,R1)"), (1,))[0] == HighlyRegular(3)
    for bad in [(6,), (1, 1), (2, 6), (0,)]:
        with pytest.raises(InvalidParameter):
            resolve_block(spec, bad)


def test_replace_block_nested():
    spec = parse_spec(NESTED)
    out = replace_block(spec, (2, 3), Transitive(1))
    assert out == parse_spec("R5(R1,R5(R1,R1,R1,R3,R1),R3,R5,R1)")
    assert replace_block(spec, (), HighlyRegular(3)) == HighlyRegular(3)
    assert resolve_block(replace_block(spec, (3,), Transitive(4)), (3,))[0] == Transitive(4)
    with pytest.raises(InvalidParameter):
        replace_block(spec, (9,), Transitive(1))


@given(tournaments(max_n=7))
def test_edge_list_round_trip(T):
    assert parse_edge_list(format_edge_list(T)) == T


@pytest.mark.parametrize("text", [
    "3\n1 2\n2 3\n",            # missing pair
    "3\n1 2\n2 1\n2 3\n3 1\n",  # both directions
    "2\n1 1\n",                 # self loop
    "2\n1 3\n",                 # out of range
    "x\n",
])
def test_edge_list_rejects(text):
    with pytest.raises(InvalidParameter):
        parse_edge_list(text)


def test_tournament_validates_rows():
    with pytest.raises(InvalidParameter):
        Tournament(2, (0b10, 0b01))
    with pytest.raises(InvalidParameter):
        Tournament(2, (0, 0))
