import json
from itertools import combinations

import pytest
from hypothesis import given

from conftest import specs
from sectour.complex import acyclic_complex, dimension
from sectour.dsl import parse_spec
from sectour.errors import InvalidParameter
from sectour.homology import chain_summary
from sectour.morse import engine_histogram
from sectour.structure import (alternating_family, deep_triangles, depth_eq_dim,
                               depth_formula, dim_formula, gap_family, is_elementary,
                               nonelementary_family, normalize, pair_lower_bound,
                               structure_report, width)
from sectour.tournament import Compose, HighlyRegular, Transitive, realize


def top_dim(hist):
    return max(hist, default=0)


def enumerated_dim(spec, max_n=20):
    return dimension(acyclic_complex(realize(spec), max_n))


# --- closed forms on named examples ----------------------------------------

def test_example_formulas(example):
    assert [dim_formula(c) for c in example.children] == [0, 0, 1, 1, 0]
    assert dim_formula(example) == 4 == enumerated_dim(example)
    assert depth_formula(example) == 4


@pytest.mark.parametrize("spec,dim,depth", [
    (Transitive(1), 0, 0),
    (Transitive(5), 4, 0),
    (HighlyRegular(3), 1, 1),
    (HighlyRegular(9), 4, 1),
    (parse_spec("R3(R3,R3,R1)"), 3, 3),
    (parse_spec("R3(TT3,R1,R1)"), 3, 1),
])
def test_leaf_and_small_values(spec, dim, depth):
    assert dim_formula(spec) == dim == enumerated_dim(spec)
    assert depth_formula(spec) == depth


@pytest.mark.parametrize("r", range(2, 9))
def test_alternating_family(r):
    spec = alternating_family(r)
    expected = 2 * -(-(r + 1) // 2) + (r + 1) // 2 - 1
    assert dim_formula(spec) == expected
    assert depth_formula(spec) == 1
    assert is_elementary(spec)
    if spec.n <= 17:
        assert enumerated_dim(spec) == expected
        assert engine_histogram(spec) == {1: 1}


@pytest.mark.parametrize("r", range(2, 6))
def test_nonelementary_family(r):
    spec = nonelementary_family(r)
    assert not is_elementary(spec)
    assert depth_formula(spec) == 2 * r + 1
    if r >= 3:
        assert dim_formula(spec) == 3 * r
    else:
        # the largest window for r = 2 runs through blocks 1..3, not 3..5
        assert dim_formula(spec) == 7


def test_nonelementary_r2_by_enumeration():
    spec = nonelementary_family(2)
    assert spec.n == 17
    assert enumerated_dim(spec) == 7
    assert top_dim(engine_histogram(spec, max_n=17)) == 5


@pytest.mark.parametrize("k", [1, 2, 3])
def test_gap_family(k):
    spec = gap_family(k)
    assert dim_formula(spec) - depth_formula(spec) == k
    assert enumerated_dim(spec) - top_dim(engine_histogram(spec)) == k
    check = depth_eq_dim(spec)
    assert not check.holds and check.dim - check.depth == k


def test_family_arguments():
    for f in (alternating_family, nonelementary_family):
        with pytest.raises(InvalidParameter):
            f(1)
    with pytest.raises(InvalidParameter):
        gap_family(0)


# --- width, elementary, triangles ------------------------------------------

@pytest.mark.parametrize("text,w,elem", [
    ("R5(R1,R1,R3,R3,R1)", 2, False),
    ("R5(R1,R1,R1,R1,R1)", 0, True),
    ("R5(R3,R3,R3,R1,R1)", 3, False),
    ("R5(R3,R1,R3,R1,R1)", 1, True),
    ("R5(R3,R1,R1,R1,R3)", 2, False),  # cyclic run through the seam
    ("R3(R3,R3,R3)", 3, False),
    ("R3(TT4,R1,TT2)", 0, True),
])
def test_width_and_elementary(text, w, elem):
    spec = parse_spec(text)
    assert width(spec) == w
    assert is_elementary(spec) == elem == (w <= spec.r - 1)


def brute_width(spec):
    flags = [not isinstance(c, Transitive) for c in spec.children]
    m = spec.m
    return max(k for k in range(m + 1)
               if k == 0 or any(all(flags[(j + t) % m] for t in range(k)) for j in range(m)))


@given(specs(max_n=14, composite=True))
def test_width_brute_force(spec):
    assert width(spec) == brute_width(spec)


def test_width_needs_composition():
    for leaf in (Transitive(3), HighlyRegular(5)):
        with pytest.raises(InvalidParameter):
            width(leaf)
        with pytest.raises(InvalidParameter):
            is_elementary(leaf)
        with pytest.raises(InvalidParameter):
            depth_eq_dim(leaf)


def test_deep_triangles(example):
    assert deep_triangles(example) == [((3,), (3, 4, 5)), ((4,), (6, 7, 8))]
    assert deep_triangles(Transitive(4)) == []
    nested = parse_spec("R3(R3(R3,R1,R1),R1,R1)")
    assert deep_triangles(nested) == [((1, 1), (1, 2, 3))]
    T = realize(example)
    for _, (a, b, c) in deep_triangles(example):
        assert T.beats(a, b) and T.beats(b, c) and T.beats(c, a)


def test_normalize_examples():
    assert normalize(parse_spec("R3(R5,TT4,R1)")) == parse_spec("R3(R3,R1,R1)")
    assert normalize(HighlyRegular(7)) == HighlyRegular(3)
    assert normalize(Transitive(4)) == Transitive(1)
    ex = parse_spec("R5(R1,R1,R3,R3,R1)")
    assert normalize(ex) == ex


@given(specs(max_n=14))
def test_normalize_idempotent(spec):
    once = normalize(spec)
    assert normalize(once) == once


@given(specs(max_n=12))
def test_normalize_preserves_betti(spec):
    a = chain_summary(acyclic_complex(realize(spec))).reduced_betti
    b = chain_summary(acyclic_complex(realize(normalize(spec)))).reduced_betti
    assert a == b


# --- corpus properties ------------------------------------------------------

def test_formulas_match_enumeration(corpus14):
    for spec in corpus14:
        assert dim_formula(spec) == enumerated_dim(spec), str(spec)
        assert depth_formula(spec) == top_dim(engine_histogram(spec)), str(spec)


def test_depth_at_most_dim_and_pair_bound(corpus14):
    for spec in corpus14:
        assert depth_formula(spec) <= dim_formula(spec)
        if isinstance(spec, Compose):
            assert pair_lower_bound(spec) <= dim_formula(spec)


def test_pair_bound_brute_force(corpus14):
    for spec in corpus14:
        d = [dim_formula(c) for c in spec.children]
        expected = max(d[i] + d[j] for i, j in combinations(range(spec.m), 2)) + spec.r
        assert pair_lower_bound(spec) == expected


def test_elementary_is_a_circle(corpus14):
    seen = 0
    for spec in corpus14:
        if is_elementary(spec):
            seen += 1
            assert depth_formula(spec) == 1
            assert chain_summary(acyclic_complex(realize(spec))).reduced_betti == {1: 1}
    assert seen >= 5


# --- depth = dim characterisation -----------------------------------------

def test_depth_eq_dim_example(example):
    check = depth_eq_dim(example)
    assert check.holds and check.depth == check.dim == 4
    assert check.by_depths is True and check.witness is not None


def test_depth_eq_dim_alternating():
    check = depth_eq_dim(alternating_family(3))
    assert not check.holds and (check.depth, check.dim) == (1, 5)


def _degenerate(spec):
    # all block depths zero with r = 1: depth 1 comes from the circle, not a window
    return spec.r == 1 and all(depth_formula(c) == 0 for c in spec.children)


def test_depth_reading_agrees(corpus14):
    for spec in corpus14:
        check = depth_eq_dim(spec)
        if check.by_depths is None:
            # no window of block depths reaches dim, so equality cannot hold
            assert not check.holds, str(spec)
        elif not _degenerate(spec):
            assert check.by_depths == check.holds, str(spec)


def test_degenerate_counterexample():
    spec = parse_spec("R3(R1,R1,R1)")
    check = depth_eq_dim(spec)
    assert check.holds and check.by_depths is False


def test_dims_reading_disagrees_somewhere(corpus14):
    # with block dims in place of depths the characterisation is not reliable
    bad = [s for s in corpus14 if depth_eq_dim(s).by_dims not in (None, depth_eq_dim(s).holds)]
    assert bad


def test_report_json(example):
    rep = structure_report(example)
    data = json.loads(json.dumps(rep.to_json()))
    assert {"dim", "depth", "width", "elementary", "deep_triangles"} <= set(data)
    assert data["deep_triangles"][0] == {"blocks": [3], "vertices": [3, 4, 5]}
    assert structure_report(Transitive(2)).width is None
