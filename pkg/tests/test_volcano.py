import itertools
import random

import pytest
from hypothesis import given, strategies as st

from drinfeld_selfisog.errors import InvalidInput, TooLarge
from drinfeld_selfisog.volcano import (CraterSpec, SplitData, VolcanoGraph, ascend_target,
                                       branching_factor, build_volcano, count_affine_points,
                                       count_projective_points, crater_graph, horizontal_types,
                                       mutate, preset_volcano, validate_volcano)


def test_branching_examples():
    assert branching_factor(5, 3, 1) == 25
    assert branching_factor(3, 4, 2) == 729
    assert branching_factor(7, 2, 1) == 7
    with pytest.raises(InvalidInput):
        branching_factor(1, 2, 1)


def test_horizontal_examples():
    split = SplitData(1, ((1, 1), (1, 2)))
    assert [(t.exponents, t.cyclic) for t in horizontal_types(2, split)] == [((2, 0), True), ((0, 1), True)]
    assert [t.exponents for t in horizontal_types(1, split)] == [(1, 0)]
    total = SplitData(1, ((1, 1), (1, 1), (1, 1)))
    types = {t.exponents: t.cyclic for t in horizontal_types(2, total)}
    assert types == {(2, 0, 0): True, (0, 2, 0): True, (0, 0, 2): True,
                     (1, 1, 0): False, (1, 0, 1): False, (0, 1, 1): False}
    assert horizontal_types(2, split)[1].kernel_shape == (2,)


@given(st.lists(st.integers(1, 3), min_size=1, max_size=3), st.integers(1, 6))
def test_horizontal_complete(fs, m):
    split = SplitData(1, tuple((1, f) for f in fs))
    got = [t.exponents for t in horizontal_types(m, split)]
    brute = [v for v in itertools.product(range(m + 1), repeat=len(fs))
             if sum(f * k for f, k in zip(fs, v)) == m]
    assert sorted(got) == sorted(brute) and len(set(got)) == len(got)


groups = st.lists(st.integers(1, 5), min_size=0, max_size=2).flatmap(
    lambda inv: st.tuples(st.just(tuple(inv)),
                          st.lists(st.tuples(*[st.integers(0, n - 1) for n in inv]), min_size=1, max_size=3)))


@given(groups)
def test_crater_cycles_match_orders(g):
    inv, images = g
    spec = CraterSpec(inv, tuple(images))
    graph = crater_graph(spec)
    out = graph.out_degree()
    assert all(out[v] == len(images) for v in graph.levels)
    for x in spec.images:
        start = tuple(0 for _ in inv)
        cur, n = spec.add(start, x), 1
        while cur != start:
            cur, n = spec.add(cur, x), n + 1
        assert n == spec.element_order(x)


@given(groups, st.integers(1, 3), st.integers(0, 2), st.integers(0, 10 ** 6))
def test_generated_volcanoes_validate(g, b, depth, seed):
    inv, images = g
    spec = CraterSpec(inv, tuple(images))
    vol = build_volcano(crater_graph(spec), b, depth)
    assert validate_volcano(vol, 3, len(images), b).ok
    if depth:
        bad, _ = mutate(vol, random.Random(seed))
        assert not validate_volcano(bad, 3, len(images), b).ok


def test_graph_io():
    _, g = preset_volcano("r3-cycle", depth=1)
    assert VolcanoGraph.from_json(g.to_json()).to_json() == g.to_json()
    dot = g.to_dot()
    assert dot.count("subgraph cluster_level") == 2 and 'kind="ascending"' in dot
    with pytest.raises(InvalidInput):
        VolcanoGraph.from_json({"vertices": [{"level": [0]}], "edges": []})


def test_validator_messages():
    _, g = preset_volcano("r3-loop", depth=1)
    rep = validate_volcano(g, 3, 1, 25)
    assert rep.ok and rep.notes        # self-loop note
    child = g.vertices_at(1)[0]
    broken = g.copy()
    broken.add_edge(child, child, "ascending")
    assert not validate_volcano(broken, 3, 1, 25).ok
    assert ascend_target((2, 0, 1)) == (1, 0, 0)


def _brute(q, r, f):
    return sum(1 for x in range(q) for y in range(q) if (y ** r - f(x)) % q == 0)


@pytest.mark.parametrize("q,r,text,f", [
    (5, 3, "T^3+T+1", lambda x: x ** 3 + x + 1),
    (5, 3, "T+1", lambda x: x + 1),
    (7, 3, "T^3+2", lambda x: x ** 3 + 2),
    (7, 2, "T^3-T", lambda x: x ** 3 - x),
    (5, 2, "0", lambda x: 0),
])
def test_point_counts(q, r, text, f):
    assert count_affine_points(q, r, text) == _brute(q, r, f)


def test_projective_counts():
    assert count_projective_points(5, 3, "T^3+T+1") == 6
    assert count_projective_points(5, 3, "T+1") == 6          # genus 0: q + 1 points
    assert count_projective_points(7, 2, "T^3-T") == 8
    with pytest.raises(InvalidInput):
        count_projective_points(5, 2, "T^4+1")
    with pytest.raises(TooLarge):
        count_affine_points(2 ** 17 + 29, 2, "T")
