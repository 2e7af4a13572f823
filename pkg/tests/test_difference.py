from __future__ import annotations

from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from cograph.core import Cograph, CographError, canonical_form
from cograph.difference import (
    DiffLabeling,
    classify_q,
    detect_diff_torsion_forcers,
    diff_edge,
    enumerate_difference_cographs,
    motif_census,
    pattern_of,
    realize_difference,
)


@pytest.fixture(scope="module")
def five_point():
    return enumerate_difference_cographs(5)


def brute_edge(p, q, m):
    if m == 0:
        return abs(p - q)
    return min(abs(x - y) for x in (p, p + m, p - m) for y in (q,))


def labelings(min_points=3, max_points=6):
    @st.composite
    def build(draw):
        m = draw(st.sampled_from([0, 0, 7, 9, 10, 12, 13, 16]))
        n = draw(st.integers(min_points, max_points if not m else min(max_points, m)))
        hi = m - 1 if m else 30
        vals = draw(st.lists(st.integers(0, hi), min_size=n, max_size=n, unique=True))
        return DiffLabeling(tuple(vals), m)

    return build()


def test_edge_examples():
    assert diff_edge(3, 10, 0) == 7
    assert diff_edge(1, 11, 12) == 2
    assert diff_edge(0, 6, 12) == diff_edge(6, 0, 12) == 6
    with pytest.raises(CographError):
        diff_edge(4, 4)


@given(st.integers(2, 40), st.data())
@settings(max_examples=100, deadline=None)
def test_edge_matches_coset_minimum(m, data):
    p, q = data.draw(st.lists(st.integers(0, m - 1), min_size=2, max_size=2, unique=True))
    assert diff_edge(p, q, m) == brute_edge(p, q, m) == diff_edge(q, p, m)


def test_labeling_rules():
    with pytest.raises(CographError):
        DiffLabeling((0, 1, 1))
    with pytest.raises(CographError):
        DiffLabeling((0, 5), 5)


def test_pattern_examples():
    assert sorted(len(c) for c in pattern_of(DiffLabeling((0, 1, 3))).classes) == [1, 1, 1]
    mid = pattern_of(DiffLabeling((0, 1, 2)))
    assert mid.edge(0, 1) == mid.edge(1, 2) != mid.edge(0, 2)
    assert sorted(len(c) for c in pattern_of(DiffLabeling((0, 1, 2, 3))).classes) == [1, 2, 3]


def test_realize_examples():
    chain = pattern_of(DiffLabeling((0, 1, 2, 3)))
    v = realize_difference(chain)
    assert v.kind == "TorsionFree" and pattern_of(v.witness) == chain
    tri = Cograph.from_function(3, lambda i, j: 0)
    v = realize_difference(tri)
    assert v.kind == "Torsion" and v.witness == DiffLabeling((0, 1, 2), 3)
    # two equal edges at a point force the third edge to double, so it cannot repeat them
    v_with_equal_base = Cograph.from_labels(4, {(0, 1): 0, (1, 2): 0, (0, 2): 0, (0, 3): 1, (1, 3): 2, (2, 3): 3})
    assert realize_difference(v_with_equal_base).kind != "TorsionFree"


def test_census_examples():
    c = motif_census(DiffLabeling((0, 1, 2)))
    assert (c.V, c.Q, c.T) == (1, 0, 0)
    x, y = 3, 5
    butterfly = motif_census(DiffLabeling((0, x, -x, y, -y)))
    assert butterfly.V == 2 and butterfly.Q >= 1
    # C(X, Y) = C(-X, -Y)
    assert ((1, 3), (2, 4)) in [pq for pq, _ in butterfly.q_types]
    chain = pattern_of(DiffLabeling((0, 1, 2, 3)))
    assert chain.edge(0, 2) == chain.edge(1, 3)
    assert classify_q(chain, (0, 1), (2, 3)) == 3


def test_q_types_are_five_distinct_patterns():
    from cograph.difference import q_type_table

    assert sorted(q_type_table().values()) == [1, 2, 3, 4, 5]
    with pytest.raises(CographError):
        classify_q(pattern_of(DiffLabeling((0, 1, 2, 3))), (0, 1), (1, 2))


def test_torsion_forcer_examples():
    ring = Cograph.from_labels(4, {(0, 1): 0, (1, 2): 0, (2, 3): 0, (0, 3): 0, (0, 2): 1, (1, 3): 2})
    assert any(f.kind == "monochrome-cycle" for f in detect_diff_torsion_forcers(ring))
    filled = pattern_of(DiffLabeling((0, 1, 3, 4), 6))
    assert any(f.kind == "filled-quadrangle" for f in detect_diff_torsion_forcers(filled))
    assert detect_diff_torsion_forcers(pattern_of(DiffLabeling((0, 1, 2, 3)))) == []


def test_small_catalogues():
    assert len(enumerate_difference_cographs(2)) == 1
    three = enumerate_difference_cographs(3)
    assert len(three) == 3
    # all three 3-point types occur, the equilateral one only with torsion
    assert [e.torsion_free for e in three].count(False) == 1


def test_five_point_catalogue(five_point):
    assert len(five_point) == 62
    keys = {canonical_form(e.cograph) for e in five_point}
    assert len(keys) == 62
    for e in five_point:
        assert pattern_of(e.witness) == e.cograph
        assert e.torsion_free == (e.witness.modulus == 0)


def test_every_q_gets_a_type(five_point):
    total = 0
    for e in five_point:
        for _, t in e.census.q_types:
            assert t in range(1, 6)
            total += 1
    assert total > 0


def test_torsion_forcers_only_on_torsion_entries(five_point):
    for e in five_point:
        if e.torsion_free:
            assert detect_diff_torsion_forcers(e.cograph) == []


def chains(lab):
    """Maximal paths of distinct points joined by equal edges, with at least three points."""
    n = lab.n
    out = []
    for k in (3, 4, 5):
        for path in permutations(range(n), k):
            es = {lab.edge(path[i], path[i + 1]) for i in range(k - 1)}
            if len(es) == 1:
                out.append(path)
    return out


def test_chain_lemma_on_integer_witnesses(five_point):
    seen = 0
    for e in five_point:
        w = e.witness
        if w.modulus:
            continue
        for path in chains(w):
            vals = [w.values[p] for p in path]
            step = vals[1] - vals[0]
            assert vals == [vals[0] + i * step for i in range(len(vals))]
            seen += 1
    assert seen >= 100


@given(labelings(max_points=6))
@settings(max_examples=150, deadline=None)
def test_shift_preserves_pattern(lab):
    for k in (1, 5, -3, 17):
        assert pattern_of(lab.shift(k)) == pattern_of(lab)


@given(labelings(max_points=6).filter(lambda l: l.modulus == 0))
@settings(max_examples=150, deadline=None)
def test_midpoint_lemma(lab):
    v = lab.values
    for a, b, c in permutations(range(lab.n), 3):
        if lab.edge(a, b) == lab.edge(b, c):
            assert v[a] + v[c] == 2 * v[b]


@given(labelings(min_points=4, max_points=6).filter(lambda l: l.modulus == 0))
@settings(max_examples=150, deadline=None)
def test_four_chain_rule(lab):
    v = lab.values
    for a, b, c, d in permutations(range(lab.n), 4):
        if lab.edge(a, b) == lab.edge(b, c) == lab.edge(c, d):
            assert v[a] + v[d] == v[b] + v[c]


@given(labelings(min_points=5, max_points=6))
@settings(max_examples=150, deadline=None)
def test_butterfly(lab):
    # two V's at one point produce a Q
    n = lab.n
    for o in range(n):
        others = [p for p in range(n) if p != o]
        vs = [(x, y) for x, y in combinations(others, 2) if lab.edge(o, x) == lab.edge(o, y)]
        for (x1, y1), (x2, y2) in combinations(vs, 2):
            if lab.edge(o, x1) != lab.edge(o, x2) and len({x1, y1, x2, y2}) == 4:
                assert motif_census(lab).Q >= 1


@given(labelings(min_points=4, max_points=6))
@settings(max_examples=150, deadline=None)
def test_every_q_classifies(lab):
    census = motif_census(lab)
    assert all(1 <= t <= 5 for _, t in census.q_types)
    assert len(census.q_types) == census.Q


@given(labelings(min_points=5, max_points=6))
@settings(max_examples=150, deadline=None)
def test_second_q_when_fifth_point_repeats_an_edge(lab):
    census = motif_census(lab)
    n = lab.n
    for (p, q), _ in census.q_types:
        quad = set(p) | set(q)
        rep = lab.edge(*p)
        for x in set(range(n)) - quad:
            if any(lab.edge(x, y) == rep for y in quad):
                assert census.Q >= 2
