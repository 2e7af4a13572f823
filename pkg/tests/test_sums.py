from __future__ import annotations

import random
from itertools import combinations, permutations

import pytest
from hypothesis import given, settings, strategies as st

from cograph.core import Cograph, all_pairs, canonical_form
from cograph.intlinalg import check_smith, smith_normal_form
from cograph.sums import (
    GroupWitness,
    Outcome,
    abelian_groups,
    classify_sum,
    detect_obstructions,
    enumerate_sum_cographs,
    find_integer_witness,
    renormalize,
    shifted_diamond,
    sum_pattern,
    system_rows,
    universal_witness,
    verify_sum_witness,
)
from conftest import CANDIDATE_1, CANDIDATE_2, CANDIDATE_3, CANDIDATE_4, named_pattern


@pytest.fixture(scope="module")
def catalogue():
    return enumerate_sum_cographs(6)


def with_classes(n, extra):
    labels = {p: ("s", p) for p in all_pairs(n)}
    labels.update(extra)
    return Cograph.from_labels(n, labels)


def test_candidate_one_is_torsion_free():
    v = classify_sum(named_pattern(6, CANDIDATE_1))
    assert v.outcome is Outcome.TORSION_FREE
    assert v.witness == GroupWitness((0, 1, 3, 4, 5, 7), (0,))


def test_candidate_two_needs_five_torsion():
    v = classify_sum(named_pattern(6, CANDIDATE_2))
    assert v.outcome is Outcome.REQUIRES_TORSION
    assert "5P=5R" in [r.describe() for r in v.torsion_relations]
    assert v.witness == GroupWitness((0, 1, 3, 4, 7, 9), (15,))
    # integer search fails, so the fallback lands in a group with torsion
    fallback = find_integer_witness(named_pattern(6, CANDIDATE_2), bounds=(8, 16))
    assert any(m != 0 for m in fallback.moduli)


def test_candidate_three_forces_p_equal_t():
    v = classify_sum(named_pattern(6, CANDIDATE_3))
    assert v.outcome is Outcome.UNSOLVABLE
    assert (0, 4) in v.forced_point_equalities
    assert v.witness is None


def test_candidate_four_forces_three_new_edge_pairs():
    v = classify_sum(named_pattern(6, CANDIDATE_4))
    assert v.outcome is Outcome.FORCES_EXTRA_EDGES
    # P+T = S+U, P+U = S+T, Q+U = R+T
    assert set(v.forced_edge_equalities) == {((0, 4), (3, 5)), ((0, 5), (3, 4)), ((1, 5), (2, 4))}


def test_v_at_a_point_is_unsolvable():
    c = with_classes(4, {(0, 1): "a", (0, 2): "a"})
    assert any(f.kind == "V-at-point" for f in detect_obstructions(c))
    assert classify_sum(c).outcome is Outcome.UNSOLVABLE


def test_alternating_pentagon_with_chord():
    # edges 01=a 12=b 23=c 34=a 40=b force 2*P0 = c, so a chord 05 of class c collapses 0 and 5
    c = with_classes(6, {(0, 1): "a", (3, 4): "a", (1, 2): "b", (0, 4): "b", (2, 3): "c", (0, 5): "c"})
    assert any(f.kind == "alternating-pentagon" for f in detect_obstructions(c))
    v = classify_sum(c)
    assert v.outcome is Outcome.UNSOLVABLE and (0, 5) in v.forced_point_equalities


def test_alternating_hexagon_needs_three_torsion():
    c = with_classes(6, {(0, 1): "a", (2, 3): "a", (4, 5): "a", (1, 2): "b", (3, 4): "b", (0, 5): "b"})
    tors = {f.torsion for f in detect_obstructions(c) if f.kind == "alternating-cycle"}
    assert tors == {3}
    assert {r.order for r in classify_sum(c).torsion_relations} == {3}


def test_renormalize_examples():
    w = GroupWitness((0, 1, 3, 4, 5, 7), (0,))
    assert renormalize(w, 0, 0) == w
    r = renormalize(w, 0, 10)
    assert r.values == (10, 11, 13, 14, 15, 17)
    assert sum_pattern(r.values) == sum_pattern(w.values)
    m = GroupWitness((0, 1, 3, 4, 7, 9), (15,))
    for k in range(15):
        assert verify_sum_witness(named_pattern(6, CANDIDATE_2), renormalize(m, 2, k))


@given(st.lists(st.integers(-40, 40), min_size=2, max_size=7, unique=True), st.data())
@settings(max_examples=150, deadline=None)
def test_renormalization_preserves_integer_pattern(values, data):
    w = GroupWitness(tuple(values), (0,))
    point = data.draw(st.integers(0, len(values) - 1))
    target = data.draw(st.integers(-100, 100))
    assert sum_pattern(renormalize(w, point, target).values) == sum_pattern(values)


@given(st.integers(3, 30), st.data())
@settings(max_examples=150, deadline=None)
def test_renormalization_preserves_modular_pattern(m, data):
    k = data.draw(st.integers(2, min(m, 7)))
    values = data.draw(st.lists(st.integers(0, m - 1), min_size=k, max_size=k, unique=True))
    w = GroupWitness(tuple(values), (m,))
    r = renormalize(w, data.draw(st.integers(0, k - 1)), data.draw(st.integers(0, m - 1)))
    assert sum_pattern(r.values, m) == sum_pattern(values, m)


def test_witnesses_satisfy_the_quadrilateral_rule(catalogue):
    # in a 4-cycle P-Q-R-S, C(P,Q) = C(P,S) + C(R,Q) - C(R,S): the other three classes decide it
    for entry in catalogue:
        c = entry.cograph
        decided = {}
        for P, Q, R, S in permutations(range(c.n), 4):
            key = (c.edge(P, S), c.edge(R, Q), c.edge(R, S))
            assert decided.setdefault(key, c.edge(P, Q)) == c.edge(P, Q)


def test_catalogue_witnesses_and_smith_forms(catalogue):
    assert len({canonical_form(e.cograph) for e in catalogue}) == len(catalogue)
    for e in catalogue:
        assert e.verdict.outcome in (Outcome.TORSION_FREE, Outcome.REQUIRES_TORSION)
        assert verify_sum_witness(e.cograph, e.verdict.witness)
        rows = system_rows(e.cograph)
        if rows:
            assert check_smith(rows, smith_normal_form(rows))
        assert verify_sum_witness(e.cograph, universal_witness(e.cograph))


def test_torsion_entries_have_no_small_integer_witness(catalogue):
    # every integer witness shifts to one with least value 0
    small = {canonical_form(sum_pattern((0,) + rest)) for rest in combinations(range(1, 13), 5)}
    torsion = [e for e in catalogue if e.verdict.outcome is Outcome.REQUIRES_TORSION]
    assert torsion
    for e in torsion:
        assert canonical_form(e.cograph) not in small
    free = [e for e in catalogue if e.verdict.outcome is Outcome.TORSION_FREE]
    for e in free:
        assert e.verdict.witness.moduli == (0,)


def test_candidate_one_in_catalogue(catalogue):
    key = canonical_form(named_pattern(6, CANDIDATE_1))
    match = [e for e in catalogue if canonical_form(e.cograph) == key]
    assert len(match) == 1 and match[0].verdict.outcome is Outcome.TORSION_FREE


def test_small_catalogues():
    assert [len(enumerate_sum_cographs(n)) for n in (2, 3, 4)] == [1, 1, 4]


@pytest.mark.parametrize("cand", [CANDIDATE_1, CANDIDATE_2, CANDIDATE_3, CANDIDATE_4])
def test_classification_is_permutation_equivariant(cand):
    rng = random.Random(7)
    c = named_pattern(6, cand)
    base = classify_sum(c, find_witness=False)
    for _ in range(20):
        sigma = list(range(6))
        rng.shuffle(sigma)
        v = classify_sum(c.permute(sigma), find_witness=False)
        assert v.outcome is base.outcome
        mapped = {tuple(sorted((sigma[i], sigma[j]))) for i, j in base.forced_point_equalities}
        assert set(v.forced_point_equalities) == mapped
        assert sorted(r.order for r in v.torsion_relations) == sorted(r.order for r in base.torsion_relations)


@given(st.integers(2, 8), st.integers(1, 40), st.data())
@settings(max_examples=120, deadline=None)
def test_shifted_diamond(n, k, data):
    m = n * k
    delta = k * data.draw(st.integers(1, n - 1 if n > 1 else 1))
    a0 = data.draw(st.integers(0, m - 1))
    A0 = data.draw(st.integers(0, m - 1))
    d = shifted_diamond(n, a0, A0, delta, m)
    assert d["a"] == [(i * delta + a0) % m for i in range(n)]
    assert (n * delta) % m == 0


def test_abelian_group_lists():
    assert abelian_groups(8) == [(8,), (2, 4), (2, 2, 2)]
    assert abelian_groups(12) == [(12,), (2, 6)]


@given(st.lists(st.integers(0, 20), min_size=3, max_size=6, unique=True))
@settings(max_examples=100, deadline=None)
def test_integer_patterns_classify_torsion_free(values):
    c = sum_pattern(values)
    v = classify_sum(c)
    assert v.outcome is Outcome.TORSION_FREE
    assert verify_sum_witness(c, v.witness)
