from __future__ import annotations

from itertools import combinations

import pytest
from hypothesis import given, settings, strategies as st

from cograph.core import Cograph, CographError, canonical_form, from_key
from cograph.enumeration import enumerate_cographs
from cograph.pl import (
    AxiomError,
    LinearSpace,
    blocks,
    blocks_complete,
    complete,
    coordinatize,
    enumerate_linear_spaces,
    enumerate_pl,
    fano_plane,
    from_linear_space,
    is_minimal,
    is_pl,
    minimal_spaces,
    pairwise_intersection_check,
    parse_space,
    pl_sum,
    pl_wedge,
    singletons,
    small_blocks_complete,
    to_linear_space,
    unique_incidence,
)
from conftest import cographs

# points 1..6 of the six-point seven-class example, written 0..5
EXAMPLE_BLOCKS = {
    "A": (0, 1, 2), "B": (0, 4, 5), "C": (1, 3, 5), "D": (2, 3, 4), "E": (0, 3), "F": (1, 4), "G": (2, 5),
}


def example():
    labels = {}
    for name, pts in EXAMPLE_BLOCKS.items():
        for pq in combinations(pts, 2):
            labels[pq] = name
    return Cograph.from_labels(6, labels)


def class_names(c):
    out = [None] * c.num_classes
    for name, pts in EXAMPLE_BLOCKS.items():
        out[c.label[(pts[0], pts[1])]] = name
    return out


@pytest.fixture(scope="module")
def small_pl():
    return {n: enumerate_pl(n) for n in range(2, 8)}


def test_rule_one_only():
    # a Q with nothing else equal: rule 1 holds, rule 2 fails
    c = Cograph.from_labels(4, {(0, 1): "a", (2, 3): "a", (0, 2): 1, (0, 3): 2, (1, 2): 3, (1, 3): 4})
    chk = is_pl(c)
    assert not chk and chk.rule == 2 and set(chk.witness) == {0, 1, 2, 3}


def test_rule_two_only():
    c = Cograph.from_labels(3, {(0, 1): "a", (1, 2): "a", (0, 2): "b"})
    chk = is_pl(c)
    assert not chk and chk.rule == 1 and chk.witness[1] == 1


def test_example_is_pl():
    c = example()
    assert is_pl(c)
    bs = sorted(blocks(c), key=lambda b: (-len(b), sorted(b)))
    assert [sorted(b) for b in bs] == [[0, 1, 2], [0, 4, 5], [1, 3, 5], [2, 3, 4], [0, 3], [1, 4], [2, 5]]
    assert pairwise_intersection_check(c)


def test_complete_graph_is_one_block():
    for n in range(2, 7):
        c = complete(n)
        assert is_pl(c) and blocks(c) == [frozenset(range(n))] and pairwise_intersection_check(c)


def test_characterizations_on_all_four_point_cographs():
    keys = enumerate_cographs(4)
    assert len(keys) == 25
    for k in keys:
        c = from_key(k)
        v = bool(is_pl(c))
        assert v == pairwise_intersection_check(c) == blocks_complete(c) == small_blocks_complete(c)


def test_brute_force_counts_match_line_search():
    for n in range(2, 6):
        brute = {k for k in enumerate_cographs(n) if is_pl(from_key(k))}
        assert brute == {canonical_form(c) for c in enumerate_pl(n)}


def test_characterizations_on_catalogue(small_pl):
    for cs in small_pl.values():
        for c in cs:
            assert is_pl(c) and pairwise_intersection_check(c) and blocks_complete(c) and small_blocks_complete(c)


@given(cographs(max_points=6))
@settings(max_examples=200, deadline=None)
def test_characterizations_on_random_cographs(c):
    v = bool(is_pl(c))
    assert v == pairwise_intersection_check(c) == blocks_complete(c) == small_blocks_complete(c)


def test_counts(small_pl):
    assert len(enumerate_linear_spaces(1)) == 1
    assert [len(small_pl[n]) for n in range(2, 8)] == [1, 2, 3, 5, 10, 24]
    with pytest.raises(CographError):
        enumerate_pl(8)


def test_round_trips(small_pl):
    for n, cs in small_pl.items():
        for c in cs:
            s = to_linear_space(c)
            assert from_linear_space(s) == c
            assert to_linear_space(from_linear_space(s)) == s
            assert parse_space(s.serialize()) == s


def test_families():
    assert to_linear_space(complete(5)).lines == (frozenset(range(5)),)
    s = to_linear_space(singletons(5))
    assert all(len(l) == 2 for l in s.lines) and len(s.lines) == 10
    fano = fano_plane()
    assert len(fano.lines) == 7 and all(len(l) == 3 for l in fano.lines)
    c = from_linear_space(fano)
    assert c.num_classes == 7 and is_pl(c)
    assert fano.serialize().startswith("points=7;lines=[{")


def test_axioms():
    with pytest.raises(AxiomError) as err:
        LinearSpace(3, (frozenset({0, 1, 2}), frozenset({0, 1})))
    assert err.value.axiom == 1
    with pytest.raises(AxiomError) as err:
        LinearSpace(2, (frozenset({0, 1}), frozenset({1})))
    assert err.value.axiom == 2
    with pytest.raises(CographError):
        to_linear_space(Cograph.from_labels(3, {(0, 1): 0, (1, 2): 0, (0, 2): 1}))
    with pytest.raises(CographError):
        parse_space("pts=3;lines=[]")


def fmt(cz, names):
    return {p + 1: lab for p, lab in cz.format(names).items()}


def test_coordinatizations_of_example():
    c = example()
    names = class_names(c)
    first = coordinatize(c, 0, 1, O=5)
    assert fmt(first, names) == {3: "(G)", 4: "(E,C)", 5: "(B,F)", 6: "(B,C)"}
    second = coordinatize(c, 0, 1)
    assert second.O == 3
    assert fmt(second, names) == {3: "(D)", 4: "(E,C)", 5: "(B,F)", 6: "(B,C)"}
    third = coordinatize(c, 0, 3, O=1)
    assert fmt(third, names) == {2: "(A,C)", 3: "(A,D)", 5: "(B,D)", 6: "(B,C)"}


def test_coordinatize_refusals():
    with pytest.raises(CographError):
        coordinatize(complete(3), 0, 1)
    with pytest.raises(CographError):
        coordinatize(example(), 0, 1, O=2)
    with pytest.raises(CographError):
        coordinatize(Cograph.from_labels(3, {(0, 1): 0, (1, 2): 0, (0, 2): 1}), 0, 1)


def test_all_anchor_choices_give_injective_labels(small_pl):
    for cs in small_pl.values():
        for c in cs:
            if c.num_classes < 2:
                continue
            for X in range(c.n):
                for Y in range(c.n):
                    if X != Y:
                        cz = coordinatize(c, X, Y)
                        assert len(set(cz.labels.values())) == c.n - 2


def test_lemma_on_third_points(small_pl):
    # for any pair there is a third point making a triangle of distinct classes
    for cs in small_pl.values():
        for c in cs:
            if c.num_classes < 2:
                continue
            assert c.num_classes >= 3
            for p, q in combinations(range(c.n), 2):
                assert any(
                    len({c.edge(p, q), c.edge(p, r), c.edge(q, r)}) == 3 for r in range(c.n) if r not in (p, q)
                )
            assert unique_incidence(c)


def test_sum_and_wedge_examples():
    k3 = complete(3)
    prism = pl_sum(k3, k3)
    assert (prism.n, prism.num_classes) == (6, 11) and is_pl(prism)
    butterfly = pl_wedge(k3, k3)
    assert (butterfly.n, butterfly.num_classes) == (5, 6) and is_pl(butterfly)
    s2 = singletons(2)
    both = pl_sum(s2, s2)
    assert (both.n, both.num_classes) == (4, 1 + 1 + 4) and is_pl(both)
    with pytest.raises(CographError):
        pl_wedge(example(), k3)


@given(st.integers(2, 4), st.integers(2, 4), st.booleans(), st.booleans())
@settings(max_examples=100, deadline=None)
def test_compositions_stay_pl(n, m, kc, kd):
    c = complete(n) if kc else singletons(n)
    d = complete(m) if kd else singletons(m)
    s = pl_sum(c, d)
    w = pl_wedge(c, d)
    assert is_pl(s) and is_pl(w)
    assert s.num_classes == c.num_classes + d.num_classes + n * m
    assert w.n == n + m - 1
    assert w.num_classes == c.num_classes + d.num_classes + (n - 1) * (m - 1)


def test_minimal_counts():
    assert [len(minimal_spaces(n)) for n in range(1, 8)] == [0, 0, 1, 0, 1, 3, 8]
    assert [len(minimal_spaces(n, reading="nontrivial")) for n in range(1, 8)] == [0, 0, 1, 1, 2, 5, 14]
    assert is_minimal(fano_plane())
    with pytest.raises(CographError):
        is_minimal(fano_plane(), reading="other")


def test_linear_space_enumeration_small():
    assert [len(enumerate_linear_spaces(n)) for n in (1, 2, 3)] == [1, 1, 2]
