from __future__ import annotations

from math import gcd

import pytest

from cograph.core import CographError
from cograph.todd_coxeter import (
    CosetCapExceeded,
    ExcludedChainGroup,
    Presentation,
    chain_group_enumeration,
    chain_group_order,
    chain_presentation,
    coset_cap,
    todd_coxeter,
    verify_chain_group_structure,
)

GRID = [(p, q, n) for p in (2, 4, 6, 8) for q in (2, 4, 6, 8) for n in range(2, 9)]


def excluded(p, q, n):
    try:
        chain_group_order(p, q, n)
    except ExcludedChainGroup:
        return True
    return False


def test_worked_examples():
    r = chain_group_enumeration(4, 6, 6)
    assert (r.index, r.subgroup_order, r.order) == (18, 4, 72)
    r = chain_group_enumeration(4, 12, 3)
    assert (r.index, r.order) == (9, 36)


def test_order_formula_examples():
    assert chain_group_order(4, 6, 6).order == 72
    red = chain_group_order(26, 16, 6)
    assert (red.p1, red.q1, red.order) == (2, 4, 24)
    assert chain_group_enumeration(26, 16, 6).order == 24 == chain_group_enumeration(2, 4, 6).order
    assert chain_group_order(4, 12, 3).order == 4 * gcd(12, 6) * 3 // 2 == 36
    with pytest.raises(CographError):
        chain_group_order(3, 4, 2)
    with pytest.raises(ExcludedChainGroup):
        chain_group_order(6, 6, 2)


@pytest.mark.parametrize("p,q,n", [g for g in GRID if not excluded(*g)])
def test_grid_order_and_structure(p, q, n):
    f = chain_group_order(p, q, n)
    r = chain_group_enumeration(p, q, n)
    assert r.order == f.order
    assert chain_group_enumeration(p, q, n, strategy="felsch").order == f.order
    s = verify_chain_group_structure(p, q, n)
    assert s.central and s.dihedral and s.power_relation and not s.commute
    assert s.center_part == f.p1 * gcd(f.q1, 2 * n) // 4
    assert s.quotient_order == 2 * n
    # P^2 is central and lies in <P>, so it fixes every coset of <P>
    t = r.table
    assert all(t.act(c, "PP") == c for c in range(t.index))


@pytest.mark.parametrize("p,q,n", [g for g in GRID if excluded(*g)])
def test_excluded_cases_commute(p, q, n):
    s = verify_chain_group_structure(p, q, n)
    assert s.commute


def test_grid_excludes_only_the_special_case():
    assert sorted(g for g in GRID if excluded(*g)) == [(2, 2, 2), (2, 6, 2), (6, 2, 2), (6, 6, 2)]


def test_relators_and_table_layout():
    pres = chain_presentation(4, 6, 6)
    assert pres.relators == ("PPPP", "QQQQQQ", "PQPQPQPQPQPQ", "PPQppq", "PQQpqq")
    t = todd_coxeter(pres)
    assert t.relators_hold(pres.relators)
    lines = t.format().splitlines()
    assert len(lines) == 19 and lines[0].split() == ["coset", "P", "Q"]
    assert todd_coxeter(pres).rows == t.rows


def test_small_presentations():
    # Z_5 over the trivial subgroup, and S_3 as a Coxeter group
    assert todd_coxeter(Presentation("P", ("PPPPP",)), subgroup=()).index == 5
    s3 = Presentation("PQ", ("PP", "QQ", "PQPQPQ"))
    assert todd_coxeter(s3, subgroup=()).index == 6
    assert todd_coxeter(s3, subgroup=("P",)).index == 3
    with pytest.raises(CographError):
        Presentation("P", ("PX",))
    with pytest.raises(CographError):
        todd_coxeter(s3, strategy="other")
    with pytest.raises(CographError):
        chain_presentation(2, 2, 1)


def test_cap(monkeypatch):
    with pytest.raises(CosetCapExceeded):
        todd_coxeter(chain_presentation(4, 6, 6), subgroup=(), cap=10)
    monkeypatch.setenv("COGRAPH_COSET_CAP", "123")
    assert coset_cap() == 123
