from __future__ import annotations

from fractions import Fraction
from math import gcd

from hypothesis import given, settings, strategies as st

from cograph.intlinalg import (
    RowLattice,
    check_smith,
    congruence_lattice,
    determinant,
    hermite_rows,
    kernel_basis,
    matmul,
    reduce_by_hermite,
    smith_normal_form,
)

small = st.integers(-9, 9)


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [draw(st.lists(small, min_size=c, max_size=c)) for _ in range(r)]


@given(matrices())
@settings(max_examples=150, deadline=None)
def test_smith_form_reconstructs(a):
    sf = smith_normal_form(a)
    assert check_smith(a, sf)
    assert matmul(matmul(sf.U, a), sf.V) == sf.D
    inv = sf.invariants
    assert all(x > 0 for x in inv)
    assert all(inv[i + 1] % inv[i] == 0 for i in range(len(inv) - 1))


def test_smith_examples():
    assert smith_normal_form([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]).invariants == (2, 6, 12)
    assert smith_normal_form([[0, 0], [0, 0]]).rank == 0


def test_determinant_matches_fraction_elimination():
    a = [[2, -1, 0], [1, 3, 4], [0, 5, -2]]
    assert determinant(a) == 2 * (3 * -2 - 4 * 5) - (-1) * (1 * -2 - 0)


@given(matrices())
@settings(max_examples=100, deadline=None)
def test_hermite_rows_span_the_same_lattice(a):
    ncols = len(a[0])
    basis = hermite_rows(a, ncols)
    for row in a:
        assert not any(reduce_by_hermite(basis, row))
    again = hermite_rows(basis, ncols)
    assert again == basis


@given(matrices(max_rows=4, max_cols=5))
@settings(max_examples=100, deadline=None)
def test_kernel_vectors_are_annihilated(a):
    ncols = len(a[0])
    for v in kernel_basis(a, ncols):
        assert all(sum(x * y for x, y in zip(row, v)) == 0 for row in a)


@given(matrices(max_rows=3, max_cols=4), st.integers(2, 12))
@settings(max_examples=100, deadline=None)
def test_congruence_lattice_vectors_solve_mod_m(a, m):
    ncols = len(a[0])
    for v in congruence_lattice(a, ncols, m):
        assert all(sum(x * y for x, y in zip(row, v)) % m == 0 for row in a)


@given(matrices(max_rows=4, max_cols=4), st.lists(small, min_size=4, max_size=4))
@settings(max_examples=150, deadline=None)
def test_lattice_denominator_divides_content(a, coeffs):
    ncols = len(a[0])
    lat = RowLattice(a, ncols)
    comb = [sum(c * row[j] for c, row in zip(coeffs, a)) for j in range(ncols)]
    g = gcd(*comb)
    if g:
        # comb = g * v with v primitive, so g * v is in the lattice
        v = [x // g for x in comb]
        den = lat.denominator(v)
        assert den is not None and g % den == 0
        assert lat.contains([x * den for x in v])
    assert lat.contains([0] * ncols)


def test_lattice_outside_span():
    lat = RowLattice([[1, 1, 0]], 3)
    assert lat.denominator([0, 0, 1]) is None
    assert lat.denominator([2, 2, 0]) == 1
    lat2 = RowLattice([[2, 0], [0, 3]], 2)
    assert lat2.denominator([1, 1]) == 6
    assert Fraction(1, lat2.denominator([1, 0])) == Fraction(1, 2)
