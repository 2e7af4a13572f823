"""Exact integer linear algebra: Hermite and Smith normal forms.

Matrices are lists of rows of Python ints.  Everything is exact; the Smith
decomposition comes with unimodular transforms so callers can check
``U * A * V == D`` themselves.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import Sequence

Matrix = list[list[int]]


def identity(n: int) -> Matrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if not a:
        return []
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(cols)] for i in range(len(a))]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0


def hermite_rows(rows: Sequence[Sequence[int]], ncols: int | None = None) -> Matrix:
    """Row-echelon basis of the lattice spanned by ``rows``.

    Pivots move right row by row, pivot entries are positive and entries above
    each pivot are reduced into ``[0, pivot)``.  Zero rows are dropped.
    """
    a = [list(r) for r in rows]
    if ncols is None:
        ncols = len(a[0]) if a else 0
    out: Matrix = []
    r = 0
    for c in range(ncols):
        nz = [i for i in range(r, len(a)) if a[i][c]]
        if not nz:
            continue
        while True:
            nz = [i for i in range(r, len(a)) if a[i][c]]
            piv = min(nz, key=lambda i: abs(a[i][c]))
            a[r], a[piv] = a[piv], a[r]
            done = True
            for i in range(r + 1, len(a)):
                if a[i][c]:
                    q = a[i][c] // a[r][c]
                    a[i] = [x - q * y for x, y in zip(a[i], a[r])]
                    if a[i][c]:
                        done = False
            if done:
                break
        if a[r][c] < 0:
            a[r] = [-x for x in a[r]]
        for i in range(r):
            q = a[i][c] // a[r][c]
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[r])]
        r += 1
        if r == len(a):
            break
    out = [row for row in a[:r]]
    return out


def pivots(basis: Matrix) -> list[int]:
    return [next(j for j, x in enumerate(row) if x) for row in basis]


def reduce_by_hermite(basis: Matrix, v: Sequence[int]) -> list[int]:
    """Remainder of ``v`` after subtracting lattice vectors; zero iff v is in the lattice."""
    v = list(v)
    for row, p in zip(basis, pivots(basis)):
        q = v[p] // row[p]
        if q:
            v = [x - q * y for x, y in zip(v, row)]
    return v


@dataclass(frozen=True)
class SmithForm:
    D: Matrix
    U: Matrix
    V: Matrix
    invariants: tuple[int, ...]  # nonzero diagonal entries, each dividing the next

    @property
    def rank(self) -> int:
        return len(self.invariants)


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithForm:
    m = len(a)
    n = len(a[0]) if m else 0
    d = [list(r) for r in a]
    u = identity(m)
    v = identity(n)

    def swap_rows(i, j):
        d[i], d[j] = d[j], d[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in d:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(dst, src, q):  # row_dst -= q * row_src
        d[dst] = [x - q * y for x, y in zip(d[dst], d[src])]
        u[dst] = [x - q * y for x, y in zip(u[dst], u[src])]

    def add_col(dst, src, q):
        for row in d:
            row[dst] -= q * row[src]
        for row in v:
            row[dst] -= q * row[src]

    t = 0
    while t < min(m, n):
        entries = [(abs(d[i][j]), i, j) for i in range(t, m) for j in range(t, n) if d[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            changed = False
            for i in range(t + 1, m):
                if d[i][t]:
                    add_row(i, t, d[i][t] // d[t][t])
                    if d[i][t]:
                        swap_rows(t, i)
                        changed = True
            for j in range(t + 1, n):
                if d[t][j]:
                    add_col(j, t, d[t][j] // d[t][t])
                    if d[t][j]:
                        swap_cols(t, j)
                        changed = True
            if changed:
                continue
            # divisibility: pivot must divide the rest of the block
            bad = next(
                ((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if d[i][j] % d[t][t]),
                None,
            )
            if bad is None:
                break
            add_row(t, bad[0], -1)
        if d[t][t] < 0:
            d[t] = [-x for x in d[t]]
            u[t] = [-x for x in u[t]]
        t += 1
    inv = tuple(d[i][i] for i in range(min(m, n)) if d[i][i])
    return SmithForm(d, u, v, inv)


def check_smith(a: Sequence[Sequence[int]], sf: SmithForm) -> bool:
    prod_ = matmul(matmul(sf.U, [list(r) for r in a]), sf.V)
    if prod_ != sf.D:
        return False
    if abs(determinant(sf.U)) != 1 or abs(determinant(sf.V)) != 1:
        return False
    inv = sf.invariants
    return all(inv[i + 1] % inv[i] == 0 for i in range(len(inv) - 1))


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Exact determinant by fraction-free elimination (Bareiss)."""
    m = [list(r) for r in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            sw = next((i for i in range(k + 1, n) if m[i][k]), None)
            if sw is None:
                return 0
            m[k], m[sw] = m[sw], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class RowLattice:
    """The integer span of a set of rows, with exact membership queries."""

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int):
        self.ncols = ncols
        self.rows = [list(r) for r in rows]
        if self.rows:
            self.smith = smith_normal_form(self.rows)
        else:
            self.smith = SmithForm([], [], identity(ncols), ())

    def _coords(self, v: Sequence[int]) -> list[int]:
        # v = y A  <=>  (y U^-1) D = v V
        V = self.smith.V
        return [sum(v[i] * V[i][j] for i in range(self.ncols)) for j in range(self.ncols)]

    def denominator(self, v: Sequence[int]) -> int | None:
        """Least d >= 1 with d*v in the lattice, or None if no multiple of v is."""
        w = self._coords(v)
        inv = self.smith.invariants
        if any(w[j] for j in range(len(inv), self.ncols)):
            return None
        den = 1
        for j, dj in enumerate(inv):
            den = lcm(den, dj // gcd(dj, w[j]))
        return den

    def contains(self, v: Sequence[int]) -> bool:
        return self.denominator(v) == 1


def kernel_basis(a: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis (as rows) of the integer solutions of ``a x = 0``."""
    if not a:
        return identity(ncols)
    sf = smith_normal_form(a)
    r = sf.rank
    return [[sf.V[i][j] for i in range(ncols)] for j in range(r, ncols)]


def congruence_lattice(a: Sequence[Sequence[int]], ncols: int, m: int) -> Matrix:
    """Hermite basis of {x in Z^n : a x = 0 mod m}; full rank, contains m Z^n."""
    if not a:
        gens = identity(ncols)
    else:
        sf = smith_normal_form(a)
        gens = []
        for j in range(ncols):
            col = [sf.V[i][j] for i in range(ncols)]
            if j < sf.rank:
                f = m // gcd(sf.invariants[j], m)
                col = [f * x for x in col]
            gens.append(col)
    gens += [[m * int(i == j) for j in range(ncols)] for i in range(ncols)]
    return hermite_rows(gens, ncols)
