"""Concrete realizations of abstract cographs and point recovery from edge labels.

* inner products: vectors in Q^(n-1) whose dot products are prescribed values;
* polynomials: a symmetric integer polynomial f with f(i, j) carrying the classes;
* recovering integer (or residue) points from prescribed sums, and points on a
  line from prescribed distances.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations, permutations
from math import lcm
from typing import Mapping, Sequence

from .core import Cograph, CographError, Pair, all_pairs, pair


def _class_values(c: Cograph, edge_values: Sequence | None, positive: bool = False) -> list:
    if edge_values is None:
        return list(range(1, c.num_classes + 1))
    vals = list(edge_values)
    if len(vals) != c.num_classes:
        raise CographError(f"need {c.num_classes} edge values, got {len(vals)}")
    if len(set(vals)) != len(vals):
        raise CographError("edge values must be distinct")
    if positive and any(v <= 0 for v in vals):
        raise CographError("edge values must be positive")
    return vals


# -- inner products ------------------------------------------------------


@dataclass
class VectorRealization:
    vectors: list[tuple[Fraction, ...]]
    values: list[Fraction]  # per class
    rounds: int  # diagonal doublings used to separate the last point
    extra_coordinate: bool

    @property
    def dimension(self) -> int:
        return len(self.vectors[0])


def _dot(u, v) -> Fraction:
    return sum((a * b for a, b in zip(u, v)), Fraction(0))


def _triangular(n: int, val, diag: list[Fraction]) -> list[list[Fraction]]:
    dim = n - 1
    pts = [[Fraction(0)] * dim for _ in range(n)]
    for i in range(n):
        for k in range(min(i, dim)):
            # coordinate k of point i makes the dot with point k come out right
            acc = val(i, k) - sum((pts[i][j] * pts[k][j] for j in range(k)), Fraction(0))
            pts[i][k] = acc / diag[k]
        if i < dim:
            pts[i][i] = diag[i]
    return pts


def inner_product_represent(c: Cograph, edge_values: Sequence | None = None, max_rounds: int = 8) -> VectorRealization:
    vals = [Fraction(v) for v in _class_values(c, edge_values)]
    n = c.n

    def val(i, k):
        return vals[c.edge(i, k)]

    diag = [Fraction(1)] * (n - 1)
    pts = _triangular(n, val, diag)
    rounds = 0
    extra = False
    while True:
        clash = next((i for i in range(n - 1) if pts[i] == pts[n - 1]), None)
        if clash is None:
            break
        if rounds == max_rounds:
            pts = [p + [Fraction(int(i == n - 1))] for i, p in enumerate(pts)]
            extra = True
            break
        diag[clash] *= 2
        rounds += 1
        pts = _triangular(n, val, diag)
    vectors = [tuple(p) for p in pts]
    for i, j in all_pairs(n):
        if _dot(vectors[i], vectors[j]) != val(i, j):
            raise AssertionError(f"dot product of points {i},{j} is wrong")
    if len(set(vectors)) != n:
        raise AssertionError("point vectors are not distinct")
    return VectorRealization(vectors, vals, rounds, extra)


# -- polynomials ---------------------------------------------------------


class BivariatePolynomial:
    """Polynomial in x, y with exact coefficients, stored as {(i, j): coeff} for x^i y^j."""

    def __init__(self, coeffs: Mapping[tuple[int, int], object] | None = None):
        self.coeffs = {k: v for k, v in (coeffs or {}).items() if v}

    @classmethod
    def constant(cls, c) -> "BivariatePolynomial":
        return cls({(0, 0): c})

    def __add__(self, other: "BivariatePolynomial") -> "BivariatePolynomial":
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return BivariatePolynomial(out)

    def __mul__(self, other):
        if not isinstance(other, BivariatePolynomial):
            return BivariatePolynomial({k: v * other for k, v in self.coeffs.items()})
        out: dict[tuple[int, int], object] = {}
        for (a, b), u in self.coeffs.items():
            for (c, d), v in other.coeffs.items():
                k = (a + c, b + d)
                out[k] = out.get(k, 0) + u * v
        return BivariatePolynomial(out)

    __rmul__ = __mul__

    def __call__(self, x, y):
        return sum((v * x ** a * y ** b for (a, b), v in self.coeffs.items()), 0)

    def swapped(self) -> "BivariatePolynomial":
        return BivariatePolynomial({(b, a): v for (a, b), v in self.coeffs.items()})

    def is_symmetric(self) -> bool:
        return self.coeffs == self.swapped().coeffs

    @property
    def degree(self) -> int:
        return max((a + b for a, b in self.coeffs), default=0)

    def __eq__(self, other) -> bool:
        return isinstance(other, BivariatePolynomial) and self.coeffs == other.coeffs

    def __repr__(self) -> str:
        terms = sorted(self.coeffs.items(), key=lambda kv: (-(kv[0][0] + kv[0][1]), kv[0]))
        return " + ".join(f"{v}*x^{a}*y^{b}" for (a, b), v in terms) or "0"


def _point_factor(s: int, t: int) -> BivariatePolynomial:
    """[(x-s)^2 + (y-t)^2] * [(x-t)^2 + (y-s)^2], vanishing only at (s,t) and (t,s) over the integers."""
    def sq(shift, var):
        # (var - shift)^2 with var 0 for x, 1 for y
        if var == 0:
            return BivariatePolynomial({(2, 0): 1, (1, 0): -2 * shift, (0, 0): shift * shift})
        return BivariatePolynomial({(0, 2): 1, (0, 1): -2 * shift, (0, 0): shift * shift})

    return (sq(s, 0) + sq(t, 1)) * (sq(t, 0) + sq(s, 1))


@dataclass
class PolynomialRealization:
    poly: BivariatePolynomial  # integer coefficients
    scale: int  # clearing constant k
    values: list[int]  # per class, before scaling


def basis_polynomial(n: int, i: int, j: int) -> BivariatePolynomial:
    f = BivariatePolynomial.constant(1)
    for s, t in combinations(range(1, n + 1), 2):
        if {s, t} != {i, j}:
            f = f * _point_factor(s, t)
    return f


def polynomial_represent(c: Cograph, edge_values: Sequence[int] | None = None) -> PolynomialRealization:
    """Points are 1..n; f(i, j) = k * value of the class of {i-1, j-1}."""
    vals = [int(v) for v in _class_values(c, edge_values, positive=True)]
    n = c.n
    total = BivariatePolynomial()
    for i, j in combinations(range(1, n + 1), 2):
        fij = basis_polynomial(n, i, j)
        coeff = Fraction(vals[c.edge(i - 1, j - 1)], fij(i, j))
        total = total + fij * coeff
    k = 1
    for v in total.coeffs.values():
        k = lcm(k, Fraction(v).denominator)
    poly = BivariatePolynomial({m: int(Fraction(v) * k) for m, v in total.coeffs.items()})
    if not poly.is_symmetric():
        raise AssertionError("interpolating polynomial is not symmetric")
    for i, j in combinations(range(1, n + 1), 2):
        want = k * vals[c.edge(i - 1, j - 1)]
        if poly(i, j) != want or poly(j, i) != want:
            raise AssertionError(f"f({i},{j}) does not match its class value")
    return PolynomialRealization(poly, k, vals)


# -- prelabeled edges: sums ----------------------------------------------


class PrelabelError(CographError):
    def __init__(self, condition: str, witness: tuple, message: str):
        super().__init__(f"condition ({condition}) fails at {witness}: {message}")
        self.condition = condition
        self.witness = witness


def _infer_n(edges: Mapping[Pair, object]) -> tuple[int, dict[Pair, object]]:
    e = {pair(*p): v for p, v in edges.items()}
    n = 1 + max(max(p) for p in e)
    if set(e) != set(all_pairs(n)):
        raise CographError("every pair needs an edge value")
    return n, e


def sum_prelabel_points(edges: Mapping[Pair, int], modulus: int = 0) -> list[int]:
    """Points L with L(P) + L(Q) equal to the prescribed edge values (in Z or Z_m)."""
    n, e = _infer_n(edges)
    m = modulus

    def red(x):
        return x % m if m else x

    e = {p: red(v) for p, v in e.items()}
    for p in range(n):
        seen: dict = {}
        for q in range(n):
            if q != p:
                v = e[pair(p, q)]
                if v in seen:
                    raise PrelabelError("a", (seen[v], p, q), "two equal edges meet at a point")
                seen[v] = q
    for a, b, c in combinations(range(n), 3):
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            s = e[pair(x, y)] + e[pair(x, z)] - e[pair(y, z)]
            if (m == 0 or m % 2 == 0) and s % 2:
                raise PrelabelError("b", (x, y, z), "a + b - c is not divisible by 2")
    for quad in combinations(range(n), 4):
        for rest in permutations(quad[1:]):
            P, Q, R, S = (quad[0],) + rest
            if red(e[pair(P, Q)] + e[pair(R, S)]) != red(e[pair(Q, R)] + e[pair(S, P)]):
                raise PrelabelError("c", (P, Q, R, S), "opposite sides have different sums")
    if n == 2:
        v = e[(0, 1)]
        candidates = [[0, v]] if red(v) != 0 else [[1, red(-1)]]
    else:
        twice = e[(0, 1)] + e[(0, 2)] - e[(1, 2)]
        if m == 0:
            halves = [twice // 2]
        elif m % 2:
            halves = [red(twice * pow(2, -1, m))]
        else:
            halves = [red(twice // 2), red(twice // 2 + m // 2)]
        candidates = [[h] + [red(e[(0, x)] - h) for x in range(1, n)] for h in halves]
    for labels in candidates:
        if len(set(labels)) == n and all(red(labels[p] + labels[q]) == e[(p, q)] for p, q in all_pairs(n)):
            return labels
    raise PrelabelError("c", tuple(range(n)), "no labeling reproduces the edges")


# -- prelabeled edges: distances -----------------------------------------


@dataclass(frozen=True)
class LineRealization:
    labels: tuple | None
    violation: str | None = None

    @property
    def realizable(self) -> bool:
        return self.labels is not None


def distance_prelabel_points(edges: Mapping[Pair, object]) -> LineRealization:
    """Points on a line whose pairwise distances are the prescribed values."""
    n, e = _infer_n(edges)
    if any(v <= 0 for v in e.values()):
        raise CographError("distances must be positive")
    for a, b, c in combinations(range(n), 3):
        x, y, z = sorted((e[(a, b)], e[(b, c)], e[(a, c)]))
        if x + y != z:
            return LineRealization(None, f"triangle {a},{b},{c}: no side is the sum of the other two")
    p, q = max(all_pairs(n), key=lambda pq: e[pq])
    labels = tuple(0 if x == p else e[pair(p, x)] for x in range(n))
    for a, b in all_pairs(n):
        if abs(labels[a] - labels[b]) != e[(a, b)]:
            return LineRealization(None, f"pair {a},{b}: recovered distance differs")
    return LineRealization(labels)
