"""Group cographs C(P, Q) = {PQ, QP}: ladders, chains and small test groups."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import product
from typing import Callable, Hashable, Iterable, Sequence

from .core import Cograph, CographError


@dataclass
class FiniteGroup:
    name: str
    elements: list[Hashable]  # display names, index = element id
    table: list[list[int]]
    identity: int = field(init=False)
    inverse: list[int] = field(init=False)

    def __post_init__(self):
        n = len(self.elements)
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise CographError("multiplication table must be square")
        ids = [e for e in range(n) if all(self.table[e][x] == x == self.table[x][e] for x in range(n))]
        if len(ids) != 1:
            raise CographError("group has no unique identity")
        self.identity = ids[0]
        inv = []
        for x in range(n):
            ys = [y for y in range(n) if self.table[x][y] == self.identity]
            if len(ys) != 1 or self.table[ys[0]][x] != self.identity:
                raise CographError(f"element {self.elements[x]} has no two-sided inverse")
            inv.append(ys[0])
        self.inverse = inv
        self.check_associative(samples=200)

    @classmethod
    def from_operation(cls, name: str, elements: Sequence[Hashable], op: Callable) -> "FiniteGroup":
        index = {x: k for k, x in enumerate(elements)}
        table = [[index[op(a, b)] for b in elements] for a in elements]
        return cls(name, list(elements), table)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, *xs: int) -> int:
        out = self.identity
        for x in xs:
            out = self.table[out][x]
        return out

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverse[x], -k
        out = self.identity
        for _ in range(k):
            out = self.table[out][x]
        return out

    def element_order(self, x: int) -> int:
        k, y = 1, x
        while y != self.identity:
            y = self.table[y][x]
            k += 1
        return k

    def commute(self, x: int, y: int) -> bool:
        return self.table[x][y] == self.table[y][x]

    def is_abelian(self) -> bool:
        return all(self.commute(x, y) for x in range(self.order) for y in range(x))

    def index(self, name: Hashable) -> int:
        return self.elements.index(name)

    def check_associative(self, samples: int | None = None, seed: int = 0) -> None:
        """Spot-check on random triples; samples=None checks every triple."""
        n = self.order
        if samples is None:
            triples: Iterable = product(range(n), repeat=3)
        else:
            rng = random.Random(seed)
            triples = ((rng.randrange(n), rng.randrange(n), rng.randrange(n)) for _ in range(samples))
        t = self.table
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise CographError(f"not associative at {self.elements[a]},{self.elements[b]},{self.elements[c]}")


def cyclic(n: int) -> FiniteGroup:
    return FiniteGroup.from_operation(f"Z{n}", list(range(n)), lambda a, b: (a + b) % n)


def dihedral(n: int) -> FiniteGroup:
    """Symmetries of an n-gon, order 2n; (k, f) is rotation by k then reflection if f."""
    elems = [(k, f) for f in (0, 1) for k in range(n)]

    def op(x, y):
        (a, f), (b, g) = x, y
        return ((a + (-b if f else b)) % n, f ^ g)

    return FiniteGroup.from_operation(f"D{n}", elems, op)


_QUAT = {
    ("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
    ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
    ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
    ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1"),
}


def quaternion() -> FiniteGroup:
    names = [s + u for s in ("", "-") for u in "1ijk"]

    def op(x, y):
        sx, ux = (-1, x[1]) if x.startswith("-") else (1, x)
        sy, uy = (-1, y[1]) if y.startswith("-") else (1, y)
        s, u = _QUAT[(ux, uy)]
        return ("" if s * sx * sy == 1 else "-") + u

    return FiniteGroup.from_operation("Q8", names, op)


def symmetric(n: int) -> FiniteGroup:
    from itertools import permutations

    perms = sorted(permutations(range(n)))
    return FiniteGroup.from_operation(f"S{n}", perms, lambda a, b: tuple(a[b[i]] for i in range(n)))


def direct_product(g: FiniteGroup, h: FiniteGroup) -> FiniteGroup:
    elems = [(a, b) for a in range(g.order) for b in range(h.order)]
    table = [[(g.table[a][c]) * h.order + h.table[b][d] for (c, d) in elems] for (a, b) in elems]
    names = [(g.elements[a], h.elements[b]) for a, b in elems]
    return FiniteGroup(f"{g.name}x{h.name}", names, table)


def small_groups() -> list[FiniteGroup]:
    """Built-in groups of order at most 16 used for chain scans."""
    out = [cyclic(n) for n in range(2, 17)]
    out += [dihedral(n) for n in range(3, 9)]
    out += [quaternion(), symmetric(3)]
    z2, z4 = cyclic(2), cyclic(4)
    out += [
        direct_product(z2, z2),
        direct_product(z2, z4),
        direct_product(direct_product(z2, z2), z2),
        direct_product(z2, cyclic(6)),
        direct_product(z4, z4),
        direct_product(z2, cyclic(8)),
        direct_product(z2, dihedral(4)),
        direct_product(z2, quaternion()),
        direct_product(z2, dihedral(3)),
    ]
    return out


GROUPS: dict[str, Callable[[], FiniteGroup]] = {
    "Q8": quaternion,
    "S3": lambda: symmetric(3),
    "S4": lambda: symmetric(4),
}


def group_by_name(name: str) -> FiniteGroup:
    """Z<n>, D<n>, Q8, S3, S4, or products joined by 'x' (e.g. Z2xQ8)."""
    parts = name.split("x")
    gs = []
    for part in parts:
        if part in GROUPS:
            gs.append(GROUPS[part]())
        elif part[:1] in ("Z", "D") and part[1:].isdigit():
            k = int(part[1:])
            gs.append(cyclic(k) if part[0] == "Z" else dihedral(k))
        else:
            raise CographError(f"unknown group {part!r}")
    g = gs[0]
    for h in gs[1:]:
        g = direct_product(g, h)
    return g


# -- group cographs -------------------------------------------------------


@dataclass
class GroupCograph:
    group: FiniteGroup
    cograph: Cograph

    def key(self, x: int, y: int) -> frozenset[int]:
        g = self.group
        return frozenset({g.table[x][y], g.table[y][x]})


def group_cograph(g: FiniteGroup) -> GroupCograph:
    if g.order < 2:
        raise CographError("group cograph needs at least two elements")

    def key(x, y):
        return frozenset({g.table[x][y], g.table[y][x]})

    return GroupCograph(g, Cograph.from_function(g.order, key))


def edge_key(g: FiniteGroup, x: int, y: int) -> frozenset[int]:
    return frozenset({g.table[x][y], g.table[y][x]})


# -- ladders --------------------------------------------------------------


@dataclass
class Ladder:
    X: int
    rungs: dict[int, tuple[int, int]]  # n -> (P_n, Q_n)


def ladder(g: FiniteGroup, P: int, Q: int, X: int, span: Iterable[int] = range(-3, 4)) -> Ladder:
    """Rungs P_n = P X^n, Q_n = X^-n Q, all carrying the edge of (P, Q)."""
    QP = g.mul(Q, P)
    if not g.commute(X, QP):
        raise CographError("X must commute with QP")
    span = list(span)
    rungs = {k: (g.mul(P, g.power(X, k)), g.mul(g.power(X, -k), Q)) for k in span}
    base = edge_key(g, P, Q)
    for k, (pk, qk) in rungs.items():
        if edge_key(g, pk, qk) != base:
            raise AssertionError(f"rung {k} changes the edge")
    for n in span:
        for m in span:
            if m - n in rungs:
                if edge_key(g, rungs[n][0], rungs[m][1]) != edge_key(g, P, rungs[m - n][1]):
                    raise AssertionError(f"diagonal rule fails at ({n},{m})")
    return Ladder(X, rungs)


def commutator(g: FiniteGroup, P: int, Q: int) -> int:
    inv = g.inverse
    return g.mul(inv[P], inv[Q], P, Q)


# -- chains ---------------------------------------------------------------


def chain_conditions(g: FiniteGroup, P: int, Q: int) -> list[int]:
    """Numbers of the failed conditions: 1 PQ != QP, 2 PQ^2 = Q^2 P, 3 P^2 Q = Q P^2."""
    failed = []
    if g.commute(P, Q):
        failed.append(1)
    if not g.commute(P, g.mul(Q, Q)):
        failed.append(2)
    if not g.commute(g.mul(P, P), Q):
        failed.append(3)
    return failed


@dataclass
class Chain:
    P: int
    Q: int
    terms: list[int]
    valid: bool
    failed: list[int]


def chain_extend(g: FiniteGroup, P: int, Q: int, k: int = 8) -> Chain:
    """Terms P_0..P_k obtained by conjugating P and Q with powers of A = PQ."""
    failed = chain_conditions(g, P, Q)
    if failed:
        return Chain(P, Q, [P, Q], False, failed)
    A = g.mul(P, Q)
    terms = []
    for i in range(k + 1):
        base = P if i % 2 == 0 else Q
        h = i // 2
        terms.append(g.mul(g.power(A, -h), base, g.power(A, h)))
    P2, Q2 = g.mul(P, P), g.mul(Q, Q)
    base = edge_key(g, P, Q)
    for i, t in enumerate(terms):
        if g.mul(t, t) != (P2 if i % 2 == 0 else Q2):
            raise AssertionError(f"square of term {i} is wrong")
        if i + 1 < len(terms):
            if edge_key(g, t, terms[i + 1]) != base:
                raise AssertionError(f"terms {i},{i + 1} leave the edge class")
            if t == terms[i + 1]:
                raise AssertionError("consecutive terms coincide")
        if i + 2 < len(terms) and t == terms[i + 2]:
            raise AssertionError("terms two apart coincide")
    # a chain cannot fork: the only continuation of (P, Q) is the next term
    nxt = [r for r in range(g.order) if r not in (P, Q) and edge_key(g, Q, r) == base]
    if nxt != [terms[2]]:
        raise AssertionError(f"continuation of ({P},{Q}) is not unique: {nxt}")
    return Chain(P, Q, terms, True, [])


def _alternating(g: FiniteGroup, x: int, y: int, k: int) -> int:
    return g.mul(*[(x, y)[i % 2] for i in range(k)])


def chain_cycle_length(g: FiniteGroup, P: int, Q: int, max_k: int = 64) -> int | None:
    """Least k >= 3 with PQP... = QPQ... (k factors each), or None."""
    if chain_conditions(g, P, Q):
        raise CographError("P, Q do not start a chain")
    for k in range(3, max_k + 1):
        if _alternating(g, P, Q, k) == _alternating(g, Q, P, k):
            return k
    return None


def orbit_cycle_length(g: FiniteGroup, P: int, Q: int, max_k: int = 64) -> int | None:
    """Cycle length found by walking the chain until it repeats (P, Q)."""
    terms = chain_extend(g, P, Q, max_k + 1).terms
    for k in range(1, max_k + 1):
        if terms[k] == P and terms[k + 1] == Q:
            return k
    return None


def chain_pairs(g: FiniteGroup) -> list[tuple[int, int]]:
    return [(P, Q) for P in range(g.order) for Q in range(g.order) if P != Q and not chain_conditions(g, P, Q)]
