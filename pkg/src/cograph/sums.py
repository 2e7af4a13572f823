"""Sum cographs: points are elements of an abelian group, edges are P + Q.

A pattern (a cograph) imposes one integer equation P + Q = R + S per extra
pair in each class.  Whether the pattern is realizable, and in which groups,
is read off the integer row lattice L spanned by those equations:

* a point difference e_P - e_Q in L forces P = Q in every group;
* a cross-class difference in L forces two classes to merge;
* a required vector in the rational span of L but not in L itself can be
  nonzero only in a group with torsion;
* otherwise generic integers realize the pattern.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from itertools import combinations, permutations
from math import gcd, prod
from typing import Iterable, Sequence

from .core import Cograph, CographError, Pair, all_pairs, canonical_form, from_key, pair, serialize
from .intlinalg import (
    RowLattice,
    congruence_lattice,
    hermite_rows,
    kernel_basis,
    lcm,
    pivots,
    reduce_by_hermite,
    smith_normal_form,
)


class Outcome(str, enum.Enum):
    TORSION_FREE = "TorsionFree"
    REQUIRES_TORSION = "RequiresTorsion"
    UNSOLVABLE = "Unsolvable"
    FORCES_EXTRA_EDGES = "ForcesExtraEdges"


@dataclass(frozen=True)
class GroupWitness:
    """Point values in Z_{m1} + ... + Z_{mk}; a modulus of 0 stands for Z.

    With a single factor the values are plain ints, otherwise tuples.
    """

    values: tuple
    moduli: tuple[int, ...]

    @property
    def group_name(self) -> str:
        return "x".join("Z" if m == 0 else f"Z{m}" for m in self.moduli)

    def components(self) -> list[tuple[int, ...]]:
        if len(self.moduli) == 1:
            return [(v,) for v in self.values]
        return [tuple(v) for v in self.values]

    def add(self, x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((a + b) % m if m else a + b for a, b, m in zip(x, y, self.moduli))

    def to_json(self) -> dict:
        return {"moduli": list(self.moduli), "values": [list(v) if isinstance(v, tuple) else v for v in self.values]}

    def format_values(self) -> str:
        if len(self.moduli) == 1:
            return ",".join(str(v) for v in self.values)
        return ",".join("(" + ",".join(map(str, v)) + ")" for v in self.values)


def _pack(comps: Sequence[tuple[int, ...]], moduli: tuple[int, ...]) -> GroupWitness:
    if len(moduli) == 1:
        return GroupWitness(tuple(c[0] for c in comps), moduli)
    return GroupWitness(tuple(tuple(c) for c in comps), moduli)


def verify_sum_witness(pattern: Cograph, w: GroupWitness) -> bool:
    """Distinct points, and equal sums exactly on equal classes."""
    comps = w.components()
    if len(comps) != pattern.n or len(set(comps)) != pattern.n:
        return False
    sums: dict[tuple, int] = {}
    for p in all_pairs(pattern.n):
        s = w.add(comps[p[0]], comps[p[1]])
        c = pattern.label[p]
        if sums.setdefault(s, c) != c:
            return False
    return len(sums) == pattern.num_classes


def sum_pattern(values: Sequence, modulus: int = 0) -> Cograph:
    """Cograph of pairwise sums of integers, or residues when ``modulus`` > 0."""
    if len(set(values)) != len(values):
        raise CographError("point values must be distinct")
    if modulus:
        return Cograph.from_function(len(values), lambda i, j: (values[i] + values[j]) % modulus)
    return Cograph.from_function(len(values), lambda i, j: values[i] + values[j])


@dataclass(frozen=True)
class TorsionRelation:
    order: int  # least d > 1 with d * vector in the lattice
    vector: tuple[int, ...]
    items: tuple  # (P, Q) for a point relation, ((P,Q),(R,S)) for an edge relation

    def describe(self, names: str = "PQRSTUVWXYZ") -> str:
        def term(pq):
            return "+".join(names[i] for i in pq)

        if isinstance(self.items[0], int):
            a, b = self.items
            return f"{self.order}{names[a]}={self.order}{names[b]}"
        p, q = self.items
        return f"{self.order}({term(p)})={self.order}({term(q)})"


@dataclass
class SumVerdict:
    outcome: Outcome
    forced_point_equalities: list[Pair] = field(default_factory=list)
    forced_edge_equalities: list[tuple[Pair, Pair]] = field(default_factory=list)
    torsion_relations: list[TorsionRelation] = field(default_factory=list)
    witness: GroupWitness | None = None

    def to_json(self) -> dict:
        return {
            "outcome": self.outcome.value,
            "forced_point_equalities": [list(p) for p in self.forced_point_equalities],
            "forced_edge_equalities": [[list(p), list(q)] for p, q in self.forced_edge_equalities],
            "torsion_relations": [
                {"order": r.order, "vector": list(r.vector)} for r in self.torsion_relations
            ],
            "witness": self.witness.to_json() if self.witness else None,
        }


def _point_vec(n: int, i: int, j: int) -> list[int]:
    v = [0] * n
    v[i] += 1
    v[j] -= 1
    return v


def _edge_vec(n: int, p: Pair, q: Pair) -> list[int]:
    v = [0] * n
    v[p[0]] += 1
    v[p[1]] += 1
    v[q[0]] -= 1
    v[q[1]] -= 1
    return v


def system_rows(pattern: Cograph) -> list[list[int]]:
    """One row e_P+e_Q-e_R-e_S per non-representative pair of each class."""
    rows = []
    for cls in pattern.classes:
        rep = cls[0]  # classes are sorted, so this is the least pair
        rows.extend(_edge_vec(pattern.n, rep, p) for p in cls[1:])
    return rows


@dataclass(frozen=True)
class IntegerSystem:
    rows: list[list[int]]
    ncols: int

    @classmethod
    def of(cls, pattern: Cograph) -> "IntegerSystem":
        return cls(system_rows(pattern), pattern.n)

    def smith(self):
        return smith_normal_form(self.rows) if self.rows else None


def _required_vectors(pattern: Cograph):
    n = pattern.n
    for i, j in combinations(range(n), 2):
        yield (i, j), _point_vec(n, i, j)
    cls = pattern.classes
    for a in range(len(cls)):
        for b in range(a + 1, len(cls)):
            for p in cls[a]:
                for q in cls[b]:
                    if set(p) & set(q):
                        continue  # reduces to a point difference
                    yield (p, q), _edge_vec(n, p, q)


def classify_sum(pattern: Cograph, find_witness: bool = True) -> SumVerdict:
    n = pattern.n
    lattice = RowLattice(system_rows(pattern), n)
    points, edges, torsion = [], [], []
    for items, v in _required_vectors(pattern):
        d = lattice.denominator(v)
        if d is None:
            continue
        if d == 1:
            (points if isinstance(items[0], int) else edges).append(items)
        else:
            torsion.append(TorsionRelation(d, tuple(v), items))
    if points:
        return SumVerdict(Outcome.UNSOLVABLE, points, edges, torsion)
    if edges:
        return SumVerdict(Outcome.FORCES_EXTRA_EDGES, [], edges, torsion)
    if torsion:
        w = find_torsion_witness(pattern, torsion) if find_witness else None
        return SumVerdict(Outcome.REQUIRES_TORSION, [], [], torsion, w)
    w = find_integer_witness(pattern) if find_witness else None
    return SumVerdict(Outcome.TORSION_FREE, witness=w)


# -- witness search -------------------------------------------------------


def _factor_basis(rows: list[list[int]], n: int, m: int) -> list[list[int]]:
    if m == 0:
        return hermite_rows(kernel_basis(rows, n), n)
    return congruence_lattice(rows, n, m)


def _search(pattern: Cograph, moduli: tuple[int, ...], bound: int) -> GroupWitness | None:
    """Lexicographically least labeling in the given group.

    Each factor's solution lattice has an echelon basis; walking the points in
    order, a pivot coordinate is free (within its residue class) and every
    other coordinate is already determined by earlier choices.
    """
    n = pattern.n
    rows = system_rows(pattern)
    bases = [_factor_basis(rows, n, m) for m in moduli]
    piv = [dict(zip(pivots(b), b)) for b in bases]
    lab = pattern.label

    def choices(f: int, c: int, acc: list[int]):
        m = moduli[f]
        row = piv[f].get(c)
        base = acc[c] % m if m else acc[c]
        if row is None:
            return [(base, None)]
        step = row[c]
        if m:
            return [(r, (r - acc[c]) // step) for r in range(base % step, m, step)]
        return [(v, (v - acc[c]) // step) for v in range(acc[c] % step, bound + 1, step)]

    def rec(c: int, accs: list[list[int]], comps: list[tuple], sums: dict, class_sum: dict):
        if c == n:
            return list(comps)
        options = [choices(f, c, accs[f]) for f in range(len(moduli))]
        for combo in _product(options):
            value = tuple(v for v, _ in combo)
            if value in comps:
                continue
            s2, cs2 = dict(sums), dict(class_sum)
            ok = True
            for i, other in enumerate(comps):
                s = tuple((a + b) % m if m else a + b for a, b, m in zip(other, value, moduli))
                k = lab[(i, c)]
                if s2.setdefault(s, k) != k or cs2.setdefault(k, s) != s:
                    ok = False
                    break
            if not ok:
                continue
            new_accs = []
            for f, (v, t) in enumerate(combo):
                if t:
                    row = piv[f][c]
                    new_accs.append([a + t * r for a, r in zip(accs[f], row)])
                else:
                    new_accs.append(accs[f])
            found = rec(c + 1, new_accs, comps + [value], s2, cs2)
            if found:
                return found
        return None

    found = rec(0, [[0] * n for _ in moduli], [], {}, {})
    if found is None:
        return None
    if moduli == (0,):
        low = min(v[0] for v in found)
        found = [(v[0] - low,) for v in found]
    return _pack(found, moduli)


def _product(options):
    if not options:
        yield ()
        return
    for head in options[0]:
        for tail in _product(options[1:]):
            yield (head,) + tail


def find_integer_witness(pattern: Cograph, bounds: Iterable[int] = (8, 16, 32, 64, 128, 256)) -> GroupWitness | None:
    for b in bounds:
        w = _search(pattern, (0,), b)
        if w is not None:
            return w
    return universal_witness(pattern)


def abelian_groups(order: int, max_factors: int = 3) -> list[tuple[int, ...]]:
    """Invariant-factor lists m1 | m2 | ... with product ``order``."""
    out = []

    def rec(rest: int, prev: int, acc: list[int]):
        if rest == 1:
            if acc:
                out.append(tuple(acc))
            return
        if len(acc) == max_factors:
            return
        for m in range(2, rest + 1):
            if rest % m == 0 and (not acc or m % acc[-1] == 0):
                rec(rest // m, m, acc + [m])

    rec(order, 1, [])
    out = [g for g in out if all(g[i + 1] % g[i] == 0 for i in range(len(g) - 1))]
    return sorted(set(out), key=lambda g: (len(g), g))


def find_torsion_witness(
    pattern: Cograph, relations: Sequence[TorsionRelation] = (), max_order: int = 48
) -> GroupWitness:
    """Witness in the smallest finite abelian group the search reaches.

    Groups are tried by order, cyclic first.  If nothing of order up to
    ``max_order`` works, the universal group is used, which always succeeds.
    """
    orders = {r.order for r in relations}
    for size in range(pattern.n, max_order + 1):
        for g in abelian_groups(size):
            if any(gcd(d, g[-1]) == 1 for d in orders):
                continue
            w = _search(pattern, g, 0)
            if w is not None:
                return w
    return universal_witness(pattern)


def universal_witness(pattern: Cograph) -> GroupWitness:
    """Labeling by the images of the points in Z^n / L.

    Torsion coordinates come straight from the Smith form; the free part is
    collapsed onto a single Z coordinate by a functional with rapidly growing
    weights, which keeps every required difference nonzero.
    """
    n = pattern.n
    rows = system_rows(pattern)
    sf = smith_normal_form(rows) if rows else None
    V = sf.V if sf else [[int(i == j) for j in range(n)] for i in range(n)]
    inv = sf.invariants if sf else ()
    r = len(inv)
    tors = [j for j in range(r) if inv[j] > 1]
    free = list(range(r, n))
    big = 2 * max((abs(x) for row in V for x in row), default=1) * 4 + 1
    comps = []
    for p in range(n):
        t = tuple(V[p][j] % inv[j] for j in tors)
        z = sum(V[p][j] * big ** k for k, j in enumerate(free))
        comps.append(t + (z,))
    moduli = tuple(inv[j] for j in tors) + (0,)
    low = min(c[-1] for c in comps)
    comps = [c[:-1] + (c[-1] - low,) for c in comps]
    w = _pack(comps, moduli)
    if not verify_sum_witness(pattern, w):
        raise ArithmeticError("universal labeling failed to realize the pattern")
    return w


def renormalize(w: GroupWitness, point: int, value) -> GroupWitness:
    """Shift every point by ``value - w[point]``; edges move by twice that."""
    comps = w.components()
    target = value if isinstance(value, tuple) else (value,)
    shift = tuple((t - c) for t, c in zip(target, comps[point]))
    out = [w.add(c, shift) for c in comps]
    return _pack(out, w.moduli)


# -- obstruction detectors ------------------------------------------------


@dataclass(frozen=True)
class Finding:
    kind: str
    points: tuple[int, ...]
    torsion: int = 0  # required torsion order, 0 when the finding is a contradiction
    forced: tuple[Pair, Pair] | None = None  # for forced-hexagon-side


def _cycles(n: int, length: int):
    """Directed cycles on distinct points, each rotation class listed once per direction."""
    for seq in permutations(range(n), length):
        if seq[0] == min(seq):
            yield seq


def detect_obstructions(pattern: Cograph) -> list[Finding]:
    n = pattern.n
    e = pattern.edge
    out: list[Finding] = []
    for p in range(n):
        others = [q for q in range(n) if q != p]
        for q, r in combinations(others, 2):
            if e(p, q) == e(p, r):
                out.append(Finding("V-at-point", (q, p, r)))

    # alternating (4k+1)-gon: edges x1..x2k, c, x1..x2k give 2*P0 = c
    k = 1
    while 4 * k + 1 <= n:
        L = 4 * k + 1
        seen = set()
        for seq in permutations(range(n), L):
            cls = [e(seq[i], seq[(i + 1) % L]) for i in range(L)]
            if cls[: 2 * k] != cls[2 * k + 1:]:
                continue
            c = cls[2 * k]
            p0 = seq[0]
            for qpt in range(n):
                if qpt != p0 and e(p0, qpt) == c and (seq, qpt) not in seen:
                    seen.add((seq, qpt))
                    out.append(Finding("alternating-pentagon" if k == 1 else f"alternating-{L}-gon", seq + (qpt,)))
        k += 1

    # forced hexagon: two pairs of opposite sides equal force the third pair
    if n >= 6:
        forced = set()
        for seq in permutations(range(n), 6):
            v = seq
            if e(v[0], v[1]) == e(v[3], v[4]) and e(v[1], v[2]) == e(v[4], v[5]) and e(v[2], v[3]) != e(v[5], v[0]):
                key = frozenset((pair(v[2], v[3]), pair(v[5], v[0])))
                if key not in forced:
                    forced.add(key)
                    a, b = sorted(key)
                    out.append(Finding("forced-hexagon-side", seq, forced=(a, b)))

    # alternating even cycles a,b,a,b,...: (L/2)(b - a) = 0
    for L in range(4, n + 1, 2):
        seen = set()
        for seq in _cycles(n, L):
            cls = [e(seq[i], seq[(i + 1) % L]) for i in range(L)]
            a, b = cls[0], cls[1]
            if a == b or any(cls[i] != (a if i % 2 == 0 else b) for i in range(L)):
                continue
            key = frozenset(pair(seq[i], seq[(i + 1) % L]) for i in range(L))
            if key in seen:
                continue
            seen.add(key)
            out.append(Finding("alternating-cycle", seq, torsion=L // 2))

    # two odd cycles with the same edge-class sequence: 2(P_i - Q_i) = 0
    for L in range(3, n + 1, 2):
        by_classes: dict[tuple, list[tuple]] = {}
        for seq in permutations(range(n), L):
            cls = tuple(e(seq[i], seq[(i + 1) % L]) for i in range(L))
            by_classes.setdefault(cls, []).append(seq)
        seen = set()
        for cls, seqs in by_classes.items():
            for s1, s2 in combinations(seqs, 2):
                key = frozenset((frozenset(pair(s1[i], s1[(i + 1) % L]) for i in range(L)),
                                 frozenset(pair(s2[i], s2[(i + 1) % L]) for i in range(L))))
                if len(key) < 2 or key in seen:
                    continue
                seen.add(key)
                out.append(Finding("identical-odd-cycles", s1 + s2, torsion=2))
    return out


# -- shifted diamond ------------------------------------------------------


def shifted_diamond(n: int, a0: int, A0: int, delta: int, m: int) -> dict:
    """Points A_i, X, Y of an n-diamond in Z_m whose lower edges are shifted by one.

    Requires n*delta = 0 so the shift wraps around.
    """
    if (n * delta) % m:
        raise CographError("n * delta must vanish for the diamond to close")
    A = [(A0 + i * delta) % m for i in range(n)]
    X = (a0 - A0) % m
    Y = (X + delta) % m
    a = [(A[i] + X) % m for i in range(n)]
    for i in range(n):
        if a[i] != (A[i - 1] + Y) % m:
            raise ArithmeticError("shifted edges disagree")
    return {"A": A, "X": X, "Y": Y, "a": a}


# -- catalogue generation -------------------------------------------------


def _close(n: int, classes: list[list[Pair]]) -> list[list[Pair]] | None:
    """Merge classes until no cross-class equality is forced; None if a point equality is."""
    while True:
        rows = []
        for cls in classes:
            rep = min(cls)
            rows.extend(_edge_vec(n, rep, p) for p in cls if p != rep)
        basis = hermite_rows(rows, n) if rows else []
        for i, j in combinations(range(n), 2):
            if not any(reduce_by_hermite(basis, _point_vec(n, i, j))):
                return None
        merged = False
        for a in range(len(classes)):
            for b in range(a + 1, len(classes)):
                if not any(reduce_by_hermite(basis, _edge_vec(n, min(classes[a]), min(classes[b])))):
                    classes = [c for k, c in enumerate(classes) if k not in (a, b)] + [classes[a] + classes[b]]
                    merged = True
                    break
            if merged:
                break
        if not merged:
            return classes


@dataclass
class SumCatalogueEntry:
    cograph: Cograph
    verdict: SumVerdict

    def line(self) -> str:
        w = self.verdict.witness
        return f"{serialize(self.cograph)};outcome={self.verdict.outcome.value};group={w.group_name};witness={w.format_values()}"


def enumerate_sum_patterns(n: int) -> list[Cograph]:
    """Canonical sum patterns on n points, reached by merge-and-close from the discrete pattern."""
    start = [[p] for p in all_pairs(n)]
    seen = {canonical_form(Cograph(n, tuple(map(tuple, start)))): start}
    frontier = [start]
    while frontier:
        nxt = []
        for classes in frontier:
            for a, b in combinations(range(len(classes)), 2):
                cand = [c for k, c in enumerate(classes) if k not in (a, b)] + [classes[a] + classes[b]]
                closed = _close(n, cand)
                if closed is None:
                    continue
                key = canonical_form(Cograph(n, tuple(map(tuple, closed))))
                if key not in seen:
                    seen[key] = closed
                    nxt.append(closed)
        frontier = nxt
    return [from_key(k) for k in sorted(seen)]


def enumerate_sum_cographs(n: int = 6, force: bool = False) -> list[SumCatalogueEntry]:
    if n < 2:
        raise CographError("need at least two points")
    if n > 6 and not force:
        raise CographError(f"sum catalogue at n={n} is refused without force=True")
    out = []
    for c in enumerate_sum_patterns(n):
        v = classify_sum(c)
        if v.outcome not in (Outcome.TORSION_FREE, Outcome.REQUIRES_TORSION):
            raise ArithmeticError("closed pattern failed to classify as solvable")
        out.append(SumCatalogueEntry(c, v))
    return out


def repeated_signature(c: Cograph) -> tuple[int, ...]:
    return tuple(len(k) for k in c.classes if len(k) > 1)
