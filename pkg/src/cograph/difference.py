"""Difference cographs: points on a line (Z) or a circle (Z_m), edges are distances."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Sequence

import networkx as nx

from .core import (
    CanonicalKey,
    Cograph,
    CographError,
    Pair,
    all_pairs,
    canonical_form,
    canonical_labeling,
    colex_pairs,
    from_key,
    serialize,
)


def diff_edge(p: int, q: int, m: int = 0) -> int:
    if p == q:
        raise CographError(f"degenerate edge: both points equal {p}")
    if m == 0:
        return abs(p - q)
    d = (p - q) % m
    return min(d, m - d)


@dataclass(frozen=True)
class DiffLabeling:
    values: tuple[int, ...]
    modulus: int = 0

    def __post_init__(self):
        vals = tuple(self.values)
        object.__setattr__(self, "values", vals)
        if len(set(vals)) != len(vals):
            raise CographError("labels must be distinct")
        if self.modulus and any(not 0 <= v < self.modulus for v in vals):
            raise CographError(f"labels must lie in [0, {self.modulus})")

    @property
    def n(self) -> int:
        return len(self.values)

    def edge(self, i: int, j: int) -> int:
        return diff_edge(self.values[i], self.values[j], self.modulus)

    def shift(self, k: int) -> "DiffLabeling":
        if self.modulus:
            return DiffLabeling(tuple((v + k) % self.modulus for v in self.values), self.modulus)
        return DiffLabeling(tuple(v + k for v in self.values), 0)

    def format(self) -> str:
        return "(" + ",".join(map(str, self.values)) + f";{self.modulus})"


def pattern_of(lab: DiffLabeling) -> Cograph:
    return Cograph.from_function(lab.n, lab.edge)


# -- realizability search -------------------------------------------------


@dataclass(frozen=True)
class DiffVerdict:
    kind: str  # "TorsionFree", "Torsion" or "NotRealizable"
    witness: DiffLabeling | None = None

    @property
    def modulus(self) -> int | None:
        return self.witness.modulus if self.witness else None


def _search(pattern: Cograph, values: Sequence[int], m: int) -> list[int] | None:
    """Point 0 sits at 0; other points take values in order, pattern checked as they go."""
    n = pattern.n
    lab = pattern.label

    def rec(k: int, chosen: list[int], by_value: dict, by_class: dict):
        if k == n:
            return list(chosen)
        for v in values:
            if v in chosen:
                continue
            bv, bc = dict(by_value), dict(by_class)
            ok = True
            for i, u in enumerate(chosen):
                d = diff_edge(u, v, m)
                c = lab[(i, k)]
                if bv.setdefault(d, c) != c or bc.setdefault(c, d) != d:
                    ok = False
                    break
            if ok:
                found = rec(k + 1, chosen + [v], bv, bc)
                if found:
                    return found
        return None

    return rec(1, [0], {}, {})


def realize_difference(pattern: Cograph, max_modulus: int = 40, bound: int = 64) -> DiffVerdict:
    if pattern.n > 6:
        raise CographError("difference search is limited to n <= 6")
    found = _search(pattern, range(-bound, bound + 1), 0)
    if found:
        low = min(found)
        return DiffVerdict("TorsionFree", DiffLabeling(tuple(v - low for v in found), 0))
    for m in range(pattern.n, max_modulus + 1):
        found = _search(pattern, range(1, m), m)
        if found:
            return DiffVerdict("Torsion", DiffLabeling(tuple(found), m))
    return DiffVerdict("NotRealizable")


# -- motifs ---------------------------------------------------------------


# four-point patterns containing a Q, from labelings covering the five cases
_Q_TYPE_SOURCES = {
    1: ((0, 1, 3, 4), 0),  # parallelogram
    2: ((0, 1, 3, 4), 6),  # filled quadrangle: all three matchings equal
    3: ((0, 1, 2, 3), 0),  # chain 0,a,2a,3a with C(0,3a) new
    4: ((0, 1, 2, 3), 4),  # chain closing with C(0,3a) = a
    5: ((0, 1, 2, 3), 5),  # chain closing with C(0,3a) = 2a
}


@lru_cache(maxsize=None)
def q_type_table() -> dict[CanonicalKey, int]:
    return {canonical_form(pattern_of(DiffLabeling(v, m))): t for t, (v, m) in _Q_TYPE_SOURCES.items()}


@dataclass
class MotifCensus:
    V: int
    Q: int
    T: int
    q_types: list[tuple[tuple[Pair, Pair], int]] = field(default_factory=list)

    def format(self) -> str:
        return f"{self.Q},{self.V},{self.T}"


def classify_q(pattern: Cograph, p: Pair, q: Pair) -> int:
    """Type 1-5 of the Q formed by disjoint same-class pairs p and q."""
    if set(p) & set(q) or pattern.edge(*p) != pattern.edge(*q):
        raise CographError(f"{p} and {q} do not form a Q")
    pts = sorted(set(p) | set(q))
    key = canonical_form(pattern.restrict(pts))
    t = q_type_table().get(key)
    if t is None:
        raise AssertionError(f"Q on points {pts} matches none of the five types")
    return t


def motif_census(x: DiffLabeling | Cograph) -> MotifCensus:
    pattern = pattern_of(x) if isinstance(x, DiffLabeling) else x
    V = Q = T = 0
    types = []
    for cls in pattern.classes:
        for p, q in combinations(cls, 2):
            if set(p) & set(q):
                V += 1
            else:
                Q += 1
                types.append(((p, q), classify_q(pattern, p, q)))
    for a, b, c in combinations(range(pattern.n), 3):
        if pattern.edge(a, b) == pattern.edge(b, c) == pattern.edge(a, c):
            T += 1
    return MotifCensus(V, Q, T, types)


# -- torsion-forcing configurations --------------------------------------


@dataclass(frozen=True)
class DiffFinding:
    kind: str
    points: tuple[int, ...]
    classes: tuple[int, ...] = ()


def detect_diff_torsion_forcers(pattern: Cograph) -> list[DiffFinding]:
    """Configurations that have no realization in Z.

    * a cycle of one class: a chain of equal edges is an arithmetic progression,
      so the closing edge would be (k-1)a, never a;
    * a filled quadrangle: on a line, a Q equalizes exactly one further matching;
    * a cycle of doublings: a V with edge e has closing edge 2e on a line, so a
      chain of doublings cannot return to its start.
    """
    out: list[DiffFinding] = []
    for k, cls in enumerate(pattern.classes):
        g = nx.Graph(list(cls))
        for cyc in nx.cycle_basis(g):
            out.append(DiffFinding("monochrome-cycle", tuple(cyc), (k,)))
    e = pattern.edge
    for quad in combinations(range(pattern.n), 4):
        a, b, c, d = quad
        if e(a, b) == e(c, d) and e(a, c) == e(b, d) and e(a, d) == e(b, c):
            out.append(DiffFinding("filled-quadrangle", quad))
    doubling = nx.DiGraph()
    witness: dict[tuple[int, int], tuple[int, ...]] = {}
    for mid in range(pattern.n):
        for x, y in combinations([p for p in range(pattern.n) if p != mid], 2):
            if e(x, mid) == e(mid, y):
                src, dst = e(x, mid), e(x, y)
                doubling.add_edge(src, dst)
                witness.setdefault((src, dst), (x, mid, y))
    for cyc in nx.simple_cycles(doubling):
        cyc = list(cyc)
        pts = tuple(p for i in range(len(cyc)) for p in witness[(cyc[i], cyc[(i + 1) % len(cyc)])])
        out.append(DiffFinding("doubling-cycle", pts, tuple(cyc)))
    return out


# -- catalogue ------------------------------------------------------------


def _raw_patterns(n: int, m: int, bound: int) -> dict[tuple[int, ...], tuple[int, ...]]:
    """First labeling (lex order) for each raw colex class sequence."""
    order = colex_pairs(n)
    top = bound + 1 if m == 0 else m
    raw: dict[tuple[int, ...], tuple[int, ...]] = {}
    for sub in combinations(range(1, top), n - 1):
        vals = (0,) + sub
        ids: dict[int, int] = {}
        seq = []
        for i, j in order:
            d = vals[j] - vals[i]
            if m:
                d = min(d, m - d)
            seq.append(ids.setdefault(d, len(ids)))
        seq = tuple(seq)
        if seq not in raw:
            raw[seq] = vals
    return raw


@dataclass
class DiffCatalogueEntry:
    cograph: Cograph
    witness: DiffLabeling
    torsion_free: bool
    census: MotifCensus

    def line(self) -> str:
        return f"{serialize(self.cograph)};witness={self.witness.format()};motifs={self.census.format()}"


def _canonical_witnesses(n: int, raw: dict, m: int, into: dict) -> None:
    for seq, vals in raw.items():
        c = Cograph.from_rgs(n, seq)
        key, order = canonical_labeling(c)
        if key not in into:
            into[key] = DiffLabeling(tuple(vals[k] for k in order), m)


def _raw_for_modulus(args):
    n, m, bound = args
    return m, _raw_patterns(n, m, bound)


def enumerate_difference_cographs(
    n: int = 5, max_modulus: int = 40, bound: int = 64, workers: int = 1
) -> list[DiffCatalogueEntry]:
    if n < 2:
        raise CographError("need at least two points")
    if n > 5:
        raise CographError("difference catalogue is limited to n <= 5")
    jobs = [(n, 0, bound)] + [(n, m, bound) for m in range(n, max_modulus + 1)]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_raw_for_modulus, jobs))
    else:
        results = [_raw_for_modulus(j) for j in jobs]
    z_found: dict[CanonicalKey, DiffLabeling] = {}
    tors_found: dict[CanonicalKey, DiffLabeling] = {}
    for m, raw in results:  # job order: Z first, then increasing m
        _canonical_witnesses(n, raw, m, z_found if m == 0 else tors_found)
    out = []
    for key in sorted(set(z_found) | set(tors_found)):
        c = from_key(key)
        w = z_found.get(key) or tors_found[key]
        if pattern_of(w) != c:
            raise AssertionError("stored witness does not regenerate its pattern")
        out.append(DiffCatalogueEntry(c, w, key in z_found, motif_census(w)))
    return out
