"""Intersection cographs: points are sets and each edge is the intersection of its endpoints."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations
from typing import Hashable, Mapping

from .core import CanonicalKey, Cograph, CographError, Pair, all_pairs, canonical_form, from_key, pair

EdgeSets = Mapping[Pair, frozenset]


def _norm_edges(edges: EdgeSets) -> dict[Pair, frozenset]:
    return {pair(*p): frozenset(s) for p, s in edges.items()}


def _points_of(edges: dict[Pair, frozenset]) -> int:
    n = 1 + max(max(p) for p in edges)
    if set(edges) != set(all_pairs(n)):
        raise CographError("every pair needs a set label")
    return n


def edge_pattern(edges: EdgeSets) -> Cograph:
    e = _norm_edges(edges)
    return Cograph.from_labels(_points_of(e), e)


@dataclass
class RuleReport:
    triangles: list[tuple[int, int, int]] = field(default_factory=list)
    quadrilaterals: list[tuple[int, int, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.triangles and not self.quadrilaterals


def check_rules(edges: EdgeSets, cograph: Cograph | None = None) -> RuleReport:
    """Triangles with unequal pairwise intersections and quadrilaterals PQRS
    with PQ & RS != QR & SP."""
    e = _norm_edges(edges)
    n = _points_of(e)
    if cograph is not None:
        if cograph.n != n:
            raise CographError("edge labels and cograph disagree on point count")
        for p, q in combinations(all_pairs(n), 2):
            if (e[p] == e[q]) != cograph.same(p, q):
                raise CographError(f"set labels of {p} and {q} disagree with the class structure")
    rep = RuleReport()
    for a, b, c in combinations(range(n), 3):
        x, y, z = e[pair(a, b)], e[pair(b, c)], e[pair(a, c)]
        if not (x & y == y & z == x & z):
            rep.triangles.append((a, b, c))
    for quad in combinations(range(n), 4):
        p0 = quad[0]
        for rest in permutations(quad[1:]):
            if rest[0] > rest[2]:
                continue  # each cyclic order once
            P, Q, R, S = (p0,) + rest
            if e[pair(P, Q)] & e[pair(R, S)] != e[pair(Q, R)] & e[pair(S, P)]:
                rep.quadrilaterals.append((P, Q, R, S))
    return rep


def uie_construct(edges: EdgeSets, labels: str = "all") -> list[frozenset]:
    """Point sets as the union of incident edges.

    ``labels="all"`` adds a private atom -(P+1) to every point; ``"needed"``
    adds a fresh positive atom only where a point would repeat an earlier one.
    """
    e = _norm_edges(edges)
    n = _points_of(e)
    rep = check_rules(e)
    if not rep.ok:
        raise CographError(f"edge labels violate the triangle/quadrilateral rules: {rep}")
    pts = []
    for p in range(n):
        s = frozenset().union(*(e[pair(p, q)] for q in range(n) if q != p))
        pts.append(s)
    if labels == "all":
        pts = [s | {-(p + 1)} for p, s in enumerate(pts)]
    elif labels == "needed":
        atoms = [x for s in pts for x in s if isinstance(x, int)]
        fresh = max(atoms, default=0) + 1
        for p in range(n):
            if pts[p] in pts[:p]:
                pts[p] = pts[p] | {fresh}
                fresh += 1
    else:
        raise CographError(f"unknown labels mode {labels!r}")
    for p, q in all_pairs(n):
        if pts[p] & pts[q] != e[(p, q)]:
            raise AssertionError(f"intersection of points {p},{q} differs from its edge")
    if len(set(pts)) != n:
        raise AssertionError("constructed points are not distinct")
    return pts


def intersection_pattern(points: list[frozenset]) -> Cograph:
    if len(set(points)) != len(points):
        raise CographError("point sets must be distinct")
    return Cograph.from_function(len(points), lambda i, j: points[i] & points[j])


# -- fat intersection cographs -------------------------------------------


@dataclass
class FatRepresentation:
    points: list[frozenset]
    family: list[frozenset]  # closed under intersection, contains empty set and the union

    def edge(self, i: int, j: int) -> frozenset:
        core = self.points[i] & self.points[j]
        best = None
        for s in self.family:
            if core <= s:
                best = s if best is None else best & s
        if best not in self.family:
            raise AssertionError("family is not closed under intersection")
        return best

    def pattern(self) -> Cograph:
        return Cograph.from_function(len(self.points), self.edge)


def fat_intersection_represent(c: Cograph) -> FatRepresentation:
    """One private atom per pair; the family groups atoms by class."""
    atom = {p: k + 1 for k, p in enumerate(all_pairs(c.n))}
    points = [frozenset({-(p + 1)} | {atom[pair(p, q)] for q in range(c.n) if q != p}) for p in range(c.n)]
    universe = frozenset().union(*points)
    family = [frozenset(), universe] + [frozenset(atom[p] for p in cls) for cls in c.classes]
    for a, b in combinations(family, 2):
        if a & b not in family:
            raise AssertionError("family not closed under intersection")
    rep = FatRepresentation(points, family)
    if rep.pattern() != c:
        raise AssertionError("fat representation does not reproduce the cograph")
    return rep


# -- forbidden configurations ---------------------------------------------


@dataclass(frozen=True)
class IsectFinding:
    kind: str  # "inclusion-cycle" or "triangle-inclusion"
    classes: tuple[int, ...]
    evidence: tuple[tuple[int, ...], ...]  # point tuples justifying each step


def _direct_inclusions(c: Cograph) -> dict[tuple[int, int], tuple[int, ...]]:
    """(sub, sup) -> witnessing points, for sub strictly inside sup."""
    e = c.edge
    out: dict[tuple[int, int], tuple[int, ...]] = {}
    for tri in combinations(range(c.n), 3):
        a, b, d = tri
        sides = [(e(a, b), (a, b, d)), (e(b, d), (b, d, a)), (e(a, d), (a, d, b))]
        for k in range(3):
            x = sides[k][0]
            y, z = sides[(k + 1) % 3][0], sides[(k + 2) % 3][0]
            if y == z and x != y:
                out.setdefault((y, x), tri)
    for quad in permutations(range(c.n), 4):
        P, Q, R, S = quad
        if P != min(quad):
            continue
        s = [e(P, Q), e(Q, R), e(R, S), e(S, P)]
        for k in (0, 1):
            b1, b2 = s[k + 1], s[(k + 3) % 4]
            if b1 == b2:
                for a in (s[k], s[k + 2]):
                    if a != b1:
                        out.setdefault((b1, a), quad)
    return out


def _closure(rel: set[tuple[int, int]]) -> set[tuple[int, int]]:
    rel = set(rel)
    while True:
        new = {(a, d) for a, b in rel for c, d in rel if b == c and a != d} - rel
        if not new:
            return rel
        rel |= new


def find_forbidden(c: Cograph) -> list[IsectFinding]:
    direct = _direct_inclusions(c)
    findings: list[IsectFinding] = []
    rel = set(direct)
    for (x, y) in sorted(rel):
        if x < y and (y, x) in rel:
            findings.append(IsectFinding("inclusion-cycle", (x, y), (direct[(x, y)], direct[(y, x)])))
    for x, y, z in permutations(range(c.num_classes), 3):
        if x == min(x, y, z) and {(x, y), (y, z), (z, x)} <= rel:
            findings.append(
                IsectFinding("inclusion-cycle", (x, y, z), (direct[(x, y)], direct[(y, z)], direct[(z, x)]))
            )
    closed = _closure(rel)
    if not findings:
        for x, y in sorted(closed):
            if x < y and (y, x) in closed:
                findings.append(IsectFinding("inclusion-cycle", (x, y), ()))
    # triangle rule: in a triangle with distinct classes, a side inside another
    # is inside the third as well; two sides inside the third force them equal
    e = c.edge
    changed = True
    evidence: dict[tuple[int, int], tuple[int, ...]] = {}
    while changed:
        changed = False
        for tri in combinations(range(c.n), 3):
            a, b, d = tri
            cls = {e(a, b), e(b, d), e(a, d)}
            if len(cls) != 3:
                continue
            for x, y, z in permutations(cls):
                if (y, x) in closed and (y, z) not in closed:
                    closed.add((y, z))
                    evidence[(y, z)] = tri
                    changed = True
        if changed:
            closed = _closure(closed)
    seen = {f.classes for f in findings}
    for tri in combinations(range(c.n), 3):
        a, b, d = tri
        cls = (e(a, b), e(b, d), e(a, d))
        if len(set(cls)) != 3:
            continue
        for x, y, z in permutations(cls):
            if (y, x) in closed and (z, x) in closed and y < z and (y, z, x) not in seen:
                seen.add((y, z, x))
                findings.append(IsectFinding("triangle-inclusion", (y, z, x), (tri,)))
    for x, y in sorted(closed):
        if x < y and (y, x) in closed and not any(set(f.classes) >= {x, y} for f in findings):
            findings.append(IsectFinding("inclusion-cycle", (x, y), ()))
    return findings


# -- exact representability for small n ----------------------------------


def _families(n: int):
    subsets = [frozenset(s) for k in range(2, n + 1) for s in combinations(range(n), k)]
    for mask in range(1 << len(subsets)):
        yield [s for b, s in enumerate(subsets) if mask >> b & 1]


def _edges_from_family(n: int, fam: list[frozenset]) -> dict[Pair, frozenset]:
    return {p: frozenset(k + 1 for k, s in enumerate(fam) if p[0] in s and p[1] in s) for p in all_pairs(n)}


def represent_intersection(c: Cograph) -> dict[Pair, frozenset] | None:
    """Edge sets realizing ``c`` as an intersection cograph, or None.

    An atom matters only through the set of points containing it, so trying
    every family of point subsets (size >= 2) is exhaustive.
    """
    if c.n > 4:
        raise CographError("exact intersection search is limited to n <= 4")
    for fam in sorted(_families(c.n), key=len):
        edges = _edges_from_family(c.n, fam)
        if Cograph.from_labels(c.n, edges) == c:
            return edges
    return None


@dataclass
class IsectCatalogueEntry:
    cograph: Cograph
    edges: dict[Pair, frozenset]
    points: list[frozenset]


def enumerate_intersection_cographs(n: int = 4) -> list[IsectCatalogueEntry]:
    if n < 2:
        raise CographError("need at least two points")
    if n > 4:
        raise CographError("intersection catalogue is limited to n <= 4")
    first: dict[CanonicalKey, list[frozenset]] = {}
    for fam in sorted(_families(n), key=len):
        key = canonical_form(Cograph.from_labels(n, _edges_from_family(n, fam)))
        first.setdefault(key, fam)
    out = []
    for key in sorted(first):
        c = from_key(key)
        edges = represent_intersection(c)
        pts = uie_construct(edges, labels="needed")
        if intersection_pattern(pts) != c:
            raise AssertionError("catalogue entry does not regenerate its pattern")
        out.append(IsectCatalogueEntry(c, edges, pts))
    return out


def format_set(s: frozenset) -> str:
    return "{" + ",".join(str(x) for x in sorted(s)) + "}"
