"""PL-cographs (every block is complete) and the linear spaces they encode."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations
from typing import Iterable, Sequence

from .core import CanonicalKey, Cograph, CographError, Pair, all_pairs, canonical_form, canonical_labeling, from_key, pair


@dataclass(frozen=True)
class PLCheck:
    ok: bool
    rule: int | None = None  # 1: a V without its closing edge; 2: a Q without the four cross edges
    witness: tuple[int, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


def is_pl(c: Cograph) -> PLCheck:
    e = c.edge
    for tri in combinations(range(c.n), 3):
        for q in tri:
            p, r = (x for x in tri if x != q)
            if e(p, q) == e(q, r) != e(p, r):
                return PLCheck(False, 1, (p, q, r))
    for quad in combinations(range(c.n), 4):
        a = quad[0]
        for b in quad[1:]:
            r, s = (x for x in quad if x not in (a, b))
            if e(a, b) == e(r, s) and not e(a, b) == e(a, r) == e(a, s) == e(b, r) == e(b, s):
                return PLCheck(False, 2, (a, b, r, s))
    return PLCheck(True)


def blocks(c: Cograph) -> list[frozenset[int]]:
    """Endpoint set of each class, in class order."""
    return [frozenset(p for pq in cls for p in pq) for cls in c.classes]


def pairwise_intersection_check(c: Cograph) -> bool:
    return all(len(x & y) <= 1 for x, y in combinations(blocks(c), 2))


def blocks_complete(c: Cograph) -> bool:
    return all(len(cls) == len(b) * (len(b) - 1) // 2 for cls, b in zip(c.classes, blocks(c)))


def small_blocks_complete(c: Cograph) -> bool:
    """Blocks are complete inside every 3- and 4-point subcograph."""
    return all(
        blocks_complete(c.restrict(pts)) for k in (3, 4) if c.n >= k for pts in combinations(range(c.n), k)
    )


# -- linear spaces ---------------------------------------------------------


class AxiomError(CographError):
    def __init__(self, axiom: int, witness: tuple, message: str):
        super().__init__(f"axiom {axiom} fails at {witness}: {message}")
        self.axiom = axiom
        self.witness = witness


@dataclass(frozen=True)
class LinearSpace:
    n: int
    lines: tuple[frozenset[int], ...]

    def __post_init__(self):
        lines = tuple(sorted({frozenset(l) for l in self.lines}, key=lambda l: (-len(l), sorted(l))))
        object.__setattr__(self, "lines", lines)
        for l in lines:
            if len(l) < 2:
                raise AxiomError(2, tuple(sorted(l)), "line with fewer than two points")
            if not all(0 <= p < self.n for p in l):
                raise CographError(f"line {sorted(l)} has points outside 0..{self.n - 1}")
        for p, q in all_pairs(self.n):
            through = [l for l in lines if p in l and q in l]
            if len(through) != 1:
                raise AxiomError(1, (p, q), f"{len(through)} lines through the pair")

    @classmethod
    def from_nontrivial(cls, n: int, big: Iterable[Iterable[int]]) -> "LinearSpace":
        """Complete a set of lines with the 2-point lines they leave uncovered."""
        big = [frozenset(l) for l in big]
        covered = {pair(*pq) for l in big for pq in combinations(sorted(l), 2)}
        rest = [frozenset(pq) for pq in all_pairs(n) if pq not in covered]
        return cls(n, tuple(big + rest))

    @property
    def nontrivial(self) -> list[frozenset[int]]:
        return [l for l in self.lines if len(l) >= 3]

    def serialize(self) -> str:
        body = ",".join("{" + ",".join(map(str, sorted(l))) + "}" for l in self.nontrivial)
        return f"points={self.n};lines=[{body}]"


def to_linear_space(c: Cograph) -> LinearSpace:
    check = is_pl(c)
    if not check:
        raise CographError(f"not a PL-cograph: rule {check.rule} fails at {check.witness}")
    return LinearSpace(c.n, tuple(blocks(c)))


def from_linear_space(s: LinearSpace) -> Cograph:
    line_of = {}
    for k, l in enumerate(s.lines):
        for pq in combinations(sorted(l), 2):
            line_of[pq] = k
    return Cograph.from_labels(s.n, line_of)


def complete(n: int) -> Cograph:
    return Cograph.from_function(n, lambda i, j: 0)


def singletons(n: int) -> Cograph:
    return Cograph.from_function(n, lambda i, j: (i, j))


# -- coordinatization -----------------------------------------------------


@dataclass(frozen=True)
class Coordinatization:
    X: int
    Y: int
    O: int
    labels: dict[int, tuple[int, ...]]  # point -> (class to X, class to Y) or (class to O,)

    def format(self, names: Sequence[str] | None = None) -> dict[int, str]:
        def nm(k):
            return names[k] if names else str(k)

        return {p: "(" + ",".join(nm(k) for k in lab) + ")" for p, lab in self.labels.items()}


def coordinatize(c: Cograph, X: int, Y: int, O: int | None = None) -> Coordinatization:
    """Label each point other than X, Y by its edge classes to the anchors.

    O defaults to the least point whose edges to X and Y differ from each
    other and from C(X, Y); such a point exists whenever c has two classes.
    """
    if not is_pl(c):
        raise CographError("coordinatization needs a PL-cograph")
    if c.num_classes < 2:
        raise CographError("a single-class cograph has no coordinatization")
    if X == Y:
        raise CographError("anchors X and Y must differ")
    e = c.edge

    def valid(o):
        return o not in (X, Y) and len({e(X, Y), e(o, X), e(o, Y)}) == 3

    if O is None:
        O = next((o for o in range(c.n) if valid(o)), None)
        if O is None:
            raise AssertionError("no origin found although the cograph has several classes")
    elif not valid(O):
        raise CographError(f"point {O} is not a valid origin for X={X}, Y={Y}")
    labels = {}
    for p in range(c.n):
        if p in (X, Y):
            continue
        if e(p, X) != e(p, Y):
            labels[p] = (e(p, X), e(p, Y))
        else:
            labels[p] = (e(p, O),) if p != O else (e(p, X),)
    # O itself is never on the diagonal, so the branch above is only defensive
    if len(set(labels.values())) != len(labels):
        raise AssertionError("coordinatization labels collide")
    return Coordinatization(X, Y, O, labels)


def unique_incidence(c: Cograph) -> bool:
    """Each pair of distinct classes meeting at a point meets only there."""
    seen: dict[tuple[int, int], int] = {}
    for p in range(c.n):
        at = {c.edge(p, q) for q in range(c.n) if q != p}
        for f, g in combinations(sorted(at), 2):
            if seen.setdefault((f, g), p) != p:
                return False
    return True


# -- composition ----------------------------------------------------------


def pl_sum(c: Cograph, d: Cograph) -> Cograph:
    """Disjoint union joined by single-copy edges."""
    n = c.n

    def edge(i, j):
        if j < n:
            return ("c", c.edge(i, j))
        if i >= n:
            return ("d", d.edge(i - n, j - n))
        return ("x", i, j)

    out = Cograph.from_function(n + d.n, edge)
    if out.num_classes != c.num_classes + d.num_classes + n * d.n:
        raise AssertionError("class count of the sum is off")
    return out


def _all_equivalent(c: Cograph) -> bool:
    return c.num_classes == 1 or all(len(cls) == 1 for cls in c.classes)


def pl_wedge(c: Cograph, d: Cograph) -> Cograph:
    """Glue the last point of c to the first point of d; cross pairs get single-copy edges."""
    if not (_all_equivalent(c) and _all_equivalent(d)):
        raise CographError("wedge needs operands whose points are all equivalent")
    n, m = c.n, d.n
    join = n - 1  # shared point; d's point k sits at n - 1 + k

    def edge(i, j):
        if j < n:
            return ("c", c.edge(i, j))
        if i >= join:
            return ("d", d.edge(i - join, j - join))
        return ("x", i, j)

    out = Cograph.from_function(n + m - 1, edge)
    if out.num_classes != c.num_classes + d.num_classes + (n - 1) * (m - 1):
        raise AssertionError("class count of the wedge is off")
    return out


# -- enumeration ----------------------------------------------------------


def _space_key(n: int, big: Sequence[frozenset[int]]) -> CanonicalKey:
    return canonical_form(from_linear_space(LinearSpace.from_nontrivial(n, big)))


def enumerate_linear_spaces(n: int, force: bool = False) -> list[LinearSpace]:
    """One linear space per isomorphism class, built by adding nontrivial lines."""
    if n < 1:
        raise CographError("need at least one point")
    if n > 8 or (n == 8 and not force):
        raise CographError(f"linear-space enumeration on {n} points needs force=True (n <= 8)")
    if n == 1:
        return [LinearSpace(1, ())]
    cands = [frozenset(s) for k in range(3, n + 1) for s in combinations(range(n), k)]
    level = {_space_key(n, []): []}
    found = dict(level)
    while level:
        nxt: dict[CanonicalKey, list[frozenset[int]]] = {}
        for big in level.values():
            covered = {pq for l in big for pq in combinations(sorted(l), 2)}
            for cand in cands:
                if any(pq in covered for pq in combinations(sorted(cand), 2)):
                    continue
                new = big + [cand]
                key = _space_key(n, new)
                if key not in found and key not in nxt:
                    nxt[key] = new
        found.update(nxt)
        level = nxt
    out = []
    for key in sorted(found):
        c = from_key(key)
        out.append(to_linear_space(c))
    return out


def enumerate_pl(n: int, force: bool = False) -> list[Cograph]:
    return [from_linear_space(s) for s in enumerate_linear_spaces(n, force)]


def is_minimal(s: LinearSpace, reading: str = "three-point") -> bool:
    """Minimality of a linear space.

    ``"three-point"``: every point lies on a 3-point line, so deleting any
    point destroys a nontrivial line and the space is not an expansion of a
    smaller one.  ``"nontrivial"``: every point merely lies on some line with
    at least three points.
    """
    if reading == "three-point":
        return all(any(p in l and len(l) == 3 for l in s.lines) for p in range(s.n))
    if reading == "nontrivial":
        return all(any(p in l and len(l) >= 3 for l in s.lines) for p in range(s.n))
    raise CographError(f"unknown minimality reading {reading!r}")


def minimal_spaces(n: int, reading: str = "three-point", force: bool = False) -> list[LinearSpace]:
    return [s for s in enumerate_linear_spaces(n, force) if is_minimal(s, reading)]


def canonical_space(s: LinearSpace) -> LinearSpace:
    c = from_linear_space(s)
    _, order = canonical_labeling(c)
    pos = {p: k for k, p in enumerate(order)}
    return LinearSpace(s.n, tuple(frozenset(pos[p] for p in l) for l in s.lines))


def fano_plane() -> LinearSpace:
    return LinearSpace.from_nontrivial(7, [{(i + k) % 7 for k in (0, 1, 3)} for i in range(7)])


def parse_space(text: str) -> LinearSpace:
    """Inverse of LinearSpace.serialize: ``points=n;lines=[{0,1,2},...]``."""
    try:
        head, body = text.strip().split(";", 1)
        key, val = head.split("=")
        if key.strip() != "points":
            raise ValueError
        n = int(val)
        key, val = body.split("=", 1)
        if key.strip() != "lines":
            raise ValueError
        val = val.strip()
        if not (val.startswith("[") and val.endswith("]")):
            raise ValueError
        inner = val[1:-1].strip()
        big = []
        if inner:
            for chunk in inner.split("}"):
                chunk = chunk.strip(" ,{")
                if chunk:
                    big.append({int(x) for x in chunk.split(",")})
    except ValueError as exc:
        raise CographError(f"cannot parse linear space {text!r}") from exc
    return LinearSpace.from_nontrivial(n, big)
