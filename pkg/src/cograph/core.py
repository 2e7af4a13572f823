"""Cograph data model: partitions of the point pairs of a complete graph.

A cograph on ``n`` points assigns every unordered pair ``{i, j}`` to a colour
class.  Colours carry no names, so two cographs are the same object exactly
when their pair partitions coincide, and isomorphic when a point permutation
carries one partition onto the other.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Callable, Hashable, Iterable, Mapping, Sequence

import networkx as nx

Pair = tuple[int, int]
CanonicalKey = bytes

MAX_POINTS = 16


class CographError(ValueError):
    """Raised when an input violates a documented precondition."""


class ParseError(CographError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def pair(i: int, j: int) -> Pair:
    if i == j:
        raise CographError(f"degenerate pair ({i}, {j})")
    return (i, j) if i < j else (j, i)


def all_pairs(n: int) -> list[Pair]:
    """Pairs in lexicographic order: (0,1), (0,2), ..., (n-2,n-1)."""
    return list(combinations(range(n), 2))


def colex_pairs(n: int) -> list[Pair]:
    """Pairs ordered by larger endpoint first: (0,1), (0,2), (1,2), (0,3), ..."""
    return [(i, j) for j in range(n) for i in range(j)]


def _class_order_key(cls: Sequence[Pair]):
    return (-len(cls), cls[0])


@dataclass(frozen=True)
class Cograph:
    """Partition of the pairs of ``range(n)`` into nonempty classes.

    ``classes`` is normalized on construction: pairs inside a class are sorted
    and classes are ordered by size (descending), then by least pair.
    """

    n: int
    classes: tuple[tuple[Pair, ...], ...]

    def __post_init__(self):
        n = self.n
        if not isinstance(n, int) or n < 2:
            raise CographError(f"point count must be an integer >= 2, got {n!r}")
        if n > MAX_POINTS:
            raise CographError(f"point count {n} exceeds supported maximum {MAX_POINTS}")
        seen: set[Pair] = set()
        norm = []
        for cls in self.classes:
            members = []
            for p in cls:
                i, j = p
                if not (0 <= i < n and 0 <= j < n):
                    raise CographError(f"pair {p} out of range for n={n}")
                q = pair(i, j)
                if q in seen:
                    raise CographError(f"pair {q} appears in more than one class")
                seen.add(q)
                members.append(q)
            if not members:
                raise CographError("empty class")
            norm.append(tuple(sorted(members)))
        missing = [p for p in all_pairs(n) if p not in seen]
        if missing:
            raise CographError(f"pair {missing[0]} missing from partition")
        norm.sort(key=_class_order_key)
        object.__setattr__(self, "classes", tuple(norm))

    @classmethod
    def from_labels(cls, n: int, labels: Mapping[Pair, Hashable]) -> "Cograph":
        groups: dict[Hashable, list[Pair]] = {}
        for p in all_pairs(n):
            if p not in labels:
                raise CographError(f"pair {p} has no label")
            groups.setdefault(labels[p], []).append(p)
        return cls(n, tuple(tuple(g) for g in groups.values()))

    @classmethod
    def from_function(cls, n: int, edge: Callable[[int, int], Hashable]) -> "Cograph":
        return cls.from_labels(n, {p: edge(*p) for p in all_pairs(n)})

    @classmethod
    def from_rgs(cls, n: int, rgs: Sequence[int], order: Sequence[Pair] | None = None) -> "Cograph":
        order = colex_pairs(n) if order is None else order
        return cls.from_labels(n, dict(zip(order, rgs)))

    @cached_property
    def label(self) -> dict[Pair, int]:
        """Map from pair to the index of its class in ``classes``."""
        return {p: k for k, cls in enumerate(self.classes) for p in cls}

    def edge(self, i: int, j: int) -> int:
        return self.label[pair(i, j)]

    def same(self, p: Pair, q: Pair) -> bool:
        return self.label[pair(*p)] == self.label[pair(*q)]

    @property
    def num_classes(self) -> int:
        return len(self.classes)

    def permute(self, sigma: Sequence[int]) -> "Cograph":
        """Relabel point ``i`` as ``sigma[i]``."""
        if sorted(sigma) != list(range(self.n)):
            raise CographError("sigma is not a permutation of the points")
        return Cograph(self.n, tuple(tuple(pair(sigma[i], sigma[j]) for i, j in cls) for cls in self.classes))

    def restrict(self, points: Sequence[int]) -> "Cograph":
        """Induced cograph on ``points``; point ``points[k]`` becomes ``k``."""
        lab = self.label
        return Cograph.from_labels(
            len(points), {(a, b): lab[pair(points[a], points[b])] for a, b in all_pairs(len(points))}
        )

    def __str__(self) -> str:
        return serialize(self)


# -- canonical form ------------------------------------------------------


def _canonical_search(n: int, lab: Mapping[Pair, int]) -> tuple[list[int], list[int]]:
    """Branch and bound over point orders.

    Points are placed one at a time; placing the k-th point fixes the next k
    entries of the colex pair sequence, so any prefix that already exceeds the
    best sequence is abandoned.  Returns (best sequence, point order).
    """
    best: list[int] | None = None
    best_order: list[int] = []

    def dfs(order: list[int], used: int, seq: list[int], mapping: dict, tight: bool):
        nonlocal best, best_order
        k = len(order)
        if k == n:
            if best is None or seq < best:
                best = list(seq)
                best_order = list(order)
            return
        for v in range(n):
            if used >> v & 1:
                continue
            s2 = list(seq)
            m2 = dict(mapping)
            t2 = tight and best is not None
            ok = True
            for u in order:
                c = lab[(u, v) if u < v else (v, u)]
                x = m2.get(c)
                if x is None:
                    x = m2[c] = len(m2)
                if t2:
                    b = best[len(s2)]
                    if x > b:
                        ok = False
                        break
                    if x < b:
                        t2 = False
                s2.append(x)
            if ok:
                dfs(order + [v], used | 1 << v, s2, m2, t2 or best is None)

    dfs([], 0, [], {}, True)
    return best, best_order


def canonical_labeling(c: Cograph) -> tuple[CanonicalKey, list[int]]:
    """Canonical key plus the point order realizing it.

    ``order[k]`` is the original point that sits at canonical position ``k``.
    """
    seq, order = _canonical_search(c.n, c.label)
    return bytes([c.n, *seq]), order


def canonical_form(c: Cograph) -> CanonicalKey:
    return canonical_labeling(c)[0]


def is_canonical_rgs(n: int, rgs: Sequence[int]) -> bool:
    """True when ``rgs`` (colex order) is already the minimum over its orbit."""
    lab = dict(zip(colex_pairs(n), rgs))
    target = list(rgs)

    def dfs(order: list[int], used: int, seq: list[int], mapping: dict) -> bool:
        # returns True if a strictly smaller sequence exists below this node
        k = len(order)
        if k == n:
            return False
        for v in range(n):
            if used >> v & 1:
                continue
            s2 = list(seq)
            m2 = dict(mapping)
            equal = True
            for u in order:
                c = lab[(u, v) if u < v else (v, u)]
                x = m2.get(c)
                if x is None:
                    x = m2[c] = len(m2)
                b = target[len(s2)]
                s2.append(x)
                if x < b:
                    return True
                if x > b:
                    equal = False
                    break
            if equal and dfs(order + [v], used | 1 << v, s2, m2):
                return True
        return False

    return not dfs([], 0, [], {})


def from_key(key: CanonicalKey) -> Cograph:
    n = key[0]
    return Cograph.from_rgs(n, list(key[1:]))


def canonical_cograph(c: Cograph) -> Cograph:
    return from_key(canonical_form(c))


def is_isomorphic(a: Cograph, b: Cograph) -> bool:
    if a.n != b.n:
        raise CographError(f"cannot compare cographs of distinct sizes {a.n} and {b.n}")
    if type_signature(a) != type_signature(b):
        return False
    return canonical_form(a) == canonical_form(b)


def type_signature(c: Cograph) -> tuple[int, ...]:
    return tuple(sorted((len(cls) for cls in c.classes), reverse=True))


def color_block(c: Cograph, class_index: int) -> nx.Graph:
    """Simple graph formed by the pairs of one class."""
    if not 0 <= class_index < c.num_classes:
        raise CographError(f"class index {class_index} out of range 0..{c.num_classes - 1}")
    g = nx.Graph()
    g.add_edges_from(c.classes[class_index])
    return g


def random_permutation(n: int, rng: random.Random) -> list[int]:
    sigma = list(range(n))
    rng.shuffle(sigma)
    return sigma


# -- catalogue line format ------------------------------------------------

_DIGITS = "0123456789abcdef"


def serialize(c: Cograph) -> str:
    body = ",".join("{" + ",".join(_DIGITS[i] + _DIGITS[j] for i, j in cls) + "}" for cls in c.classes)
    return f"n={c.n};{body}"


_HEADER = re.compile(r"n=(\d+);")


def parse(text: str, line: int = 1) -> Cograph:
    """Parse one catalogue line (trailing ``;key=value`` fields are ignored)."""
    return parse_record(text, line)[0]


def parse_record(text: str, line: int = 1) -> tuple[Cograph, dict[str, str]]:
    """Parse a catalogue line into a cograph plus its extra ``key=value`` fields."""
    text = text.rstrip("\n")
    m = _HEADER.match(text)
    if not m:
        raise ParseError("expected 'n=<points>;'", line, 1)
    n = int(m.group(1))
    if not 2 <= n <= MAX_POINTS:
        raise ParseError(f"point count {n} out of range", line, 3)
    pos = m.end()
    classes: list[list[Pair]] = []
    seen: dict[Pair, int] = {}
    while True:
        if pos >= len(text) or text[pos] != "{":
            raise ParseError("expected '{'", line, pos + 1)
        pos += 1
        cls: list[Pair] = []
        while True:
            tok = text[pos:pos + 2]
            if len(tok) < 2 or tok[0] not in _DIGITS or tok[1] not in _DIGITS:
                raise ParseError(f"bad pair token {tok!r}", line, pos + 1)
            i, j = _DIGITS.index(tok[0]), _DIGITS.index(tok[1])
            if i >= n or j >= n or i == j:
                raise ParseError(f"pair {tok} invalid for n={n}", line, pos + 1)
            p = pair(i, j)
            if p in seen:
                raise ParseError(f"pair {tok} repeated", line, pos + 1)
            seen[p] = pos + 1
            cls.append(p)
            pos += 2
            if pos < len(text) and text[pos] == ",":
                pos += 1
                continue
            if pos < len(text) and text[pos] == "}":
                pos += 1
                break
            raise ParseError("expected ',' or '}'", line, pos + 1)
        classes.append(cls)
        if pos < len(text) and text[pos] == ",":
            pos += 1
            continue
        break
    extras: dict[str, str] = {}
    if pos < len(text):
        if text[pos] != ";":
            raise ParseError("expected ';' or end of line", line, pos + 1)
        for field in text[pos + 1:].split(";"):
            if "=" not in field:
                raise ParseError(f"bad field {field!r}", line, pos + 2)
            k, v = field.split("=", 1)
            extras[k] = v
    for p in all_pairs(n):
        if p not in seen:
            raise ParseError(f"pair {_DIGITS[p[0]]}{_DIGITS[p[1]]} missing", line, len(text) + 1)
    return Cograph(n, tuple(tuple(c) for c in classes)), extras


def parse_catalogue(lines: Iterable[str]) -> list[tuple[Cograph, dict[str, str]]]:
    out = []
    for k, text in enumerate(lines, start=1):
        if text.strip() and not text.startswith("#"):
            out.append(parse_record(text, k))
    return out
