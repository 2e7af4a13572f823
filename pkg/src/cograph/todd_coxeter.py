"""Coset enumeration for finitely presented groups, aimed at the chain groups

    C_{p,q,n} = < P, Q | P^p, Q^q, (PQ)^n, P^2 Q P^-2 Q^-1, P Q^2 P^-1 Q^-2 >.

Words are strings over generator letters; a lowercase letter is the inverse
of its uppercase generator.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from math import gcd
from typing import Sequence

from .core import CographError

DEFAULT_CAP = 100_000


class CosetCapExceeded(CographError):
    """Enumeration was abandoned; the index is unknown (not wrong)."""


class ExcludedChainGroup(CographError):
    def __init__(self, p: int, q: int, n: int, p1: int, q1: int):
        super().__init__(f"C_{{{p},{q},{n}}} reduces to p'=q'={p1} with n=2, where P and Q commute")
        self.p1, self.q1 = p1, q1


def coset_cap() -> int:
    return int(os.environ.get("COGRAPH_COSET_CAP", DEFAULT_CAP))


@dataclass(frozen=True)
class Presentation:
    generators: str  # uppercase letters
    relators: tuple[str, ...]
    name: str = ""

    def __post_init__(self):
        for r in self.relators:
            for ch in r:
                if ch.upper() not in self.generators:
                    raise CographError(f"relator {r!r} uses unknown letter {ch!r}")


def chain_presentation(p: int, q: int, n: int) -> Presentation:
    if p < 1 or q < 1 or n < 2:
        raise CographError("need p, q >= 1 and n >= 2")
    rels = ("P" * p, "Q" * q, "PQ" * n, "PPQppq", "PQQpqq")
    return Presentation("PQ", rels, f"C_{{{p},{q},{n}}}")


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


@dataclass(frozen=True)
class ChainOrder:
    p1: int
    q1: int
    order: int


def chain_group_order(p: int, q: int, n: int) -> ChainOrder:
    """p' = (p, [q, 2n]), q' = (q, [p, 2n]) and |C| = p' (q', 2n) n / 2."""
    if p % 2 or q % 2:
        raise CographError("p and q must be even for P and Q to start a chain")
    p1 = gcd(p, _lcm(q, 2 * n))
    q1 = gcd(q, _lcm(p, 2 * n))
    if n == 2 and p1 == q1 and p1 % 4 == 2:
        raise ExcludedChainGroup(p, q, n, p1, q1)
    return ChainOrder(p1, q1, p1 * gcd(q1, 2 * n) * n // 2)


# -- enumeration ----------------------------------------------------------


@dataclass
class CosetTable:
    letters: str  # column order: generators then their inverses
    rows: list[dict[str, int]]  # coset -> letter -> coset, cosets numbered from 0
    subgroup: tuple[str, ...]

    @property
    def index(self) -> int:
        return len(self.rows)

    def act(self, coset: int, word: str) -> int:
        for ch in word:
            coset = self.rows[coset][ch]
        return coset

    def relators_hold(self, relators: Sequence[str]) -> bool:
        return all(self.act(c, r) == c for c in range(self.index) for r in relators)

    def permutation(self, word: str) -> tuple[int, ...]:
        return tuple(self.act(c, word) for c in range(self.index))

    def format(self) -> str:
        gens = [ch for ch in self.letters if ch.isupper()]
        lines = ["coset " + " ".join(f"{g:>5}" for g in gens)]
        for c, row in enumerate(self.rows):
            lines.append(f"{c + 1:>5} " + " ".join(f"{row[g] + 1:>5}" for g in gens))
        return "\n".join(lines)


def _inv(ch: str) -> str:
    return ch.lower() if ch.isupper() else ch.upper()


class _Enumerator:
    def __init__(self, pres: Presentation, subgroup: Sequence[str], cap: int):
        self.letters = pres.generators + pres.generators.lower()
        self.relators = list(pres.relators)
        self.subgroup = list(subgroup)
        self.cap = cap
        self.table: list[dict[str, int | None]] = []
        self.parent: list[int] = []
        self.deductions: list[tuple[int, str]] = []
        self.new_coset()

    # bookkeeping
    def new_coset(self) -> int:
        if len(self.table) >= self.cap:
            raise CosetCapExceeded(f"coset cap {self.cap} reached")
        self.table.append({ch: None for ch in self.letters})
        self.parent.append(len(self.parent))
        return len(self.table) - 1

    def live(self, c: int) -> bool:
        return self.parent[c] == c

    def find(self, c: int) -> int:
        while self.parent[c] != c:
            self.parent[c] = self.parent[self.parent[c]]
            c = self.parent[c]
        return c

    def set_entry(self, c: int, ch: str, d: int) -> None:
        self.table[c][ch] = d
        self.table[d][_inv(ch)] = c
        self.deductions.append((c, ch))

    def define(self, c: int, ch: str) -> int:
        d = self.new_coset()
        self.set_entry(c, ch, d)
        return d

    def coincidence(self, a: int, b: int) -> None:
        queue = [(a, b)]
        while queue:
            a, b = (self.find(x) for x in queue.pop())
            if a == b:
                continue
            if a > b:
                a, b = b, a
            self.parent[b] = a
            for ch in self.letters:
                t = self.table[b][ch]
                if t is None:
                    continue
                self.table[b][ch] = None
                if self.table[t][_inv(ch)] == b:
                    self.table[t][_inv(ch)] = None
                a2, t2 = self.find(a), self.find(t)
                if self.table[a2][ch] is not None:
                    queue.append((self.table[a2][ch], t2))
                elif self.table[t2][_inv(ch)] is not None:
                    queue.append((self.table[t2][_inv(ch)], a2))
                else:
                    self.set_entry(a2, ch, t2)

    def scan(self, c: int, word: str, fill: bool) -> None:
        """Trace word from c forwards and backwards; close a one-letter gap, or define cosets if fill."""
        f, i = c, 0
        b, j = c, len(word) - 1
        while True:
            while i <= j and self.table[f][word[i]] is not None:
                f = self.table[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and self.table[b][_inv(word[j])] is not None:
                b = self.table[b][_inv(word[j])]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                self.set_entry(f, word[i], b)
                return
            if not fill:
                return
            self.define(f, word[i])

    # strategies
    def hlt(self) -> None:
        for w in self.subgroup:
            self.scan(0, w, fill=True)
        c = 0
        while c < len(self.table):
            for r in self.relators:
                if not self.live(c):
                    break
                self.scan(c, r, fill=True)
            if self.live(c):
                for ch in self.letters:
                    if self.table[c][ch] is None:
                        self.define(c, ch)
            self.deductions.clear()  # only the deduction-driven strategy uses them
            c += 1

    def felsch(self) -> None:
        conj: dict[str, list[str]] = {ch: [] for ch in self.letters}
        for r in self.relators:
            for w in (r, "".join(_inv(ch) for ch in reversed(r))):
                for k in range(len(w)):
                    rot = w[k:] + w[:k]
                    if rot not in conj[rot[0]]:
                        conj[rot[0]].append(rot)
        for w in self.subgroup:
            self.scan(0, w, fill=True)
        while True:
            self.process_deductions(conj)
            gap = self.first_gap()
            if gap is None:
                break
            self.define(*gap)
        # every relator at every coset once more; catches anything the stack missed
        for c in range(len(self.table)):
            for r in self.relators:
                if self.live(c):
                    self.scan(c, r, fill=True)
        if self.first_gap() is not None:
            self.hlt()

    def process_deductions(self, conj: dict[str, list[str]]) -> None:
        while self.deductions:
            c, ch = self.deductions.pop()
            c = self.find(c)
            for w in conj[ch]:
                if self.live(c):
                    self.scan(c, w, fill=False)
            d = self.table[c][ch]
            if d is not None:
                d = self.find(d)
                for w in conj[_inv(ch)]:
                    if self.live(d):
                        self.scan(d, w, fill=False)

    def first_gap(self) -> tuple[int, str] | None:
        for c in range(len(self.table)):
            if self.live(c):
                for ch in self.letters:
                    if self.table[c][ch] is None:
                        return c, ch
        return None

    def standardized(self) -> CosetTable:
        """Renumber live cosets in breadth-first order from the subgroup coset."""
        order = [0]
        pos = {0: 0}
        k = 0
        while k < len(order):
            c = order[k]
            for ch in self.letters:
                d = self.find(self.table[c][ch])
                if d not in pos:
                    pos[d] = len(order)
                    order.append(d)
            k += 1
        rows = [{ch: pos[self.find(self.table[c][ch])] for ch in self.letters} for c in order]
        return CosetTable(self.letters, rows, tuple(self.subgroup))


def todd_coxeter(
    pres: Presentation, subgroup: Sequence[str] = ("P",), strategy: str = "hlt", cap: int | None = None
) -> CosetTable:
    """Closed coset table of the subgroup generated by the given words."""
    en = _Enumerator(pres, subgroup, coset_cap() if cap is None else cap)
    if strategy == "hlt":
        en.hlt()
    elif strategy == "felsch":
        en.felsch()
    else:
        raise CographError(f"unknown strategy {strategy!r}")
    table = en.standardized()
    if not table.relators_hold(pres.relators):
        raise AssertionError("a relator moves some coset")
    for w in subgroup:
        if table.act(0, w) != 0:
            raise AssertionError("a subgroup generator moves the base coset")
    return table


@dataclass(frozen=True)
class EnumerationResult:
    index: int
    subgroup_order: int
    order: int
    table: CosetTable


def chain_group_enumeration(p: int, q: int, n: int, strategy: str = "hlt", cap: int | None = None) -> EnumerationResult:
    """Index over <P>, |<P>| from the regular action, and the group order."""
    pres = chain_presentation(p, q, n)
    table = todd_coxeter(pres, ("P",), strategy, cap)
    regular = todd_coxeter(pres, (), strategy, cap)
    sub = len(_orbit_of_identity(regular, "P"))
    order = regular.index
    if order != table.index * sub:
        raise AssertionError("index times subgroup order differs from the group order")
    return EnumerationResult(table.index, sub, order, table)


def _orbit_of_identity(regular: CosetTable, word: str) -> list[int]:
    seen = [0]
    c = regular.act(0, word)
    while c != 0:
        seen.append(c)
        c = regular.act(c, word)
    return seen


# -- structure check ------------------------------------------------------


@dataclass
class ChainGroupStructure:
    order: int
    center_part: int  # |S|, S = <P^2, Q^2>
    quotient_order: int
    dihedral: bool
    central: bool
    power_relation: bool  # P^2n Q^2n = 1
    commute: bool  # PQ = QP


def _compose(x: tuple[int, ...], y: tuple[int, ...]) -> tuple[int, ...]:
    """x then y, acting on the right."""
    return tuple(y[i] for i in x)


def _generate(gens: Sequence[tuple[int, ...]], ident: tuple[int, ...]) -> set[tuple[int, ...]]:
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = _compose(x, g)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def verify_chain_group_structure(p: int, q: int, n: int, cap: int | None = None) -> ChainGroupStructure:
    """Rebuild C_{p,q,n} from its regular action and check its shape."""
    pres = chain_presentation(p, q, n)
    reg = todd_coxeter(pres, (), "hlt", cap)
    P, Q = reg.permutation("P"), reg.permutation("Q")
    ident = tuple(range(reg.index))
    group = _generate([P, Q], ident)
    if len(group) != reg.index:
        raise AssertionError("regular action does not have the expected size")
    P2, Q2 = _compose(P, P), _compose(Q, Q)
    S = _generate([P2, Q2], ident)
    central = all(_compose(s, g) == _compose(g, s) for s in S for g in (P, Q))
    # quotient by S: cosets gS; P and Q become involutions and PQ has order n'
    cosets: dict[tuple[int, ...], int] = {}
    for g in group:
        if g not in cosets:
            k = len(set(cosets.values()))
            for s in S:
                cosets[_compose(g, s)] = k
    quotient_order = len(set(cosets.values()))
    A = _compose(P, Q)
    a_order, x = 1, A
    while x not in S:
        x = _compose(x, A)
        a_order += 1
    dihedral = P2 in S and Q2 in S and quotient_order == 2 * a_order
    power = ident
    for _ in range(2 * n):
        power = _compose(power, P)
    for _ in range(2 * n):
        power = _compose(power, Q)
    return ChainGroupStructure(
        order=len(group),
        center_part=len(S),
        quotient_order=quotient_order,
        dihedral=dihedral and a_order == n,
        central=central,
        power_relation=power == ident,
        commute=_compose(P, Q) == _compose(Q, P),
    )
