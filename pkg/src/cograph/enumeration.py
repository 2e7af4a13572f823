"""Counting and exhaustive listing of cographs on n points.

``count_cographs`` averages over point permutations and colour permutations
at once (colours are interchangeable), so the count is an orbit count of
``S_n x S_k`` acting on functions from the k pairs to k colours.
``enumerate_cographs`` lists every set partition of the pairs and keeps
the ones already in canonical form.
"""

from __future__ import annotations

from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial, gcd, prod
from typing import Iterator

from .core import CanonicalKey, CographError, is_canonical_rgs


@dataclass(frozen=True)
class CycleType:
    lengths: tuple[int, ...]  # descending
    weight: int  # number of permutations with these cycle lengths


def integer_partitions(n: int, largest: int | None = None) -> Iterator[tuple[int, ...]]:
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - k, k):
            yield (k,) + rest


def centralizer_size(lengths: tuple[int, ...]) -> int:
    return prod(k ** m * factorial(m) for k, m in Counter(lengths).items())


def cycle_types(n: int) -> list[CycleType]:
    return [CycleType(p, factorial(n) // centralizer_size(p)) for p in integer_partitions(n)]


@lru_cache(maxsize=None)
def pair_cycle_lengths(lengths: tuple[int, ...]) -> Counter:
    """Cycle lengths of the induced permutation on unordered pairs."""
    out: Counter = Counter()
    for idx, a in enumerate(lengths):
        if a % 2:
            out[a] += (a - 1) // 2
        else:
            out[a] += (a - 2) // 2
            out[a // 2] += 1
        for b in lengths[idx + 1:]:
            g = gcd(a, b)
            out[a * b // g] += g
    return +out


def _fixed_total(point_types: list[CycleType], k: int) -> int:
    """Sum over (sigma, tau) in the given point types times S_k of fixed functions."""
    induced = [(t.weight, pair_cycle_lengths(t.lengths)) for t in point_types]
    needed = sorted({L for _, cyc in induced for L in cyc})
    divisors = {L: [d for d in range(1, L + 1) if L % d == 0] for L in needed}
    total = 0
    for tau in integer_partitions(k):
        mult = Counter(tau)
        w_tau = factorial(k) // centralizer_size(tau)
        # colours fixed by tau^L: elements on tau-cycles whose length divides L
        g = {L: sum(d * mult.get(d, 0) for d in divisors[L]) for L in needed}
        inner = 0
        for w_sigma, cyc in induced:
            inner += w_sigma * prod(g[L] ** c for L, c in cyc.items())
        total += w_tau * inner
    return total


def count_cographs(n: int, workers: int = 1) -> int:
    """Exact number of cographs on ``n`` points, up to isomorphism."""
    if n < 2:
        raise CographError(f"count_cographs needs n >= 2, got {n}")
    k = comb(n, 2)
    types = cycle_types(n)
    if workers > 1 and len(types) > 1:
        chunks = [types[i::workers] for i in range(workers)]
        with ProcessPoolExecutor(max_workers=workers) as pool:
            total = sum(pool.map(_fixed_total, chunks, [k] * len(chunks)))
    else:
        total = _fixed_total(types, k)
    denom = factorial(n) * factorial(k)
    if total % denom:
        raise ArithmeticError(f"Burnside total for n={n} not divisible by n!k!")
    return total // denom


def restricted_growth_strings(length: int) -> Iterator[list[int]]:
    """All set partitions of ``range(length)`` as restricted growth strings."""
    if length == 0:
        yield []
        return
    seq = [0] * length
    maxes = [0] * length  # maxes[i] = max(seq[:i+1])

    def rec(i: int):
        if i == length:
            yield list(seq)
            return
        top = maxes[i - 1] + 1
        for v in range(top + 1):
            seq[i] = v
            maxes[i] = max(maxes[i - 1], v)
            yield from rec(i + 1)

    seq[0] = 0
    maxes[0] = 0
    yield from rec(1)


def enumerate_cographs(n: int, force: bool = False) -> list[CanonicalKey]:
    """Every cograph on ``n`` points as a sorted list of canonical keys."""
    if n < 2:
        raise CographError(f"enumerate_cographs needs n >= 2, got {n}")
    if n > 5 and not force:
        raise CographError(f"exhaustive enumeration at n={n} is refused without force=True")
    keys = [bytes([n, *rgs]) for rgs in restricted_growth_strings(comb(n, 2)) if is_canonical_rgs(n, rgs)]
    return sorted(keys)
