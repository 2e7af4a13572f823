"""Fibonacci wheels: a hub O = 0 and rim points P_{i+2} = P_i + P_{i+1}.

Spokes O + P_i repeat the points and rim edges P_i + P_{i+1} repeat P_{i+2},
so the wheel is a sum cograph as soon as the sequence closes up after n terms.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd

from .core import CographError
from .intlinalg import smith_normal_form


@lru_cache(maxsize=None)
def fib(i: int) -> int:
    if i < 0:
        return (-1) ** (i + 1) * fib(-i)
    a, b = 0, 1
    for _ in range(i):
        a, b = b, a + b
    return a


def lucas(i: int) -> int:
    return fib(i - 1) + fib(i + 1)


# groups Z_k + Z_k whose Fibonacci period is exactly n
PRODUCT_WHEELS = {3: 2, 6: 4, 8: 3, 16: 7}


@dataclass(frozen=True)
class WheelParameters:
    n: int
    d: int
    t: int
    h: Fraction  # may be half an integer
    mu: int
    nu: int
    r: int
    s: int


def closing_matrix(n: int) -> list[list[int]]:
    return [[fib(n - 1) - 1, fib(n)], [fib(n - 2) + 1, fib(n - 1) - 1]]


def _h_table(n: int) -> Fraction:
    if n % 4 == 0:
        return Fraction(-2 * fib(n // 2))
    if n % 4 == 2:
        return Fraction(-lucas(n // 2))
    if n % 12 in (3, 9):
        return Fraction(1 - lucas(n - 2))
    return Fraction(1 - lucas(n - 2), 2)


def wheel_parameters(n: int) -> WheelParameters:
    if n < 3:
        raise CographError("a wheel needs at least three spokes")
    d = gcd(fib(n - 2) + 1, fib(n - 1) - 1)
    num = lucas(n) - 1 - (-1) ** n
    if num % d:
        raise ArithmeticError(f"d={d} does not divide {num}")
    t = num // d
    mu = (fib(n - 1) - 1) // d
    nu = (fib(n - 2) + 1) // d
    # Bezout pair r*mu + s*(mu+nu) = 1
    g, x, y = _ext_gcd(mu, mu + nu)
    if g != 1:
        raise ArithmeticError("mu and mu+nu are not coprime")
    return WheelParameters(n, d, t, _h_table(n), mu, nu, x, y)


def _ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    if b == 0:
        return (abs(a), 1 if a >= 0 else -1, 0)
    g, x, y = _ext_gcd(b, a % b)
    return g, y, x - (a // b) * y


def h_bezout(p: WheelParameters) -> int:
    """h computed from the Bezout pair: d*b = h*a holds with h = -(s*mu + r*nu)*d."""
    return -(p.s * p.mu + p.r * p.nu) * p.d


def h_mod_t(p: WheelParameters) -> int:
    """The tabulated h as a residue mod t (half-integers via the inverse of 2)."""
    if p.h.denominator == 1:
        return int(p.h) % p.t
    return p.h.numerator * pow(2, -1, p.t) % p.t


@dataclass(frozen=True)
class WheelReport:
    n: int
    d: int
    t: int
    h: Fraction
    moduli: tuple[int, ...]  # (t,) for Z_t, (k, k) for Z_k + Z_k
    a: tuple[int, ...]
    b: tuple[int, ...]
    terms: tuple[tuple[int, ...], ...]
    table_choice: tuple[int, int] | None  # (a, b) from the closed-form rule
    table_choice_full: bool  # whether that choice already gives n distinct terms

    @property
    def group_name(self) -> str:
        return "+".join(f"Z{m}" for m in self.moduli)

    def display_terms(self) -> list:
        """Terms as signed integers, reduced only once a term reaches t."""
        if len(self.moduli) > 1:
            return [tuple(v) for v in self.terms]
        m = self.moduli[0]
        if self.table_choice_full and self.table_choice:
            x, y = self.table_choice
        else:
            x, y = self.a[0], self.b[0]
        out = [x, y]
        while len(out) < self.n:
            z = out[-2] + out[-1]
            out.append(z - m if z >= m else z)
        return out

    def to_json(self) -> dict:
        h = self.h
        return {
            "n": self.n,
            "d": self.d,
            "t": self.t,
            "h": str(h),
            "group": self.group_name,
            "a": list(self.a) if len(self.a) > 1 else self.a[0],
            "b": list(self.b) if len(self.b) > 1 else self.b[0],
            "terms": [list(v) if len(v) > 1 else v[0] for v in self.terms],
            "table_choice": list(self.table_choice) if self.table_choice else None,
            "table_choice_full": self.table_choice_full,
        }


def _starting_values(p: WheelParameters) -> tuple[int, int]:
    """Choice of a that reproduces the published table, with b = h*a/d."""
    n = p.n
    a = -2 if n % 2 and (p.d == 2 or p.h.denominator == 2) else -1
    b = p.h * a / p.d
    if b.denominator != 1:
        raise ArithmeticError(f"h*a/d not integral at n={n}")
    return a, int(b)


def _run(a, b, n: int, moduli: tuple[int, ...]) -> list[tuple[int, ...]]:
    seq = [a, b]
    while len(seq) < n + 2:
        seq.append(tuple((u + v) % m for u, v, m in zip(seq[-2], seq[-1], moduli)))
    return seq


def _is_full(seq, n: int) -> bool:
    terms = seq[:n]
    zero = tuple(0 for _ in terms[0])
    return seq[n] == seq[0] and seq[n + 1] == seq[1] and len(set(terms)) == n and zero not in terms


def wheel_build(n: int) -> WheelReport:
    """Closed wheel with n distinct spokes, all distinct from the hub.

    The closed-form choice of (a, b) always closes the wheel but for some even
    n its terms repeat; then the least b with a = 1 giving a full wheel is used.
    """
    p = wheel_parameters(n)
    table, table_full = None, True
    if n in PRODUCT_WHEELS:
        k = PRODUCT_WHEELS[n]
        moduli = (k, k)
        a, b = (1, 0), (0, 1)
        seq = _run(a, b, n, moduli)
    else:
        moduli = (p.t,)
        table = _starting_values(p)
        a, b = (table[0] % p.t,), (table[1] % p.t,)
        seq = _run(a, b, n, moduli)
        if seq[n] != a or seq[n + 1] != b:
            raise ArithmeticError(f"closed-form wheel with {n} spokes does not close")
        if (p.d * b[0] - h_mod_t(p) * a[0]) % p.t:
            raise ArithmeticError("d*b = h*a fails")
        table_full = _is_full(seq, n)
        if not table_full:
            for bb in range(p.t):
                a, b = (1,), (bb,)
                seq = _run(a, b, n, moduli)
                if _is_full(seq, n):
                    break
    if not _is_full(seq, n):
        raise ArithmeticError(f"no full wheel with {n} spokes in {moduli}")
    terms = seq[:n]
    for i in range(n):
        rim = tuple((u + v) % m for u, v, m in zip(terms[i], terms[(i + 1) % n], moduli))
        if rim != terms[(i + 2) % n]:
            raise ArithmeticError("rim edge does not match spoke")
    for x in (a, b):
        if any((p.t * v) % m for v, m in zip(x, moduli)):
            raise ArithmeticError("t does not annihilate a and b")
    return WheelReport(n, p.d, p.t, p.h, moduli, a, b, tuple(terms), table, table_full)


def closing_invariants(n: int) -> tuple[int, ...]:
    return smith_normal_form(closing_matrix(n)).invariants
