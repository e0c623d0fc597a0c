"""Integer helpers: totients, divisors, CRT and the prime-power totient identity."""
from __future__ import annotations

from dataclasses import dataclass
from math import comb, gcd, isqrt
from typing import Iterable, Sequence


def _check_positive(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"expected an int, got {type(n).__name__}")
    if n < 1:
        raise ValueError(f"expected a positive integer, got {n}")


def factorize(n: int) -> dict[int, int]:
    """Prime factorization by trial division, as ``{prime: exponent}``."""
    _check_positive(n)
    factors: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    for d in range(3, isqrt(n) + 1, 2):
        if n % d == 0:
            return False
    return True


def prime_divisors(n: int) -> list[int]:
    return sorted(factorize(n))


def is_prime_power(n: int) -> bool:
    """True for p**k with k >= 1 (1 itself is not a prime power)."""
    return n > 1 and len(factorize(n)) == 1


def euler_phi(n: int) -> int:
    _check_positive(n)
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def divisors(n: int) -> list[int]:
    _check_positive(n)
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def lcm(*values: int) -> int:
    out = 1
    for v in values:
        out = out * v // gcd(out, v)
    return out


class NonCoprimeModuli(ValueError):
    """Two moduli of a congruence system share a factor."""

    def __init__(self, m1: int, m2: int):
        self.moduli = (m1, m2)
        self.gcd = gcd(m1, m2)
        super().__init__(f"moduli {m1} and {m2} are not coprime (gcd {self.gcd})")


@dataclass(frozen=True)
class CongruenceSystem:
    """A list of congruences ``x = residue (mod modulus)`` with pairwise coprime moduli."""

    congruences: tuple[tuple[int, int], ...]

    def __init__(self, congruences: Iterable[tuple[int, int]]):
        pairs = tuple((int(r), int(m)) for r, m in congruences)
        if not pairs:
            raise ValueError("empty congruence system")
        for _, m in pairs:
            _check_positive(m)
        for i, (_, mi) in enumerate(pairs):
            for _, mj in pairs[i + 1:]:
                if gcd(mi, mj) != 1:
                    raise NonCoprimeModuli(mi, mj)
        object.__setattr__(self, "congruences", pairs)

    @property
    def modulus(self) -> int:
        out = 1
        for _, m in self.congruences:
            out *= m
        return out


def crt_solve(system: CongruenceSystem | Sequence[tuple[int, int]]) -> tuple[int, int]:
    """Return ``(x, M)`` with ``0 <= x < M`` solving every congruence, M the product of moduli."""
    if not isinstance(system, CongruenceSystem):
        system = CongruenceSystem(system)
    x, m = 0, 1
    for r, mi in system.congruences:
        # x + m*t = r (mod mi)
        t = ((r - x) * pow(m, -1, mi)) % mi if mi > 1 else 0
        x += m * t
        m *= mi
        x %= m
    return x, m


def phi_identity_sides(p: int, n: int) -> tuple[int, int]:
    """Both sides of sum_{i=1..n} phi(p^i)(2p^i - phi(p^i) - 3) = 2*C(p^n - 1, 2).

    Exact integer evaluation; Python ints do not wrap, so there is nothing to overflow.
    """
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    _check_positive(n)
    lhs = 0
    for i in range(1, n + 1):
        q = p**i
        f = q - q // p
        lhs += f * (2 * q - f - 3)
    rhs = 2 * comb(p**n - 1, 2)
    return lhs, rhs
