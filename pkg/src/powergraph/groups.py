"""Finite groups stored as dense Cayley tables over indices 0..n-1, identity at 0."""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import gcd
from typing import IO, Sequence

import numpy as np

from . import kernels
from .numtheory import euler_phi, is_prime, is_prime_power, prime_divisors

MAX_ORDER = 2048
FULL_VALIDATION_LIMIT = 512
SPOT_CHECK_TRIPLES = 20000


class GroupError(ValueError):
    pass


class OrderCapExceeded(GroupError):
    pass


class CayleyTableError(GroupError):
    """Base class for problems found while reading a Cayley table."""


class MalformedTableError(CayleyTableError):
    pass


class LatinSquareError(CayleyTableError):
    pass


class MissingIdentityError(CayleyTableError):
    pass


class AssociativityError(CayleyTableError):
    def __init__(self, triple: tuple[int, int, int]):
        self.triple = triple
        super().__init__(f"(ab)c != a(bc) for (a, b, c) = {triple}")


@dataclass(frozen=True, eq=False)
class Group:
    """A finite group given by its multiplication table.

    ``table[a, b]`` is the index of ``a*b``. Index 0 is always the identity.
    ``names`` optionally carries a printable form of each element.
    """

    table: np.ndarray
    label: str = "G"
    names: tuple[str, ...] | None = field(default=None, repr=False)

    def __post_init__(self):
        t = np.array(self.table, dtype=np.int32, copy=True)
        if t.ndim != 2 or t.shape[0] != t.shape[1] or t.shape[0] < 1:
            raise GroupError(f"table must be a non-empty square matrix, got shape {t.shape}")
        if t.shape[0] > MAX_ORDER:
            raise OrderCapExceeded(f"order {t.shape[0]} exceeds cap {MAX_ORDER}")
        t.setflags(write=False)
        object.__setattr__(self, "table", t)

    @property
    def order(self) -> int:
        return self.table.shape[0]

    identity = 0

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"Group({self.label!r}, order={self.order})"

    def mul(self, a: int, b: int) -> int:
        return int(self.table[a, b])

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.argmin(self.table, axis=1)  # the 0 entry of each row
        inv.setflags(write=False)
        return inv

    def inverse(self, x: int) -> int:
        return int(self.inverses[self._check_index(x)])

    def power(self, x: int, k: int) -> int:
        x = self._check_index(x)
        k %= self.element_orders[x]
        y = 0
        for _ in range(k):
            y = int(self.table[y, x])
        return y

    @cached_property
    def element_orders(self) -> np.ndarray:
        orders = kernels.element_orders(self.table)
        orders.setflags(write=False)
        return orders

    @cached_property
    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    def name(self, x: int) -> str:
        return self.names[x] if self.names is not None else str(x)

    def _check_index(self, x: int) -> int:
        if not 0 <= x < self.order:
            raise IndexError(f"element index {x} out of range for order {self.order}")
        return int(x)


# ----------------------------------------------------------------------
# validation

def check_latin_square(table: np.ndarray) -> None:
    n = table.shape[0]
    target = np.arange(n)
    if table.min() < 0 or table.max() >= n:
        raise LatinSquareError("entries outside 0..n-1")
    rows = np.sort(table, axis=1)
    bad = np.nonzero((rows != target).any(axis=1))[0]
    if len(bad):
        raise LatinSquareError(f"row {int(bad[0])} is not a permutation of 0..{n - 1}")
    cols = np.sort(table, axis=0)
    bad = np.nonzero((cols != target[:, None]).any(axis=0))[0]
    if len(bad):
        raise LatinSquareError(f"column {int(bad[0])} is not a permutation of 0..{n - 1}")


def check_associative(table: np.ndarray, seed: int = 0) -> None:
    """Exhaustive below FULL_VALIDATION_LIMIT, sampled triples above."""
    n = table.shape[0]
    if n <= FULL_VALIDATION_LIMIT:
        witness = kernels.associativity_witness(table)
    else:
        rng = np.random.default_rng(seed)
        a, b, c = rng.integers(0, n, size=(3, SPOT_CHECK_TRIPLES))
        bad = np.nonzero(table[table[a, b], c] != table[a, table[b, c]])[0]
        witness = (int(a[bad[0]]), int(b[bad[0]]), int(c[bad[0]])) if len(bad) else None
    if witness is not None:
        raise AssociativityError(tuple(int(v) for v in witness))


def validate(g: Group) -> None:
    """Check every group axiom on ``g``; raises a CayleyTableError subclass."""
    t = g.table
    check_latin_square(t)
    n = g.order
    if not (np.array_equal(t[0], np.arange(n)) and np.array_equal(t[:, 0], np.arange(n))):
        raise MissingIdentityError("index 0 is not a two-sided identity")
    check_associative(t)


# ----------------------------------------------------------------------
# constructors

def _cap(n: int) -> None:
    if n > MAX_ORDER:
        raise OrderCapExceeded(f"order {n} exceeds cap {MAX_ORDER}")


def build_cyclic(n: int) -> Group:
    if n < 1:
        raise GroupError(f"cyclic group needs n >= 1, got {n}")
    _cap(n)
    i = np.arange(n)
    return Group((i[:, None] + i[None, :]) % n, label=f"Z{n}")


def build_elementary_abelian(p: int, k: int) -> Group:
    if not is_prime(p):
        raise GroupError(f"{p} is not prime")
    if k < 1:
        raise GroupError(f"rank must be >= 1, got {k}")
    n = p**k
    _cap(n)
    digits = np.array(list(product(range(p), repeat=k)), dtype=np.int64)  # row i = base-p digits of i
    weights = p ** np.arange(k - 1, -1, -1)
    summed = (digits[:, None, :] + digits[None, :, :]) % p
    label = f"Z{p}" if k == 1 else f"Z{p}^{k}"
    return Group(summed @ weights, label=label)


def build_generalized_quaternion(m: int) -> Group:
    """Q_{4m} = <x, y | x^{2m} = 1, y^2 = x^m, y^-1 x y = x^-1>; x^i y^j has index i + 2m*j."""
    if m < 2:
        raise GroupError(f"generalized quaternion needs m >= 2, got {m}")
    n2 = 2 * m
    _cap(4 * m)
    i = np.arange(4 * m) % n2
    j = np.arange(4 * m) // n2
    # (x^i y^a)(x^k y^b) = x^(i + (-1)^a k + m*[a=b=1]) y^(a+b)
    sign = np.where(j == 0, 1, -1)
    exp = i[:, None] + sign[:, None] * i[None, :] + m * (j[:, None] & j[None, :])
    table = exp % n2 + n2 * ((j[:, None] + j[None, :]) % 2)
    names = tuple(_word("x", a, "y", b) for b in range(2) for a in range(n2))
    return Group(table, label=f"Q{4 * m}", names=names)


def build_dihedral(m: int) -> Group:
    """Dihedral group of order 2m; r^i s^j has index i + m*j."""
    if m < 3:
        raise GroupError(f"dihedral group needs m >= 3, got {m}")
    _cap(2 * m)
    i = np.arange(2 * m) % m
    j = np.arange(2 * m) // m
    sign = np.where(j == 0, 1, -1)
    table = (i[:, None] + sign[:, None] * i[None, :]) % m + m * ((j[:, None] + j[None, :]) % 2)
    names = tuple(_word("r", a, "s", b) for b in range(2) for a in range(m))
    return Group(table, label=f"D{2 * m}", names=names)


def build_heisenberg(p: int) -> Group:
    """Upper unitriangular 3x3 matrices over Z_p: (a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')."""
    if p == 2 or not is_prime(p):
        raise GroupError(f"Heisenberg group needs an odd prime, got {p}")
    n = p**3
    _cap(n)
    v = np.arange(n)
    a, b, c = v // (p * p), (v // p) % p, v % p
    na = (a[:, None] + a[None, :]) % p
    nb = (b[:, None] + b[None, :]) % p
    nc = (c[:, None] + c[None, :] + a[:, None] * b[None, :]) % p
    names = tuple(f"({x},{y},{z})" for x, y, z in zip(a, b, c))
    return Group(na * p * p + nb * p + nc, label=f"Heis({p})", names=names)


def _word(g: str, a: int, h: str, b: int) -> str:
    parts = [f"{g}^{a}" if a > 1 else g] if a else []
    if b:
        parts.append(h)
    return "".join(parts) or "1"


def build_from_permutations(
    generators: Sequence[Sequence[int]], label: str | None = None, degree: int | None = None
) -> Group:
    """Closure of permutations (image lists) under composition.

    The product ``a*b`` applies ``a`` first, then ``b``. Breadth-first over generators.
    """
    gens = [tuple(int(v) for v in p) for p in generators]
    if degree is None:
        degree = max((len(p) for p in gens), default=1)
    gens = [p + tuple(range(len(p), degree)) for p in gens]
    for p in gens:
        if sorted(p) != list(range(degree)):
            raise GroupError(f"not a bijection on 0..{degree - 1}: {p}")
    identity = tuple(range(degree))
    elements = [identity]
    index = {identity: 0}
    queue = [identity]
    while queue:
        nxt = []
        for e in queue:
            for s in gens:
                prod = tuple(s[v] for v in e)  # e then s
                if prod not in index:
                    if len(elements) >= MAX_ORDER:
                        raise OrderCapExceeded(f"closure exceeds {MAX_ORDER} elements")
                    index[prod] = len(elements)
                    elements.append(prod)
                    nxt.append(prod)
        queue = nxt
    perms = np.array(elements, dtype=np.int64)
    n = len(elements)
    table = np.empty((n, n), dtype=np.int32)
    keys = {p.tobytes(): k for k, p in enumerate(perms)}
    for a in range(n):
        composed = perms[:, perms[a]]  # row b: a then b
        # composed[b] is "a then b"; we need table[a, b] = a then b
        table[a] = [keys[row.tobytes()] for row in composed]
    names = tuple(format_cycles(p) for p in elements)
    return Group(table, label=label or f"Perm({n})", names=names)


def parse_cycles(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse cycle notation like ``"(0 1 2)(3 4)"`` into an image list."""
    cycles = re.findall(r"\(([^()]*)\)", text)
    if not cycles and text.strip() not in ("", "()"):
        raise GroupError(f"cannot parse cycle notation: {text!r}")
    parsed = [[int(tok) for tok in re.split(r"[\s,]+", c.strip()) if tok] for c in cycles]
    top = max((v for c in parsed for v in c), default=-1) + 1
    degree = max(degree or 0, top, 1)
    image = list(range(degree))
    seen: set[int] = set()
    for c in parsed:
        if seen & set(c) or len(set(c)) != len(c):
            raise GroupError(f"cycles are not disjoint in {text!r}")
        seen.update(c)
        for k, v in enumerate(c):
            image[v] = c[(k + 1) % len(c)]
    return tuple(image)


def format_cycles(perm: Sequence[int]) -> str:
    seen = set()
    out = []
    for start in range(len(perm)):
        if start in seen or perm[start] == start:
            continue
        cyc = [start]
        seen.add(start)
        v = perm[start]
        while v != start:
            cyc.append(v)
            seen.add(v)
            v = perm[v]
        out.append("(" + " ".join(map(str, cyc)) + ")")
    return "".join(out) or "()"


def build_symmetric(d: int) -> Group:
    if d < 1:
        raise GroupError("degree must be >= 1")
    if d <= 2:
        return build_from_permutations([tuple(range(d))[::-1]], label=f"S{d}", degree=d)
    cycle = tuple(range(1, d)) + (0,)
    swap = (1, 0) + tuple(range(2, d))
    return build_from_permutations([swap, cycle], label=f"S{d}")


def build_alternating(d: int) -> Group:
    if d < 3:
        return build_from_permutations([], label=f"A{d}", degree=max(d, 1))
    gens = [parse_cycles(f"(0 1 {k})", d) for k in range(2, d)]
    return build_from_permutations(gens, label=f"A{d}")


def build_frobenius_7_3(k: int = 1) -> Group:
    """[Z_7^k]Z_3 with Z_3 acting by v -> 2v on every coordinate (k=1 is F21)."""
    if k < 1:
        raise GroupError("k must be >= 1")
    gens = []
    for c in range(k):
        gens.append(tuple(range(7 * c)) + tuple(7 * c + (i + 1) % 7 for i in range(7)) + tuple(range(7 * (c + 1), 7 * k)))
    gens.append(tuple(7 * (v // 7) + (2 * (v % 7)) % 7 for v in range(7 * k)))
    label = "F21" if k == 1 else f"Z7^{k}:Z3"
    return build_from_permutations(gens, label=label)


def direct_product(g: Group, h: Group, label: str | None = None) -> Group:
    """g x h with (a, b) at index a*|h| + b."""
    ng, nh = g.order, h.order
    _cap(ng * nh)
    big = g.table.astype(np.int64)[:, None, :, None] * nh + h.table.astype(np.int64)[None, :, None, :]
    names = None
    if g.names is not None or h.names is not None:
        names = tuple(f"({g.name(a)},{h.name(b)})" for a in range(ng) for b in range(nh))
    return Group(big.reshape(ng * nh, ng * nh), label=label or f"{g.label}x{h.label}", names=names)


# ----------------------------------------------------------------------
# Cayley table files

def load_cayley_table(source: IO[str] | str) -> Group:
    """Read a Cayley-table file (see README) and return a validated Group.

    The identity is located and swapped into index 0.
    """
    text = source.read() if hasattr(source, "read") else str(source)
    label = None
    rows: list[list[int]] = []
    n = None
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            m = re.match(r"#\s*label:\s*(.*)$", line)
            if m:
                label = m.group(1).strip()
            continue
        try:
            values = [int(tok) for tok in line.split()]
        except ValueError:
            raise MalformedTableError(f"line {lineno}: non-integer entry") from None
        if n is None:
            if len(values) != 1 or values[0] < 1:
                raise MalformedTableError(f"line {lineno}: expected the order n on its own line")
            n = values[0]
            if n > MAX_ORDER:
                raise OrderCapExceeded(f"order {n} exceeds cap {MAX_ORDER}")
            continue
        if len(values) != n:
            raise MalformedTableError(f"line {lineno}: expected {n} entries, got {len(values)}")
        rows.append(values)
    if n is None:
        raise MalformedTableError("empty table file")
    if len(rows) != n:
        raise MalformedTableError(f"expected {n} rows, got {len(rows)}")
    table = np.array(rows, dtype=np.int64)
    check_latin_square(table)
    ident = np.arange(n)
    candidates = [e for e in range(n) if np.array_equal(table[e], ident) and np.array_equal(table[:, e], ident)]
    if not candidates:
        raise MissingIdentityError("no two-sided identity element")
    e = candidates[0]
    if e != 0:
        perm = np.arange(n)
        perm[[0, e]] = perm[[e, 0]]  # an involution, so it is its own inverse
        table = perm[table[np.ix_(perm, perm)]]
    check_associative(table)
    return Group(table, label=label or f"Table({n})")


def dump_cayley_table(g: Group) -> str:
    lines = [f"# label: {g.label}", str(g.order)]
    lines.extend(" ".join(map(str, row)) for row in g.table.tolist())
    return "\n".join(lines) + "\n"


def read_group_file(path: str) -> Group:
    with open(path) as fh:
        return load_cayley_table(fh)


# ----------------------------------------------------------------------
# queries

@dataclass(frozen=True)
class SpectrumInfo:
    """Element-order statistics: pi_e (orders), mu (maximal orders), s (counts), pi (primes)."""

    pi_e: tuple[int, ...]
    mu: tuple[int, ...]
    s: dict[int, int]
    pi: tuple[int, ...]

    @property
    def order(self) -> int:
        return sum(self.s.values())


def element_order(g: Group, x: int) -> int:
    return int(g.element_orders[g._check_index(x)])


def spectrum(g: Group) -> SpectrumInfo:
    values, counts = np.unique(g.element_orders, return_counts=True)
    pi_e = tuple(int(v) for v in values)
    mu = tuple(m for m in pi_e if not any(n != m and n % m == 0 for n in pi_e))
    s = {int(v): int(c) for v, c in zip(values, counts)}
    pi = tuple(prime_divisors(g.order)) if g.order > 1 else ()
    return SpectrumInfo(pi_e=pi_e, mu=mu, s=s, pi=pi)


def center(g: Group) -> frozenset[int]:
    commutes = (g.table == g.table.T).all(axis=1)
    return frozenset(int(z) for z in np.nonzero(commutes)[0])


def cyclic_subgroup(g: Group, x: int) -> frozenset[int]:
    x = g._check_index(x)
    out = {0}
    y = x
    while y != 0:
        out.add(y)
        y = int(g.table[y, x])
    return frozenset(out)


def is_cyclic(g: Group) -> bool:
    return int(g.element_orders.max()) == g.order


def is_p_group(g: Group) -> bool:
    return is_prime_power(g.order)


def exponent(g: Group) -> int:
    out = 1
    for o in set(g.element_orders.tolist()):
        out = out * o // gcd(out, o)
    return out


def is_eppo(g: Group) -> bool:
    """Every non-identity element has prime-power order."""
    return all(is_prime_power(n) for n in spectrum(g).pi_e if n > 1)


def is_epo(g: Group) -> bool:
    """Every non-identity element has prime order."""
    return all(is_prime(n) for n in spectrum(g).pi_e if n > 1)


def count_order_p_subgroups(g: Group, p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if g.order % p:
        return 0
    return spectrum(g).s.get(p, 0) // (p - 1)


def phi_divides_counts(info: SpectrumInfo) -> bool:
    return all(info.s[n] % euler_phi(n) == 0 for n in info.pi_e)


def is_generalized_quaternion(g: Group) -> bool:
    """Match <x, y | x^(2m) = 1, y^2 = x^m, y^-1 x y = x^-1> with |G| = 4m, m >= 2."""
    n = g.order
    if n < 8 or n % 4:
        return False
    m = n // 4
    t, inv, orders = g.table, g.inverses, g.element_orders
    for x in np.flatnonzero(orders == 2 * m).tolist():
        xs = cyclic_subgroup(g, x)
        xm = g.power(x, m)
        x_inv = int(inv[x])
        for y in range(n):
            if y in xs:
                continue
            if t[y, y] == xm and t[t[inv[y], x], y] == x_inv:
                return True
    return False
