"""Exact arithmetic in Z_p and its unit group U_p.

Everything here works on Python ints; no floating point is involved.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from itertools import product
from math import prod

from .errors import NotADivisorError, NotInvertibleError, NotPrimeError, PrimeTooLargeError

MAX_PRIME = 2**32

# Deterministic for every n < 3.3e24, which covers the 64-bit range.
_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin."""
    if n < 2:
        return False
    for q in _MR_WITNESSES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for w in _MR_WITNESSES:
        x = pow(w, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_prime(p: int) -> None:
    if not isinstance(p, int) or isinstance(p, bool):
        raise NotPrimeError(f"p must be an integer, got {p!r}")
    if p >= MAX_PRIME:
        raise PrimeTooLargeError(f"p={p} exceeds the supported bound 2**32")
    if not is_prime(p):
        raise NotPrimeError(f"p={p} is not prime")


def factorize(n: int) -> list[tuple[int, int]]:
    """Trial-division factorization of ``n >= 1`` as ascending (prime, exponent) pairs."""
    out = []
    q = 2
    while q * q <= n:
        if n % q == 0:
            e = 0
            while n % q == 0:
                n //= q
                e += 1
            out.append((q, e))
        q += 1 if q == 2 else 2
    if n > 1:
        out.append((n, 1))
    return out


def mod_inverse(m: int, p: int) -> int:
    """Return m_p with m_p * m = 1 (mod p)."""
    check_prime(p)
    if m % p == 0:
        raise NotInvertibleError(f"{m} = 0 mod {p} has no inverse")
    return pow(m, -1, p)


def multiplicative_order(x: int, p: int) -> int:
    """Order of ``x`` in U_p by walking its power orbit (O(p); for checks only)."""
    x %= p
    if x == 0:
        raise NotInvertibleError(f"0 has no multiplicative order mod {p}")
    k, y = 1, x
    while y != 1:
        y = y * x % p
        k += 1
    return k


@dataclass(frozen=True)
class PrimeContext:
    """A prime ``p`` with a fixed generator ``epsilon`` of U_p.

    ``factorization`` lists (q_i, alpha_i) with prod q_i**alpha_i = p - 1 and
    q_1 < q_2 < ... . For p = 2 the factorization is empty and epsilon = 1.
    """

    p: int
    epsilon: int
    factorization: tuple[tuple[int, int], ...]

    def __post_init__(self):
        check_prime(self.p)
        if prod(q**a for q, a in self.factorization) != self.p - 1:
            raise ValueError("factorization does not multiply back to p - 1")
        qs = [q for q, _ in self.factorization]
        if qs != sorted(set(qs)) or not all(is_prime(q) and a >= 1 for q, a in self.factorization):
            raise ValueError("factorization must list distinct primes in ascending order")
        if not is_generator(self.epsilon, self.p, self.factorization):
            raise ValueError(f"{self.epsilon} does not generate U_{self.p}")

    @property
    def order(self) -> int:
        """|U_p| = p - 1."""
        return self.p - 1

    def power(self, e: int) -> int:
        return pow(self.epsilon, e % self.order if self.order else 0, self.p)

    @cached_property
    def powers(self) -> tuple[int, ...]:
        """epsilon**j mod p for j = 0 .. p-2."""
        out, x = [], 1
        for _ in range(self.order):
            out.append(x)
            x = x * self.epsilon % self.p
        return tuple(out)

    @cached_property
    def log_table(self) -> dict[int, int]:
        """Discrete log lookup u -> j with epsilon**j = u; built from ``powers``."""
        return {u: j for j, u in enumerate(self.powers)}

    def inverse(self, m: int) -> int:
        return mod_inverse(m, self.p)


def is_generator(eps: int, p: int, factorization=None) -> bool:
    if p == 2:
        return eps % 2 == 1
    if eps % p == 0:
        return False
    if factorization is None:
        factorization = factorize(p - 1)
    return all(pow(eps, (p - 1) // q, p) != 1 for q, _ in factorization)


def find_generator(p: int) -> PrimeContext:
    """Smallest primitive root of ``p`` packaged with the factorization of p - 1."""
    check_prime(p)
    fac = tuple(factorize(p - 1))
    eps = 1
    while not is_generator(eps, p, fac):
        eps += 1
    return PrimeContext(p, eps, fac)


def divisors_of_group_order(ctx: PrimeContext) -> list[int]:
    """All divisors of p - 1, ascending, built from the prime factorization."""
    qs = [q for q, _ in ctx.factorization]
    ranges = [range(a + 1) for _, a in ctx.factorization]
    return sorted(prod(q**r for q, r in zip(qs, rs)) for rs in product(*ranges))


def exponent_vector(ctx: PrimeContext, d: int) -> tuple[int, ...]:
    """Exponents (r_1, ..., r_k) with d = prod q_i**r_i; ``d`` must divide p - 1."""
    if d < 1 or ctx.order % d:
        raise NotADivisorError(f"{d} does not divide {ctx.order}")
    rs = []
    for q, _ in ctx.factorization:
        r = 0
        while d % q == 0:
            d //= q
            r += 1
        rs.append(r)
    return tuple(rs)


@dataclass(frozen=True)
class Subgroup:
    """The unique subgroup of U_p of order ``order``, generated by epsilon**index.

    ``cosets[t]`` lists epsilon**(t + r*index) for r = 0 .. order-1 in that
    order, so ``cosets[0]`` is the subgroup itself in power order while
    ``elements`` is the same set sorted.
    """

    ctx: PrimeContext
    order: int
    index: int
    elements: tuple[int, ...]
    cosets: tuple[tuple[int, ...], ...] = field(repr=False)

    @property
    def generator(self) -> int:
        return self.ctx.power(self.index)

    def __contains__(self, m) -> bool:
        return m in self._element_set

    @cached_property
    def _element_set(self) -> frozenset[int]:
        return frozenset(self.elements)

    @cached_property
    def coset_of(self) -> dict[int, int]:
        """Map u in U_p to the index t of the coset containing it."""
        return {u: t for t, coset in enumerate(self.cosets) for u in coset}


def subgroup_of_order(ctx: PrimeContext, M: int) -> Subgroup:
    if M < 1 or ctx.order % M:
        raise NotADivisorError(f"order {M} does not divide p - 1 = {ctx.order}")
    a = ctx.order // M
    pw = ctx.powers
    cosets = tuple(tuple(pw[t + r * a] for r in range(M)) for t in range(a))
    return Subgroup(ctx=ctx, order=M, index=a, elements=tuple(sorted(cosets[0])), cosets=cosets)


def cyclic_subgroup(x: int, p: int) -> frozenset[int]:
    """<x> in U_p by brute-force orbit; an oracle independent of the generator."""
    out, y = {1}, x % p
    while y != 1:
        out.add(y)
        y = y * x % p
    return frozenset(out)
