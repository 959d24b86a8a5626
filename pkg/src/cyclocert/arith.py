"""Exact integer number theory.

Primality, factorization, Euler phi, Moebius, CRT, generators of the unit
group (Z/nZ)*, and ascending streams of primes in an arithmetic progression.
All functions take and return plain Python ints.
"""

from __future__ import annotations

import functools
import itertools
import math
import random
from dataclasses import dataclass
from typing import Iterator, Sequence

from .errors import ContractError, RangeError

# Miller-Rabin with these bases is exact below 3.3e24, which covers 2^64.
_DETERMINISTIC_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
DETERMINISTIC_LIMIT = 1 << 64
PROBABILISTIC_ROUNDS = 64
MAX_PRIMALITY_BITS = 8192
MAX_FACTOR_BITS = 160
TRIAL_DIVISION_LIMIT = 10**6
SEGMENT_SIZE = 1 << 16

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97)


@dataclass(frozen=True, order=True)
class ResidueClass:
    """The class ``a mod n`` with ``0 <= a < n``."""

    a: int
    n: int

    def __post_init__(self):
        if self.n < 1:
            raise ContractError(f"modulus must be positive, got {self.n}")
        if not 0 <= self.a < self.n:
            raise ContractError(f"residue {self.a} not reduced modulo {self.n}")

    @classmethod
    def of(cls, a: int, n: int) -> ResidueClass:
        return cls(a % n, n)

    @property
    def invertible(self) -> bool:
        return math.gcd(self.a, self.n) == 1

    def require_invertible(self) -> ResidueClass:
        if not self.invertible:
            raise ContractError(f"{self} is not an invertible class")
        return self

    def contains(self, x: int) -> bool:
        return x % self.n == self.a

    def __str__(self):
        return f"{self.a} mod {self.n}"


@dataclass(frozen=True)
class FactoredInteger:
    value: int
    factors: tuple[tuple[int, int], ...]

    @property
    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def __iter__(self):
        return iter(self.factors)


def _check_int(n, what="n"):
    if not isinstance(n, int) or isinstance(n, bool):
        raise ContractError(f"{what} must be an integer, got {n!r}")


def _strong_probable_prime(n: int, a: int) -> bool:
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def primality(n: int) -> tuple[bool, bool]:
    """Return ``(is_prime, proven)``.

    ``proven`` is False only for inputs at or above 2^64 that pass
    the probabilistic fallback.
    """
    _check_int(n)
    if n < 0:
        raise ContractError("primality is defined for n >= 0")
    if n.bit_length() > MAX_PRIMALITY_BITS:
        raise RangeError(f"primality test limited to {MAX_PRIMALITY_BITS} bits")
    if n < 2:
        return False, True
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p, True
    if n < 97 * 97:
        return True, True
    if n < DETERMINISTIC_LIMIT:
        return all(_strong_probable_prime(n, a) for a in _DETERMINISTIC_BASES), True
    # Seeded by n so repeated runs agree.
    rng = random.Random(n)
    for _ in range(PROBABILISTIC_ROUNDS):
        if not _strong_probable_prime(n, rng.randrange(2, n - 1)):
            return False, True
    return True, False


def is_prime(n: int) -> bool:
    return primality(n)[0]


@functools.lru_cache(maxsize=64)
def small_primes(limit: int) -> tuple[int, ...]:
    """All primes ``<= limit`` by a plain sieve of Eratosthenes."""
    if limit < 2:
        return ()
    sieve = bytearray([1]) * (limit + 1)
    sieve[0] = sieve[1] = 0
    for p in range(2, math.isqrt(limit) + 1):
        if sieve[p]:
            sieve[p * p :: p] = bytes(len(range(p * p, limit + 1, p)))
    return tuple(itertools.compress(range(limit + 1), sieve))


def _brent(n: int, c: int, max_iter: int) -> int | None:
    """Pollard rho with Brent's cycle detection; a proper factor or None."""
    y, r, q, g = 2, 1, 1, 1
    m = 128
    x = ys = y
    spent = 0
    while g == 1:
        x = y
        for _ in range(r):
            y = (y * y + c) % n
        k = 0
        while k < r and g == 1:
            ys = y
            for _ in range(min(m, r - k)):
                y = (y * y + c) % n
                q = q * abs(x - y) % n
            g = math.gcd(q, n)
            k += m
        r *= 2
        spent += r
        if spent > max_iter:
            return None
    if g == n:
        # Backtrack one step at a time from the saved point.
        while True:
            ys = (ys * ys + c) % n
            g = math.gcd(abs(x - ys), n)
            if g > 1:
                break
    return g if g != n else None


def _split_large(n: int, out: list[int]):
    if is_prime(n):
        out.append(n)
        return
    r = math.isqrt(n)
    if r * r == n:
        _split_large(r, out)
        _split_large(r, out)
        return
    for c in range(1, 200):
        d = _brent(n, c, max_iter=1 << 26)
        if d is not None:
            _split_large(d, out)
            _split_large(n // d, out)
            return
    raise RangeError(f"could not factor {n} within the iteration budget")


def factorize(n: int) -> FactoredInteger:
    """Complete factorization: trial division to 10^6, then Brent's rho."""
    _check_int(n)
    if n < 1:
        raise ContractError(f"factorize expects n >= 1, got {n}")
    if n.bit_length() > MAX_FACTOR_BITS:
        raise RangeError(f"factorization limited to {MAX_FACTOR_BITS} bits")
    value = n
    found: dict[int, int] = {}
    for p in small_primes(TRIAL_DIVISION_LIMIT):
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            found[p] = e
    if n > 1:
        if n < TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT:
            found[n] = found.get(n, 0) + 1
        else:
            rest: list[int] = []
            _split_large(n, rest)
            for p in rest:
                found[p] = found.get(p, 0) + 1
    return FactoredInteger(value, tuple(sorted(found.items())))


def euler_phi(n: int) -> int:
    result = n
    for p, _ in factorize(n):
        result -= result // p
    return result


def moebius(n: int) -> int:
    factors = factorize(n).factors
    if any(e > 1 for _, e in factors):
        return 0
    return -1 if len(factors) % 2 else 1


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n):
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


def crt_combine(classes: Sequence[ResidueClass]) -> ResidueClass:
    """Combine classes with pairwise coprime moduli into one class."""
    moduli = [c.n for c in classes]
    for i, j in itertools.combinations(range(len(moduli)), 2):
        if math.gcd(moduli[i], moduli[j]) != 1:
            raise ContractError(f"moduli {moduli[i]} and {moduli[j]} are not coprime")
    a, m = 0, 1
    for c in classes:
        # a + m*t = c.a (mod c.n)
        t = (c.a - a) * pow(m, -1, c.n) % c.n if c.n > 1 else 0
        a, m = a + m * t, m * c.n
    return ResidueClass(a % m, m)


def multiplicative_order(g: int, n: int, group_order: int | None = None) -> int:
    if math.gcd(g, n) != 1:
        raise ContractError(f"{g} is not invertible mod {n}")
    order = euler_phi(n) if group_order is None else group_order
    for q, _ in factorize(order):
        while order % q == 0 and pow(g, order // q, n) == 1:
            order //= q
    return order


def _smallest_primitive_root(p: int, k: int) -> int:
    pk = p**k
    phi = pk - pk // p
    qs = factorize(phi).primes
    for g in range(2, pk):
        if g % p and all(pow(g, phi // q, pk) != 1 for q in qs):
            return g
    raise AssertionError(f"no primitive root modulo {p}^{k}")


def unit_group_generators(n: int) -> list[ResidueClass]:
    """A canonical generating set of (Z/nZ)*.

    One generator per odd prime power (its smallest primitive root); for
    the 2-part, ``3`` when 4 || n and ``3, 5`` when 8 | n. Each local
    generator is lifted to be 1 modulo the other prime-power parts.
    """
    _check_int(n)
    if n < 1:
        raise ContractError(f"n must be >= 1, got {n}")
    parts = [(p, e, p**e) for p, e in factorize(n)]
    local: list[tuple[int, int]] = []  # (generator, index of its part)
    for idx, (p, e, pe) in enumerate(parts):
        if p == 2:
            if e == 2:
                local.append((3, idx))
            elif e >= 3:
                local.extend([(3, idx), (5, idx)])
        else:
            local.append((_smallest_primitive_root(p, e), idx))
    gens = []
    for g, idx in local:
        pieces = [ResidueClass(g % pe if i == idx else 1 % pe, pe) for i, (_, _, pe) in enumerate(parts)]
        gens.append(crt_combine(pieces))
    return gens


def invertible_residues(n: int) -> list[int]:
    return [a for a in range(n) if math.gcd(a, n) == 1]


def primes_in_class(c: ResidueClass, bound: int) -> Iterator[int]:
    """Ascending primes ``p <= bound`` with ``p = c.a (mod c.n)``.

    Segmented sieve with segments of 2^16 integers.
    """
    if not c.invertible:
        raise ContractError(f"{c} is not an invertible class")
    if bound < 2:
        return
    base = small_primes(math.isqrt(bound))
    for lo in range(0, bound + 1, SEGMENT_SIZE):
        hi = min(lo + SEGMENT_SIZE, bound + 1)
        seg = bytearray([1]) * (hi - lo)
        for p in base:
            if p * p >= hi:
                break
            start = max(p * p, -(-lo // p) * p)
            seg[start - lo :: p] = bytes(len(range(start - lo, hi - lo, p)))
        if lo == 0:
            seg[0] = 0
            if hi > 1:
                seg[1] = 0
        first = lo + (c.a - lo) % c.n
        if first >= hi:
            continue
        yield from itertools.compress(range(first, hi, c.n), seg[first - lo :: c.n])


def primes_up_to(bound: int) -> Iterator[int]:
    return primes_in_class(ResidueClass(0, 1), bound)
