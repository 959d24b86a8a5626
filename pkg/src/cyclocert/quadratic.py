"""Quadratic fields Q(sqrt m): Legendre/Jacobi symbols, the quadratic
character and its conductor, and a conductor-based irreducibility oracle.

The character of Q(sqrt m) is evaluated as the Kronecker symbol ``(D | a)``
of the field discriminant ``D`` (``m`` or ``4m``), which has period ``|D|``,
the conductor. The oracle uses only the conductor: Phi_n is irreducible over
Q(sqrt m) exactly when the conductor does not divide ``n``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .arith import ResidueClass, crt_combine, factorize, is_prime
from .errors import ContractError


class Verdict(str, enum.Enum):
    IRREDUCIBLE = "irreducible"
    REDUCIBLE = "reducible"


@dataclass(frozen=True)
class QuadFieldSpec:
    m: int

    def __post_init__(self):
        if self.m in (0, 1):
            raise ContractError("m must not be 0 or 1")
        if any(e > 1 for _, e in factorize(abs(self.m))):
            raise ContractError(f"m = {self.m} is not squarefree")

    @property
    def poly_text(self) -> str:
        """Text of the defining polynomial ``x^2 - m``."""
        return f"x^2 - {self.m}" if self.m > 0 else f"x^2 + {-self.m}"

    @property
    def discriminant(self) -> int:
        return self.m if self.m % 4 == 1 else 4 * self.m


@dataclass(frozen=True)
class QuadCharacter:
    m: int
    conductor: int


def legendre(a: int, p: int) -> int:
    if p == 2 or not is_prime(p):
        raise ContractError(f"legendre needs an odd prime, got {p}")
    return jacobi(a, p)


def jacobi(a: int, n: int) -> int:
    """Jacobi symbol ``(a | n)`` by binary reciprocity."""
    if n < 1 or n % 2 == 0:
        raise ContractError(f"jacobi needs an odd positive modulus, got {n}")
    a %= n
    result = 1
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def kronecker(d: int, a: int) -> int:
    """Kronecker symbol ``(d | a)`` for ``a >= 1``."""
    if a < 1:
        raise ContractError("kronecker is used here only for a >= 1")
    result = 1
    while a % 2 == 0:
        a //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    return result * jacobi(d, a)


def quad_character(spec: QuadFieldSpec) -> QuadCharacter:
    m = spec.m
    d = abs(m) if m % 4 == 1 else 4 * abs(m)
    return QuadCharacter(m, d)


def chi_value(chr: QuadCharacter, a: int) -> int:
    """Value of the character at ``a``; depends only on ``a mod conductor``."""
    d = chr.conductor
    r = a % d
    if math.gcd(r, d) != 1:
        return 0
    disc = chr.m if chr.m % 4 == 1 else 4 * chr.m
    return kronecker(disc, r)


def quad_semi_split(spec: QuadFieldSpec, p: int) -> bool:
    """Whether ``p`` is ramified or split in Q(sqrt m)."""
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    chr = quad_character(spec)
    if chr.conductor % p == 0:
        return True
    return chi_value(chr, p) == 1


def conductor_oracle(spec: QuadFieldSpec, n: int) -> Verdict:
    """Phi_n over Q(sqrt m) is reducible iff the conductor divides n."""
    if n < 1:
        raise ContractError(f"n must be positive, got {n}")
    return Verdict.REDUCIBLE if n % quad_character(spec).conductor == 0 else Verdict.IRREDUCIBLE


def prop3_field(p: int) -> QuadFieldSpec:
    """Q(sqrt p) for p = 3 mod 4, Q(sqrt -p) for p = 1 mod 4."""
    if p == 2 or not is_prime(p):
        raise ContractError(f"need an odd prime, got {p}")
    return QuadFieldSpec(p if p % 4 == 3 else -p)


def prop3_search_classes(p: int) -> list[tuple[ResidueClass, ResidueClass]]:
    """For each invertible ``a mod p``, the class mod ``4p`` whose primes are
    split in the field of ``prop3_field(p)``.

    Residues of p need ``q = 1 mod 4`` and non-residues ``q = 3 mod 4``; by
    reciprocity either sign of ``p`` then becomes a square mod ``q``.
    """
    prop3_field(p)
    out = []
    for a in range(1, p):
        mod4 = 1 if legendre(a, p) == 1 else 3
        out.append((ResidueClass(a, p), crt_combine([ResidueClass(mod4, 4), ResidueClass(a, p)])))
    return out
