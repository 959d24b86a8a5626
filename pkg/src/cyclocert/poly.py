"""Polynomials over Z and over prime fields F_p.

Coefficients are stored in ascending degree order with no trailing zeros;
the zero polynomial is the empty tuple and has degree ``None``.

The private list-based helpers (``_fp_*``) assume monic moduli and reduced
coefficients and do no validation; they are the hot path for root counting.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable

from .arith import is_prime
from .errors import ContractError


def _trim(c: list[int]) -> list[int]:
    while c and c[-1] == 0:
        c.pop()
    return c


@dataclass(frozen=True)
class IntPoly:
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        c = list(self.coeffs)
        for x in c:
            if not isinstance(x, int) or isinstance(x, bool):
                raise ContractError(f"integer coefficients required, got {x!r}")
        object.__setattr__(self, "coeffs", tuple(_trim(c)))

    @classmethod
    def _raw(cls, coeffs: list[int]) -> IntPoly:
        """Construct from trusted int coefficients, skipping validation."""
        obj = object.__new__(cls)
        object.__setattr__(obj, "coeffs", tuple(_trim(coeffs)))
        return obj

    @classmethod
    def binomial(cls, d: int, c: int = -1) -> IntPoly:
        """``X^d + c``."""
        coeffs = [0] * (d + 1)
        coeffs[d] = 1
        coeffs[0] += c
        return cls(tuple(coeffs))

    @classmethod
    def parse(cls, text: str) -> IntPoly:
        return parse_poly(text)

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return self.leading == 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def eval_mod(self, x: int, m: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % m
        return acc

    def __add__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, x in enumerate(b):
            out[i] += x
        return IntPoly(tuple(out))

    def __neg__(self) -> IntPoly:
        return IntPoly(tuple(-x for x in self.coeffs))

    def __sub__(self, other: IntPoly) -> IntPoly:
        return self + (-other)

    def __mul__(self, other: IntPoly) -> IntPoly:
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPoly()
        out = [0] * (len(a) + len(b) - 1)
        # Iterate over the sparser side's nonzero terms.
        if sum(1 for x in a if x) > sum(1 for x in b if x):
            a, b = b, a
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPoly(tuple(out))

    def derivative(self) -> IntPoly:
        return IntPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def substitute_power(self, k: int) -> IntPoly:
        """``f(X^k)``."""
        if k == 1 or not self.coeffs:
            return self
        out = [0] * (k * (len(self.coeffs) - 1) + 1)
        out[::k] = self.coeffs
        return IntPoly(tuple(out))

    def substitute_neg(self) -> IntPoly:
        """``f(-X)``."""
        return IntPoly(tuple(-c if i % 2 else c for i, c in enumerate(self.coeffs)))

    def __str__(self):
        return format_poly(self)


def divide_exact(num: IntPoly, den: IntPoly) -> IntPoly:
    """Quotient of ``num`` by a monic ``den`` that divides it exactly."""
    if den.is_zero() or not den.is_monic():
        raise ContractError("divide_exact needs a nonzero monic divisor")
    m = den.degree
    rem = list(num.coeffs)
    if len(rem) <= m:
        if rem:
            raise ContractError(f"inexact division: remainder {IntPoly(tuple(rem))}")
        return IntPoly()
    terms = [(j, c) for j, c in enumerate(den.coeffs[:-1]) if c]
    q = [0] * (len(rem) - m)
    for i in range(len(q) - 1, -1, -1):
        c = rem[i + m]
        if c:
            q[i] = c
            for j, d in terms:
                rem[i + j] -= c * d
    remainder = _trim(rem[:m])
    if remainder:
        raise ContractError(f"inexact division: remainder {IntPoly(tuple(remainder))}")
    return IntPoly(tuple(q))


def multiply_by_binomial(f: IntPoly, d: int) -> IntPoly:
    """``f * (X^d - 1)``."""
    a = list(f.coeffs)
    if not a:
        return f
    lo = [-x for x in a] + [0] * d
    hi = [0] * d + a
    return IntPoly._raw(list(map(int.__add__, lo, hi)))


# ---------------------------------------------------------------- F_p[X]


@dataclass(frozen=True)
class FpPoly:
    p: int
    coeffs: tuple[int, ...] = ()

    def __post_init__(self):
        if not is_prime(self.p):
            raise ContractError(f"modulus {self.p} is not prime")
        for x in self.coeffs:
            if not 0 <= x < self.p:
                raise ContractError(f"coefficient {x} not reduced modulo {self.p}")
        object.__setattr__(self, "coeffs", tuple(_trim(list(self.coeffs))))

    @classmethod
    def from_ints(cls, p: int, coeffs: Iterable[int]) -> FpPoly:
        return cls(p, tuple(c % p for c in coeffs))

    @property
    def degree(self) -> int | None:
        return len(self.coeffs) - 1 if self.coeffs else None

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def __str__(self):
        return f"{format_poly(IntPoly(self.coeffs))} over F_{self.p}"


def _fp_monic(c: list[int], p: int) -> list[int]:
    if not c or c[-1] == 1:
        return c
    inv = pow(c[-1], -1, p)
    return [x * inv % p for x in c]


def _fp_sub(a: list[int], b: list[int], p: int) -> list[int]:
    if len(a) < len(b):
        a = a + [0] * (len(b) - len(a))
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] - x) % p
    return _trim(out)


def _fp_rem(a: list[int], f: list[int], p: int) -> list[int]:
    """``a mod f`` for monic ``f``."""
    m = len(f) - 1
    r = list(a)
    if len(r) <= m:
        return _trim(r)
    low = f[:-1]
    for i in range(len(r) - 1, m - 1, -1):
        c = r[i] % p
        if c:
            base = i - m
            for j, d in enumerate(low):
                if d:
                    r[base + j] -= c * d
        r.pop()
    return _trim([x % p for x in r])


def _fp_divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    """Division by any nonzero ``b``."""
    inv = pow(b[-1], -1, p)
    m = len(b) - 1
    r = [x % p for x in a]
    if len(r) <= m:
        return [], _trim(r)
    q = [0] * (len(r) - m)
    for i in range(len(q) - 1, -1, -1):
        c = r[i + m] * inv % p
        q[i] = c
        if c:
            for j, d in enumerate(b):
                r[i + j] = (r[i + j] - c * d) % p
    return _trim(q), _trim(r[:m])


def _fp_mulmod(a: list[int], b: list[int], f: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _fp_rem(out, f, p)


def _fp_powmod(base: list[int], e: int, f: list[int], p: int) -> list[int]:
    result = _fp_rem([1], f, p)
    base = _fp_rem(base, f, p)
    for bit in bin(e)[2:]:
        result = _fp_mulmod(result, result, f, p)
        if bit == "1":
            result = _fp_mulmod(result, base, f, p)
    return result


def _fp_x_pow(e: int, f: list[int], p: int) -> list[int]:
    """``X^e mod f`` for monic ``f``; square-and-reduce fused in one loop."""
    d = len(f) - 1
    if d == 0:
        return []
    if d == 1:
        return _trim([pow(-f[0] % p, e, p)])
    # X^d = sum(neg[j] X^j) mod f
    neg = [-c % p for c in f[:-1]]
    rng = range(d)
    r = [1] + [0] * (d - 1)
    for bit in bin(e)[2:]:
        sq = [0] * (2 * d - 1)
        for i in rng:
            x = r[i]
            if x:
                sq[2 * i] += x * x
                x2 = 2 * x
                for j in range(i + 1, d):
                    sq[i + j] += x2 * r[j]
        for k in range(2 * d - 2, d - 1, -1):
            c = sq[k] % p
            if c:
                base = k - d
                for j in rng:
                    sq[base + j] += c * neg[j]
        r = [x % p for x in sq[:d]]
        if bit == "1":
            top = r[-1]
            r = [0] + r[:-1]
            if top:
                r = [(x + top * y) % p for x, y in zip(r, neg)]
    return _trim(r)


def _fp_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_monic(_trim(list(a)), p), _fp_monic(_trim(list(b)), p)
    while b:
        a, b = b, _fp_monic(_fp_divmod(a, b, p)[1], p)
    return a


def _fp_derivative(a: list[int], p: int) -> list[int]:
    return _trim([i * c % p for i, c in enumerate(a)][1:])


def reduce_mod_p(f: IntPoly, p: int) -> FpPoly:
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    return FpPoly(p, tuple(c % p for c in f.coeffs))


def fp_gcd(g: FpPoly, h: FpPoly) -> FpPoly:
    """Monic gcd by Euclid's algorithm with monic normalization."""
    if g.p != h.p:
        raise ContractError(f"modulus mismatch: {g.p} vs {h.p}")
    if g.is_zero() and h.is_zero():
        raise ContractError("gcd(0, 0) is undefined")
    return FpPoly(g.p, tuple(_fp_gcd(list(g.coeffs), list(h.coeffs), g.p)))


def fp_divmod(a: FpPoly, b: FpPoly) -> tuple[FpPoly, FpPoly]:
    if a.p != b.p:
        raise ContractError(f"modulus mismatch: {a.p} vs {b.p}")
    if b.is_zero():
        raise ContractError("division by the zero polynomial")
    q, r = _fp_divmod(list(a.coeffs), list(b.coeffs), a.p)
    return FpPoly(a.p, tuple(q)), FpPoly(a.p, tuple(r))


def frobenius_x_pow(f: FpPoly) -> FpPoly:
    """``X^p mod f`` by square-and-multiply."""
    if not f.is_monic() or f.degree < 1:
        raise ContractError("frobenius_x_pow needs a monic polynomial of degree >= 1")
    return FpPoly(f.p, tuple(_fp_x_pow(f.p, list(f.coeffs), f.p)))


def _reduced_nonzero(f: IntPoly, p: int) -> list[int]:
    c = _trim([x % p for x in f.coeffs])
    if not c:
        raise ContractError(f"polynomial vanishes identically modulo {p}")
    return c


def _root_product(fm: list[int], p: int) -> list[int]:
    """``gcd(X^p - X, fm)`` for monic ``fm`` of degree >= 1."""
    h = _fp_sub(_fp_x_pow(p, fm, p), [0, 1], p)
    return _fp_gcd(fm, h, p)


def count_roots_mod_p(f: IntPoly, p: int) -> int:
    """Number of distinct roots of ``f mod p`` in F_p, as ``deg gcd(X^p - X, f)``."""
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    c = _fp_monic(_reduced_nonzero(f, p), p)
    if len(c) == 1:
        return 0
    return len(_root_product(c, p)) - 1


def is_squarefree_mod_p(f: IntPoly, p: int) -> bool:
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    if f.is_zero() or f.leading % p == 0:
        raise ContractError(f"{p} divides the leading coefficient; degree drops")
    c = _fp_monic([x % p for x in f.coeffs], p)
    return _fp_squarefree(c, p)


def _fp_squarefree(c: list[int], p: int) -> bool:
    d = _fp_derivative(c, p)
    if not d:
        return len(c) == 1
    return len(_fp_gcd(c, d, p)) == 1


def _fp_split_roots(g: list[int], p: int) -> list[int]:
    """Roots of a monic squarefree ``g`` that splits into linear factors."""
    if len(g) == 1:
        return []
    if len(g) == 2:
        return [-g[0] % p]
    e = (p - 1) // 2
    for delta in range(p):
        h = _fp_sub(_fp_powmod([delta, 1], e, g, p), [1], p)
        d = _fp_gcd(g, h, p) if h else g
        if 1 < len(d) < len(g):
            other = _fp_divmod(g, d, p)[0]
            return _fp_split_roots(d, p) + _fp_split_roots(other, p)
    raise AssertionError("root splitting failed")


def roots_mod_p(f: IntPoly, p: int) -> list[int]:
    """Sorted distinct roots of ``f mod p`` in [0, p)."""
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    c = _fp_monic(_reduced_nonzero(f, p), p)
    if len(c) == 1:
        return []
    if p < 64:
        return [x for x in range(p) if FpPoly(p, tuple(c))(x) == 0]
    return sorted(_fp_split_roots(_root_product(c, p), p))


def fp_degree_pattern(f: IntPoly, p: int) -> list[int] | None:
    """Degrees of the irreducible factors of ``f mod p`` by distinct-degree splitting.

    Returns None unless ``f mod p`` keeps its degree and is squarefree.
    """
    if f.leading % p == 0:
        return None
    c = _fp_monic([x % p for x in f.coeffs], p)
    if not _fp_squarefree(c, p):
        return None
    degrees: list[int] = []
    h = [0, 1]
    i = 0
    while len(c) - 1 >= 2 * (i + 1):
        i += 1
        h = _fp_powmod(h, p, c, p)
        g = _fp_gcd(c, _fp_sub(h, [0, 1], p), p)
        if len(g) > 1:
            degrees.extend([i] * ((len(g) - 1) // i))
            c = _fp_divmod(c, g, p)[0]
            h = _fp_rem(h, c, p)
    if len(c) > 1:
        degrees.append(len(c) - 1)
    return sorted(degrees)


# ---------------------------------------------------------------- exact helpers


def _bareiss_det(mat: list[list[int]]) -> int:
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for r in range(k + 1, n):
                if m[r][k]:
                    m[k], m[r] = m[r], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def resultant(f: IntPoly, g: IntPoly) -> int:
    """Resultant as the determinant of the Sylvester matrix."""
    if f.is_zero() or g.is_zero():
        return 0
    m, n = f.degree, g.degree
    if m == 0 and n == 0:
        return 1
    size = m + n
    rows = []
    fc, gc = list(reversed(f.coeffs)), list(reversed(g.coeffs))
    for i in range(n):
        rows.append([0] * i + fc + [0] * (size - m - 1 - i))
    for i in range(m):
        rows.append([0] * i + gc + [0] * (size - n - 1 - i))
    return _bareiss_det(rows)


def discriminant(f: IntPoly) -> int:
    """Discriminant of a polynomial of degree >= 1."""
    d = f.degree
    if d is None or d < 1:
        raise ContractError("discriminant needs degree >= 1")
    if d == 1:
        return 1
    r = resultant(f, f.derivative())
    sign = -1 if (d * (d - 1) // 2) % 2 else 1
    q, rem = divmod(sign * r, f.leading)
    assert rem == 0
    return q


# ---------------------------------------------------------------- text form

_TERM = re.compile(
    r"""\s*([+-])?\s*
        (?:(\d+)\s*(?:\*\s*)?)?
        (?:([xX])(?:\s*(?:\^|\*\*)\s*(\d+))?)?
        \s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> IntPoly:
    """Parse the ``c*x^k`` sum form; terms may come in any order."""
    if not isinstance(text, str) or not text.strip():
        raise ContractError("empty polynomial text")
    coeffs: dict[int, int] = {}
    pos, first = 0, True
    s = text.strip()
    while pos < len(s):
        m = _TERM.match(s, pos)
        sign, num, var, exp = m.groups()
        if m.end() == pos or (num is None and var is None):
            raise ContractError(f"cannot parse polynomial near {s[pos:]!r}")
        if sign is None and not first:
            raise ContractError(f"missing operator before {s[pos:]!r}")
        if exp is not None and var is None:
            raise ContractError(f"exponent without variable in {text!r}")
        c = int(num) if num is not None else 1
        k = (int(exp) if exp is not None else 1) if var else 0
        if sign == "-":
            c = -c
        coeffs[k] = coeffs.get(k, 0) + c
        pos, first = m.end(), False
    top = max(coeffs)
    return IntPoly(tuple(coeffs.get(i, 0) for i in range(top + 1)))


def format_poly(f: IntPoly) -> str:
    """Canonical text: descending powers, zero terms and unit coefficients omitted."""
    if f.is_zero():
        return "0"
    parts = []
    for k in range(len(f.coeffs) - 1, -1, -1):
        c = f.coeffs[k]
        if not c:
            continue
        mag = abs(c)
        if k == 0:
            body = str(mag)
        else:
            var = "x" if k == 1 else f"x^{k}"
            body = var if mag == 1 else f"{mag}*{var}"
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)
