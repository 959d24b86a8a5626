"""Exact cyclotomic polynomials.

``cyclotomic_poly(n)`` evaluates the Moebius product
``prod_{d | n} (X^d - 1)^mu(n/d)`` exactly. Two reductions keep it fast:

* non-squarefree ``n`` reuse the squarefree kernel ``r`` via
  ``Phi_n(X) = Phi_r(X^(n/r))``;
* for ``n > 1`` the product equals ``prod (1 - X^d)^mu(n/d)`` and the result
  is palindromic, so only the coefficients up to half the degree are
  computed, as a truncated power series, and the rest mirrored.

``cyclotomic_poly_direct`` is the literal product-then-divide evaluation,
kept as an independent route for cross-checks.
"""

from __future__ import annotations

import functools
from itertools import accumulate

from .arith import divisors, euler_phi, factorize, moebius
from .errors import ContractError, RangeError
from .poly import IntPoly, divide_exact, multiply_by_binomial

DEFAULT_CEILING = 100_000


def _radical(n: int) -> int:
    r = 1
    for p, _ in factorize(n):
        r *= p
    return r


def _mobius_split(n: int) -> tuple[list[int], list[int]]:
    plus, minus = [], []
    for d in divisors(n):
        mu = moebius(n // d)
        if mu == 1:
            plus.append(d)
        elif mu == -1:
            minus.append(d)
    return plus, minus


@functools.lru_cache(maxsize=1024)
def _squarefree_cyclotomic(n: int) -> IntPoly:
    if n == 1:
        return IntPoly((-1, 1))
    deg = euler_phi(n)
    half = deg // 2
    size = half + 1
    c = [1] + [0] * half
    plus, minus = _mobius_split(n)
    for d in plus:
        if d < size:
            # times (1 - X^d)
            c = c[:d] + list(map(int.__sub__, c[d:], c[:-d]))
    for d in minus:
        if d < size:
            # divided by (1 - X^d): running sums along each stride
            for r in range(d):
                c[r::d] = accumulate(c[r::d])
    return IntPoly._raw(c + c[: deg - half][::-1])


def cyclotomic_poly(n: int, ceiling: int = DEFAULT_CEILING) -> IntPoly:
    """The n-th cyclotomic polynomial, monic of degree phi(n)."""
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise ContractError(f"n must be a positive integer, got {n!r}")
    if n > ceiling:
        raise RangeError(f"n = {n} exceeds the cyclotomic ceiling {ceiling}")
    r = _radical(n)
    return _squarefree_cyclotomic(r).substitute_power(n // r)


def cyclotomic_poly_direct(n: int) -> IntPoly:
    """Multiply the ``X^d - 1`` with mu = +1, then divide out the mu = -1 ones."""
    if n < 1:
        raise ContractError(f"n must be positive, got {n}")
    plus, minus = _mobius_split(n)
    f = IntPoly((1,))
    for d in plus:
        f = multiply_by_binomial(f, d)
    for d in minus:
        f = divide_exact(f, IntPoly.binomial(d))
    return f


def clear_cache() -> None:
    """Forget memoized cyclotomic polynomials."""
    _squarefree_cyclotomic.cache_clear()
