"""Irreducibility certificates for cyclotomic polynomials over K = Q(alpha).

A prime ``p`` is accepted as a witness for ``K`` when ``f mod p`` is
squarefree and has a root in F_p. Squarefreeness forces ``p`` to avoid the
discriminant of ``f``, hence the index of Z[alpha], so the root gives a prime
of K above ``p`` with residue degree one. Ramified primes are never accepted.

If every class in a generating set of (Z/nZ)* contains an accepted prime,
Phi_n is irreducible over K. ``certify`` finds such primes (smallest first)
and ``verify_certificate`` re-checks a certificate without using the search.
"""

from __future__ import annotations

import functools
import json
import math
import threading
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .arith import (
    DETERMINISTIC_LIMIT,
    ResidueClass,
    invertible_residues,
    is_prime,
    primes_in_class,
    primes_up_to,
    small_primes,
    unit_group_generators,
)
from .errors import ContractError
from .poly import (
    IntPoly,
    _root_product,
    count_roots_mod_p,
    discriminant,
    fp_degree_pattern,
    is_squarefree_mod_p,
    parse_poly,
    roots_mod_p,
)

DEFAULT_BOUND = 10**6
FORMAT_VERSION = 1
MAX_CLOSURE_ORDER = 10**6

UNCONFIRMED_IRREDUCIBILITY = (
    "field polynomial not confirmed irreducible over Q by mod-p degree patterns; "
    "the certificate assumes it is the minimal polynomial of alpha"
)
PROBABILISTIC_PRIME = "a witness prime exceeds 2^64; its primality is probabilistic"


class CertificateFormatError(ContractError):
    """A serialized certificate could not be decoded."""


@dataclass(frozen=True)
class NumberFieldSpec:
    """K = Q(alpha), with ``f`` the monic minimal polynomial of alpha."""

    f: IntPoly
    label: str | None = None

    def __post_init__(self):
        if self.f.degree is None or self.f.degree < 1:
            raise ContractError("field polynomial must have degree >= 1")
        if not self.f.is_monic():
            raise ContractError(f"field polynomial {self.f} is not monic")
        if discriminant(self.f) == 0:
            raise ContractError(f"field polynomial {self.f} has a repeated factor")

    @classmethod
    def parse(cls, text: str, label: str | None = None) -> NumberFieldSpec:
        return cls(parse_poly(text), label)

    @property
    def degree(self) -> int:
        return self.f.degree

    @functools.cached_property
    def discriminant(self) -> int:
        return discriminant(self.f)

    def __str__(self):
        return self.label or f"Q[x]/({self.f})"


@dataclass(frozen=True)
class SemiSplitWitness:
    p: int
    root: int
    residue_class: ResidueClass


@dataclass(frozen=True)
class IrreducibilityCertificate:
    field: NumberFieldSpec
    n: int
    generators: tuple[ResidueClass, ...]
    witnesses: tuple[SemiSplitWitness, ...]
    search_bound: int
    warnings: tuple[str, ...] = ()
    version: int = FORMAT_VERSION

    @property
    def irreducibility_confirmed(self) -> bool:
        return UNCONFIRMED_IRREDUCIBILITY not in self.warnings


@dataclass(frozen=True)
class CertificationFailure:
    """No certificate within the bound. This is not a proof of reducibility.

    ``missing_generators`` are the generator classes the search exhausted;
    ``missing_classes`` are all invertible classes mod n holding no accepted
    prime up to the bound.
    """

    field: NumberFieldSpec
    n: int
    missing_generators: tuple[ResidueClass, ...]
    missing_classes: tuple[ResidueClass, ...]
    search_bound: int


class _AcceptanceTable:
    """Per-field memo of witness decisions, one byte per integer up to a limit.

    0 = not yet decided, 1 = rejected, k + 1 = accepted with k roots.
    Concurrent writers may both compute an entry; they write the same value.
    """

    def __init__(self, f: IntPoly, disc: int):
        self.f = f
        self.disc = disc
        self.table = bytearray()
        self.lock = threading.Lock()

    def _grow(self, limit: int):
        with self.lock:
            if len(self.table) <= limit:
                self.table.extend(bytes(limit + 1 - len(self.table)))

    def root_count(self, p: int) -> int:
        if p < TABLE_LIMIT:
            if p >= len(self.table):
                self._grow(max(p, 2 * len(self.table), 1 << 16))
            state = self.table[p]
            if state:
                return state - 1
            count = self._compute(p)
            self.table[p] = min(count, 254) + 1
            return count
        return self._compute(p)

    def _compute(self, p: int) -> int:
        if self.disc % p == 0:
            return 0
        c = [x % p for x in self.f.coeffs]
        if len(c) == 2:
            return 1
        return len(_root_product(c, p)) - 1


TABLE_LIMIT = 1 << 24
_tables: dict[IntPoly, _AcceptanceTable] = {}
_tables_lock = threading.Lock()


def _table(field: NumberFieldSpec) -> _AcceptanceTable:
    with _tables_lock:
        t = _tables.get(field.f)
        if t is None:
            if len(_tables) >= 64:
                _tables.pop(next(iter(_tables)))
            t = _tables[field.f] = _AcceptanceTable(field.f, field.discriminant)
        return t


def clear_caches() -> None:
    """Drop the per-field acceptance tables and irreducibility results."""
    with _tables_lock:
        _tables.clear()
    _irreducibility_confirmed.cache_clear()


def semi_split_root_count(field: NumberFieldSpec, p: int) -> int:
    """Number of roots of f mod p if ``p`` (assumed prime) is an acceptable
    witness prime, else 0. Squarefreeness is read off the discriminant."""
    return _table(field).root_count(p)


def accepts(field: NumberFieldSpec, p: int) -> bool:
    """Whether ``p`` (assumed prime) passes the semi-split witness test."""
    return semi_split_root_count(field, p) > 0


def check_witness(field: NumberFieldSpec, p: int) -> int | None:
    """Smallest root of f mod p if p is an acceptable witness prime."""
    if not is_prime(p):
        raise ContractError(f"{p} is not prime")
    if field.f.leading % p == 0:
        return None
    if not is_squarefree_mod_p(field.f, p) or count_roots_mod_p(field.f, p) == 0:
        return None
    return roots_mod_p(field.f, p)[0]


def find_witness(field: NumberFieldSpec, c: ResidueClass, bound: int) -> SemiSplitWitness | None:
    """The witness with the smallest accepted prime ``p <= bound`` in class ``c``."""
    table = _table(field)
    for p in primes_in_class(c, bound):
        if table.root_count(p):
            return SemiSplitWitness(p, roots_mod_p(field.f, p)[0], c)
    return None


def _subset_sums(degrees: list[int]) -> set[int]:
    sums = {0}
    for d in degrees:
        sums |= {s + d for s in sums}
    return sums


@functools.lru_cache(maxsize=256)
def _irreducibility_confirmed(f: IntPoly, extra_primes: tuple[int, ...] = ()) -> bool:
    """Sufficient test: factor-degree patterns mod several primes leave no room
    for a proper factor over Z."""
    deg = f.degree
    if deg == 1:
        return True
    possible = set(range(1, deg))
    used = 0
    for p in extra_primes + small_primes(3000):
        pattern = fp_degree_pattern(f, p)
        if pattern is None:
            continue
        possible &= _subset_sums(pattern)
        if not possible:
            return True
        used += 1
        if used >= 80:
            break
    return False


def _certificate_warnings(field: NumberFieldSpec, witnesses: Iterable[SemiSplitWitness]) -> tuple[str, ...]:
    witnesses = list(witnesses)
    warnings = []
    if not _irreducibility_confirmed(field.f, tuple(w.p for w in witnesses)):
        warnings.append(UNCONFIRMED_IRREDUCIBILITY)
    if any(w.p >= DETERMINISTIC_LIMIT for w in witnesses):
        warnings.append(PROBABILISTIC_PRIME)
    return tuple(warnings)


def _missing_classes(field: NumberFieldSpec, n: int, bound: int, found: Iterable[int]) -> list[ResidueClass]:
    pending = set(invertible_residues(n)) - set(found)
    table = _table(field)
    for p in primes_up_to(bound):
        if not pending:
            break
        r = p % n
        if r in pending and table.root_count(p):
            pending.discard(r)
    return [ResidueClass(a, n) for a in sorted(pending)]


def certify(
    field: NumberFieldSpec,
    n: int,
    bound: int = DEFAULT_BOUND,
    threads: int = 1,
    progress: Callable[[str], None] | None = None,
) -> IrreducibilityCertificate | CertificationFailure:
    """Certify that Phi_n is irreducible over ``field``, or report the classes
    where no witness prime was found up to ``bound``."""
    if not isinstance(n, int) or n < 1:
        raise ContractError(f"n must be a positive integer, got {n!r}")
    if bound < 1:
        raise ContractError(f"search bound must be positive, got {bound}")
    gens = tuple(unit_group_generators(n))
    search = functools.partial(find_witness, field, bound=bound)
    if threads > 1 and len(gens) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(search, gens))
    else:
        results = [search(g) for g in gens]
    if progress:
        for g, w in zip(gens, results):
            progress(f"class {g}: " + (f"p = {w.p}, root {w.root}" if w else f"no witness <= {bound}"))
    if all(results):
        return IrreducibilityCertificate(
            field, n, gens, tuple(results), bound, _certificate_warnings(field, results)
        )
    missing_gens = tuple(g for g, w in zip(gens, results) if w is None)
    found = [w.residue_class.a for w in results if w is not None]
    return CertificationFailure(field, n, missing_gens, tuple(_missing_classes(field, n, bound, found)), bound)


# ---------------------------------------------------------------- serialization


def certificate_to_dict(cert: IrreducibilityCertificate) -> dict:
    return {
        "field_poly": str(cert.field.f),
        "n": cert.n,
        "search_bound": cert.search_bound,
        "generators": [{"a": g.a, "n": g.n} for g in cert.generators],
        "witnesses": [{"p": w.p, "root": w.root, "class_a": w.residue_class.a} for w in cert.witnesses],
        "warnings": list(cert.warnings),
        "version": cert.version,
    }


def certificate_to_json(cert: IrreducibilityCertificate) -> str:
    return json.dumps(certificate_to_dict(cert), indent=2) + "\n"


def failure_to_dict(fail: CertificationFailure) -> dict:
    return {
        "status": "failure",
        "field_poly": str(fail.field.f),
        "n": fail.n,
        "search_bound": fail.search_bound,
        "missing_generators": [g.a for g in fail.missing_generators],
        "missing_classes": [c.a for c in fail.missing_classes],
        "version": FORMAT_VERSION,
    }


def _int_field(obj: dict, key: str) -> int:
    value = obj.get(key)
    if not isinstance(value, int) or isinstance(value, bool):
        raise CertificateFormatError(f"field {key!r} must be an integer")
    return value


def certificate_from_dict(doc: dict) -> IrreducibilityCertificate:
    if not isinstance(doc, dict):
        raise CertificateFormatError("certificate must be a JSON object")
    expected = {"field_poly", "n", "search_bound", "generators", "witnesses", "warnings", "version"}
    if set(doc) != expected:
        raise CertificateFormatError(f"certificate keys must be exactly {sorted(expected)}")
    try:
        field_ = NumberFieldSpec.parse(doc["field_poly"])
        n = _int_field(doc, "n")
        if n < 1:
            raise CertificateFormatError("n must be positive")
        gens = tuple(ResidueClass(_int_field(g, "a"), _int_field(g, "n")) for g in doc["generators"])
        witnesses = tuple(
            SemiSplitWitness(_int_field(w, "p"), _int_field(w, "root"), ResidueClass(_int_field(w, "class_a"), n))
            for w in doc["witnesses"]
        )
        warnings = doc["warnings"]
        if not isinstance(warnings, list) or not all(isinstance(s, str) for s in warnings):
            raise CertificateFormatError("warnings must be a list of strings")
        return IrreducibilityCertificate(
            field_, n, gens, witnesses, _int_field(doc, "search_bound"), tuple(warnings), _int_field(doc, "version")
        )
    except CertificateFormatError:
        raise
    except (ContractError, TypeError, AttributeError) as exc:
        raise CertificateFormatError(str(exc)) from exc


def certificate_from_json(text: str) -> IrreducibilityCertificate:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateFormatError(f"invalid JSON: {exc}") from exc
    return certificate_from_dict(doc)


# ---------------------------------------------------------------- verification


@dataclass
class Verification:
    ok: bool
    reasons: list[str] = field(default_factory=list)

    def __bool__(self):
        return self.ok


def _closure(gens: list[int], n: int) -> set[int]:
    seen = {1 % n}
    frontier = [1 % n]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = x * g % n
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return seen


def _has_root_mod(f: IntPoly, q: int) -> bool:
    if q <= 5000:
        return any(f.eval_mod(x, q) == 0 for x in range(q))
    return count_roots_mod_p(f, q) > 0


def verify_certificate(cert: IrreducibilityCertificate, strict: bool = True) -> Verification:
    """Re-check every hypothesis recorded in ``cert`` from scratch.

    Squarefreeness is checked by a gcd with the derivative (the search reads
    it off the discriminant) and roots by direct evaluation. With ``strict`` the certificate
    must also be canonical: canonical generators, the smallest accepted prime
    in each class, and the smallest root.
    """
    reasons: list[str] = []
    f, n = cert.field.f, cert.n
    if cert.version != FORMAT_VERSION:
        reasons.append(f"unsupported version {cert.version}")
    if n < 1:
        return Verification(False, reasons + ["n must be positive"])
    if len(cert.witnesses) != len(cert.generators):
        reasons.append("witness count does not match generator count")
    for g in cert.generators:
        if g.n != n:
            reasons.append(f"generator {g} has the wrong modulus")
        elif math.gcd(g.a, n) != 1:
            reasons.append(f"generator {g} is not invertible")
    units = {a for a in range(n) if math.gcd(a, n) == 1}
    if len(units) > MAX_CLOSURE_ORDER:
        reasons.append("unit group too large to check generation by enumeration")
    elif _closure([g.a for g in cert.generators], n) != units:
        reasons.append("generators do not generate")
    if strict and list(cert.generators) != unit_group_generators(n):
        reasons.append("generators are not the canonical set")

    for g, w in zip(cert.generators, cert.witnesses):
        tag = f"witness p={w.p}"
        if w.residue_class.a != g.a or w.residue_class.n != n:
            reasons.append(f"{tag}: class does not match generator {g}")
        if w.p < 2 or not is_prime(w.p):
            reasons.append(f"{tag}: not prime")
            continue
        if w.p % n != g.a % n:
            reasons.append(f"{tag}: not congruent to {g}")
        if n % w.p == 0:
            reasons.append(f"{tag}: divides n")
        if w.p > cert.search_bound:
            reasons.append(f"{tag}: exceeds the search bound")
        if not is_squarefree_mod_p(f, w.p):
            reasons.append(f"{tag}: f is not squarefree mod p")
        if not 0 <= w.root < w.p or f.eval_mod(w.root, w.p) != 0:
            reasons.append(f"{tag}: root check failed")
            continue
        if strict:
            if any(f.eval_mod(r, w.p) == 0 for r in range(w.root)):
                reasons.append(f"{tag}: root is not the smallest")
            for q in range(g.a, w.p, n):
                if is_prime(q) and is_squarefree_mod_p(f, q) and _has_root_mod(f, q):
                    reasons.append(f"{tag}: smaller witness {q} exists in {g}")
                    break
    if cert.search_bound < 1:
        reasons.append("search bound must be positive")
    return Verification(not reasons, reasons)
