"""Bounded residue-class scans of semi-split primes.

If K contains a nontrivial abelian (equivalently, solvable) subextension of
Q, some invertible class ``a mod n`` holds no semi-split prime at all. These
scans count accepted witness primes per class up to a bound and report the
classes that come out empty. An empty class at a finite bound is evidence,
not proof, in either direction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .arith import invertible_residues, primes_up_to
from .certifier import NumberFieldSpec, semi_split_root_count
from .errors import ContractError

DISCLAIMER = (
    "Counts are exact for primes up to the bound only. An empty class is consistent "
    "with an abelian subfield but does not prove one; no empty class does not rule one out."
)

# Modes for reading an obstruction report.
SUBFIELD_MODE = "subfield"
RADICALS_MODE = "radicals"


@dataclass(frozen=True)
class ClassCensus:
    n: int
    bound: int
    counts: dict[int, int]
    empty_classes: tuple[int, ...]


@dataclass(frozen=True)
class ObstructionReport:
    field: NumberFieldSpec
    bound: int
    scanned_moduli: tuple[int, ...]
    findings: tuple[tuple[int, tuple[int, ...]], ...]
    density: Fraction
    mode: str
    accepted_count: int = 0
    prime_count: int = 0
    disclaimer: str = DISCLAIMER


class AcceptedPrimes:
    """Accepted witness primes up to a bound, with their root counts."""

    def __init__(self, field: NumberFieldSpec, bound: int):
        self.field = field
        self.bound = bound
        self.total = 0
        self.primes: list[int] = []
        self.root_counts: list[int] = []
        for p in primes_up_to(bound):
            self.total += 1
            k = semi_split_root_count(field, p)
            if k:
                self.primes.append(p)
                self.root_counts.append(k)

    def census(self, n: int) -> ClassCensus:
        counts = dict.fromkeys(invertible_residues(n), 0)
        for p in self.primes:
            r = p % n
            if r in counts:
                counts[r] += 1
        empty = tuple(a for a, k in counts.items() if k == 0)
        return ClassCensus(n, self.bound, counts, empty)

    def density(self) -> Fraction:
        if self.total == 0:
            raise ContractError("no primes up to the bound")
        return Fraction(len(self.primes), self.total)

    def galois_excluded(self) -> bool:
        """True if some accepted prime has a root but does not split completely,
        which cannot happen when K/Q is Galois."""
        deg = self.field.degree
        return any(k < deg for k in self.root_counts)


def class_census(field: NumberFieldSpec, n: int, bound: int) -> ClassCensus:
    if n < 1:
        raise ContractError(f"n must be positive, got {n}")
    return AcceptedPrimes(field, bound).census(n)


def semi_split_density(field: NumberFieldSpec, bound: int) -> Fraction:
    """Exact fraction of primes ``<= bound`` accepted as witnesses."""
    if bound < 2:
        raise ContractError("bound must be at least 2")
    return AcceptedPrimes(field, bound).density()


def obstruction_report(
    field: NumberFieldSpec,
    max_n: int,
    bound: int,
    progress: Callable[[str], None] | None = None,
) -> ObstructionReport:
    """Census every modulus ``3 <= n <= max_n`` and collect the empty classes.

    ``mode`` is ``"radicals"`` unless the scan itself proves K is not Galois
    over Q, in which case it is ``"subfield"``: the findings then speak about
    abelian subfields of K, not about solvability of f by radicals.
    """
    if max_n < 3:
        raise ContractError("max_n must be at least 3")
    accepted = AcceptedPrimes(field, bound)
    findings = []
    for n in range(3, max_n + 1):
        census = accepted.census(n)
        if progress:
            progress(f"n = {n}: {len(census.empty_classes)} empty of {len(census.counts)}")
        if census.empty_classes:
            findings.append((n, census.empty_classes))
    mode = SUBFIELD_MODE if accepted.galois_excluded() else RADICALS_MODE
    return ObstructionReport(
        field,
        bound,
        tuple(range(3, max_n + 1)),
        tuple(findings),
        accepted.density(),
        mode,
        len(accepted.primes),
        accepted.total,
    )


def report_to_dict(report: ObstructionReport) -> dict:
    return {
        "field_poly": str(report.field.f),
        "bound": report.bound,
        "density": {"num": report.accepted_count, "den": report.prime_count},
        "findings": [{"n": n, "empty_classes": list(empty)} for n, empty in report.findings],
        "scanned_moduli": list(report.scanned_moduli),
        "mode": report.mode,
        "disclaimer": report.disclaimer,
        "version": 1,
    }

