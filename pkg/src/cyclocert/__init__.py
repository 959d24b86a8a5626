"""Irreducibility certificates for cyclotomic polynomials over number fields."""

__version__ = "0.1.0"

from .arith import ResidueClass, factorize, is_prime, primes_in_class, unit_group_generators
from .certifier import (
    CertificationFailure,
    IrreducibilityCertificate,
    NumberFieldSpec,
    SemiSplitWitness,
    certify,
    check_witness,
    find_witness,
    verify_certificate,
)
from .cyclotomic import cyclotomic_poly
from .poly import FpPoly, IntPoly, parse_poly
from .quadratic import QuadFieldSpec, conductor_oracle, quad_character
from .solvability import class_census, obstruction_report, semi_split_density
