"""subatomica: exact divisibility, atoms, factorizations and
constructive subatomicity witnesses in additive monoids of rationals
and multiplicative monoids of semidomains."""

from . import exact, monoids, parser, poly, semidomains, witness
from .errors import SubatomicaError
from .witness import (SearchBudget, SubatomicWitness, almost_atomic_witness,
                      brute_force_oracle, furstenberg_witness,
                      quasi_atomic_witness, ufm_check_small, verify_witness)

__version__ = "0.1.0"

__all__ = [
    "exact", "monoids", "parser", "poly", "semidomains", "witness",
    "SubatomicaError", "SearchBudget", "SubatomicWitness",
    "furstenberg_witness", "almost_atomic_witness", "quasi_atomic_witness",
    "ufm_check_small", "brute_force_oracle", "verify_witness",
]
