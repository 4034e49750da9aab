"""Groebner bases of two-sided ideals in free noncommutative algebras.

Thin wrapper over the C++ core. Polynomials travel as strings in the same
expression syntax the CLI uses, e.g. ``"x*y*x - x*y"``.
"""

from ._core import (
    RunOutput,
    groebner_basis,
    mersenne_reduce,
    normal_form,
    rref_mod_p,
    run_cli,
    verify_certificates,
)

__all__ = [
    "RunOutput",
    "groebner_basis",
    "mersenne_reduce",
    "normal_form",
    "rref_mod_p",
    "run_cli",
    "verify_certificates",
]
