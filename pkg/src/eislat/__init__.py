"""Exact arithmetic for Eisenstein lattices, their underlying integral lattices,
and bounded-search verifiers for a family of lattice and boundary claims."""
from __future__ import annotations

__version__ = "0.1.0"

from .eisenstein import EisensteinInt, EisensteinRational
from .elattice import ELattice, Mu3ZLattice, lambda_lattice
from .reports import WitnessReport
from .zlattice import ZLattice

__all__ = [
    "EisensteinInt",
    "EisensteinRational",
    "ELattice",
    "Mu3ZLattice",
    "WitnessReport",
    "ZLattice",
    "lambda_lattice",
    "__version__",
]
