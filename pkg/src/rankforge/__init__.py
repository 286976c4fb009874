"""Exact rank identities for matrices: generation, canonical forms, verification and certificates."""

from __future__ import annotations

from .fields import FieldSpec
from .identgen import RankIdentity, ShuffleSpec, check_lattice_condition, make_identity
from .poly import Poly, gcd, lcm, parse

__version__ = "0.1.0"

__all__ = [
    "FieldSpec",
    "Poly",
    "RankIdentity",
    "ShuffleSpec",
    "check_lattice_condition",
    "gcd",
    "lcm",
    "make_identity",
    "parse",
]
