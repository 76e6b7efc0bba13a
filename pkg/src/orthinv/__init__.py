"""Mod-2 indecomposable orthogonal vector invariants.

Builds the g, h, f families of multilinear O(n)/SO(n) invariants in
characteristic 2 together with their integer lifts, and checks their
properties exactly (coefficient formulas, invariance, multiplicities,
indecomposability certificates).
"""

__version__ = "0.1.0"

from .constructions import FamilySpec, construct, construct_combinatorial
from .polynomial import Polynomial, parse, serialize
from .quadratic import QuadraticSpace
from .ring import GF2, ZZ

__all__ = [
    "FamilySpec",
    "GF2",
    "Polynomial",
    "QuadraticSpace",
    "ZZ",
    "construct",
    "construct_combinatorial",
    "parse",
    "serialize",
]
