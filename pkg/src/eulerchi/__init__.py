"""Euler characteristics and the point-count polynomial F(V) of algebraic sets.

The engine projects V onto a coordinate subspace in general position, views
it as a branched cover of degree g and recurses on the branch locus:
F(V) = g L^d - g F(V(K)) + F(V(I + K)).  Everything sits on a small exact
Groebner basis kernel over Q and F_p.
"""

from .arrangements import Arrangement, arrangement_motive_identity, characteristic_polynomial
from .engine import (MotivePoly, ProjectionConfig, VarietyReport, euler_characteristic, motive,
                     projective_euler, projective_motive, report)
from .fields import QQ, PrimeField, build_extension
from .groebner import Ideal, degree, dimension, eliminate, hilbert_polynomial
from .multipoly import GREVLEX, LEX, Poly, PolyRing
from .parsing import parse_system

__version__ = "0.1.0"

__all__ = [
    "Arrangement", "arrangement_motive_identity", "characteristic_polynomial", "MotivePoly",
    "ProjectionConfig", "VarietyReport", "euler_characteristic", "motive", "projective_euler",
    "projective_motive", "report", "QQ", "PrimeField", "build_extension", "Ideal", "degree",
    "dimension", "eliminate", "hilbert_polynomial", "GREVLEX", "LEX", "Poly", "PolyRing",
    "parse_system",
]
