"""Exact arithmetic for the combinatorics of toroidal compactifications of Hilbert modular varieties.

Quadratic fields, fractional ideals, unit-invariant fans, cusp data,
q-expansion and Jacobi coefficient laws, Hodge-Tate weight multisets and
Voronoi-Delaunay cones, all over the rationals with no floating point.
"""
from .cones import Cone
from .cusps import CuspData, Matrix2, derive_cusp_data
from .errors import (BoundExceeded, MembershipError, NotCovered, SchemaMismatch, ToroidalError,
                     UnsupportedDegree)
from .fans import Fan, build_unit_invariant_fan
from .field import FieldElement, QuadraticField, fundamental_unit
from .ideals import FractionalIdeal, ideal
from .pipeline import RunConfig, run_pipeline
from .weights import AlgebraicWeight, HalfIntegralWeight

__version__ = "0.1.0"
