"""One-orbit cyclic subspace codes over finite fields.

Build a field with :func:`build_field`, a representative subspace with one of
the family constructors, then compute :func:`weight_distribution` and compare
it with the closed forms in :mod:`orbitcodes.formulas`.
"""

from .constructions import ConstructionSpec, mixed_q2_code, polynomial_basis_code, rfws_mixed_code
from .errors import InvariantViolation, OrbitCodeError, ParameterError
from .gfext import Field, build_field, field_for_q
from .isometry import SemilinearMap, apply_map, frobenius_equivalent, orbit_image_check, predicted_image
from .orbit import (
    OrbitCode,
    RfwsVerdict,
    WeightDistribution,
    orbit_code,
    orbit_enumerate,
    rfws_index,
    stabilizer_degree,
    weight_distribution,
)
from .subspace import Subspace, intersect, scalar_mul, span_fq, span_subfield, subspace_distance, subspace_sum

__version__ = "0.1.0"

__all__ = [
    "ConstructionSpec",
    "Field",
    "InvariantViolation",
    "OrbitCode",
    "OrbitCodeError",
    "ParameterError",
    "RfwsVerdict",
    "SemilinearMap",
    "Subspace",
    "WeightDistribution",
    "apply_map",
    "build_field",
    "field_for_q",
    "frobenius_equivalent",
    "intersect",
    "mixed_q2_code",
    "orbit_code",
    "orbit_enumerate",
    "orbit_image_check",
    "polynomial_basis_code",
    "predicted_image",
    "rfws_index",
    "rfws_mixed_code",
    "scalar_mul",
    "span_fq",
    "span_subfield",
    "stabilizer_degree",
    "subspace_distance",
    "subspace_sum",
    "weight_distribution",
]
