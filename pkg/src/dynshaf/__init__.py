"""Good reduction, S-unit candidate sets and triple classification for morphisms of P^N over Q."""

from .arith import PrimeSet, factor_integer, is_prime, is_s_unit, valuation
from .census import CensusResult, census
from .harness import (
    MembershipReport,
    Triple,
    build_fc,
    check_membership,
    classify_orbits,
    conjugate_triple,
    orbit_key,
    pythagorean_points,
)
from .hypersurface import (
    HomogeneousForm,
    MonomialBasis,
    contained_in_degree,
    min_containing_degree,
    random_generic_set,
)
from .morphism import (
    Morphism,
    NoSuchMap,
    NotAMorphism,
    equalizer_forms,
    evaluate,
    good_reduction_primes,
    interpolate,
    macaulay_resultant,
    uniqueness_certificate,
)
from .pgl import ProjLinearMap, frame_map, is_in_pl_os, orbit_equivalent
from .projective import (
    PointSet,
    ProjPoint,
    bad_primes_pointset,
    in_general_position,
    s_normalize,
    standard_frame,
)
from .sunit import enumerate_pi, pi_zero, solve_unit_equation, symmetry_closure_check

__version__ = "0.1.0"

__all__ = [
    "CensusResult",
    "HomogeneousForm",
    "MembershipReport",
    "MonomialBasis",
    "Morphism",
    "NoSuchMap",
    "NotAMorphism",
    "PointSet",
    "PrimeSet",
    "ProjLinearMap",
    "ProjPoint",
    "Triple",
    "bad_primes_pointset",
    "build_fc",
    "census",
    "check_membership",
    "classify_orbits",
    "conjugate_triple",
    "contained_in_degree",
    "enumerate_pi",
    "equalizer_forms",
    "evaluate",
    "factor_integer",
    "frame_map",
    "good_reduction_primes",
    "in_general_position",
    "interpolate",
    "is_in_pl_os",
    "is_prime",
    "is_s_unit",
    "macaulay_resultant",
    "min_containing_degree",
    "orbit_equivalent",
    "orbit_key",
    "pi_zero",
    "pythagorean_points",
    "random_generic_set",
    "s_normalize",
    "solve_unit_equation",
    "standard_frame",
    "symmetry_closure_check",
    "uniqueness_certificate",
    "valuation",
]
