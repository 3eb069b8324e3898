"""Exact multiplicity computations for m-primary monomial ideals (dim <= 4).

Every headline quantity is computed along at least two independent routes
and the routes are compared exactly — integer and rational arithmetic only,
no tolerances.  See README.md for the map of the library.
"""

from .errors import (
    DimensionMismatch,
    EmptyGenerators,
    GridInconsistent,
    IdentityViolation,
    IntegralityError,
    MlabError,
    NotMinimalPrime,
    NotPrimary,
    NotStabilized,
    ScaleLimit,
    SchemaError,
    UnboundedComplement,
    UnboundedFacet,
    UnitIdeal,
    WrongDimension,
    ZeroImage,
)
from .hilbert import (
    HilbertPolynomial,
    LengthSequence,
    MixedMultiplicityTable,
    MultiplicityResult,
    check_mixed_expansion,
    check_multilinearity,
    hs_sequence,
    mixed_multiplicities,
    multiplicity,
    multiplicity_fit,
    multiplicity_polyhedral,
    multiplicity_quotient,
    product_multiplicity,
)
from .monomials import (
    CoordinatePrime,
    MonomialIdeal,
    QuotientRingSpec,
    colength,
    ideal,
    ideal_sum,
    is_m_primary,
    local_length_at,
    maximal_ideal,
    minimal_primes,
    minimalize,
    power,
    product,
    restrict_to_prime,
    unit_ideal,
)
from .newton import (
    Facet,
    NewtonPolyhedron,
    build_polyhedron,
    covolume,
    facet_lattice_volume,
    integral_closure_power,
    mixed_covolume,
    polyhedra_equal,
)
from .rees import (
    DegreeFunctionReport,
    ReesSystem,
    ReesValuation,
    ValuativeReport,
    degree_function,
    rees_coefficients,
    rees_valuations,
    verify_valuative_representation,
)
from .suite import (
    SuiteConfig,
    SuiteReport,
    check_associativity,
    check_minkowski,
    check_qstar,
    random_ideal,
    run_suite,
)

__version__ = "0.1.0"
