"""alg2d: classification of 2-dimensional real algebras by structure constants.

A 2-dimensional real algebra is a bilinear multiplication on R^2, stored as
the 2x4 matrix A with u*v = A (u (x) v).  The library canonicalizes any
nonzero such matrix into one of fifteen families under the basis-change
action, decides commutativity, the Jordan identity, the division property
and the evolution property, computes automorphism groups and derivation
algebras of evolution algebras, and ships randomized oracles that check
every claimed invariant along orbits.
"""

from .core import (
    DEFAULT_TOL,
    SingularMatrixError,
    Tolerances,
    TracePair,
    TrivialAlgebraError,
    act,
    as_gl2,
    as_msc,
    kron2,
    multiply,
    opposite,
    traces,
)
from .families import (
    EVOLUTION_LABELS,
    GENERAL_LABELS,
    JORDAN_MEMBERS,
    commutative_msc,
    evolution_msc,
    family_msc,
)
from .classify import (
    CanonicalForm,
    canonicalize,
    isomorphic,
    subset_margin,
    subset_of,
    trace_matrix,
)
from .properties import (
    CommutativeLabel,
    DivisionData,
    PropertyFlags,
    commutative_label,
    division_data,
    is_commutative,
    is_division,
    jordan_condition,
    jordan_label,
    jordan_residual,
)
from .evolution import (
    EvolutionClass,
    EvolutionMsc,
    LinearFamily,
    automorphism_family,
    classify_evolution,
    derivation_dimension,
    derivations,
    find_natural_basis,
    is_automorphism,
    natural_form,
)
from .oracle import (
    AutSearchReport,
    IsoWitness,
    OrbitSampler,
    automorphism_report,
    brute_iso_search,
    orbit_sample,
    random_automorphisms,
    random_gl2,
)
from .cli import Report, build_report

__version__ = "0.1.0"
