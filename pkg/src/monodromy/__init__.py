"""Finite classical groups over residue rings, cyclic-cover combinatorics,
and statistical verification of Frobenius characteristic-polynomial
distributions for hyperelliptic and trielliptic curve families.
"""

from .bruhat import BruhatFactors, bruhat_decompose
from .bsgs import GroupAtlas
from .covers import (
    ClassVector,
    DegenerationWitness,
    InertiaType,
    NotAdmissible,
    Refused,
    TriSignature,
    canonicalize,
    deform,
    enumerate_signatures,
    find_delta11,
    genus_of,
    negate,
    signature_of,
    sweep_delta11,
)
from .curves import (
    CountingError,
    HyperCurve,
    LPolynomial,
    TriCurve,
    count_points,
    lpoly,
    lpoly_from_counts,
    reduce_and_factor,
    sample_hyper,
    sample_tri,
    split_unitary_predicate,
)
from .groups import (
    FormedSpace,
    FormKind,
    GenerationReport,
    GroupKind,
    block_embed,
    bsgs_order,
    classical_order,
    form_multiplier,
    hermitian_space,
    linear_space,
    split_embed,
    standard_generators,
    standard_symplectic_space,
    verify_generation,
)
from .residues import (
    EisensteinResidue,
    ExtField,
    PrimeModulus,
    Splitting,
    build_ext_field,
    classify_prime,
    cube_root_count,
)
from .stats import (
    CharPolyHistogram,
    ComparisonReport,
    HyperFamily,
    SpTarget,
    SuTarget,
    TriFamily,
    compare,
    empirical_histogram,
    support_violation_scan,
    theoretical_histogram,
)

__version__ = "0.1.0"
