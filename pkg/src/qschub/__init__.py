"""Exact quasisymmetric Schubert calculus: operators, forests, bases, divided symmetrization and geometry."""

from .errors import (
    BoundExceededError,
    NotDivisibleError,
    ParseError,
    PreconditionError,
    QSchubError,
    RingMismatchError,
    VerificationError,
)
from .poly import MultiPoly, RationalFn, format_poly, monomial, parse, qvar, x
from .ops import (
    Letter,
    R,
    T,
    apply_code,
    apply_word,
    divided_difference,
    format_word,
    is_quasisymmetric,
    is_symmetric,
    parse_word,
    r_cyc,
    r_op,
    t_cyc,
    t_op,
)
from .perm import Permutation, bruhat_leq, interval, uv_of
from .forest import (
    IndexedForest,
    MarkedNestedForest,
    NestedForest,
    enumerate_nsuppfor,
    enumerate_suppfor,
    parse_forest,
)
from .rtword import enumerate_rtseq, forest_of, nested_forest_of, star_matrix, trim_set, trimming_diagram
from .bases import (
    BasisExpansion,
    forest_expand,
    forest_poly,
    gessel_coeffs,
    lr_coeff,
    lr_via_word,
    positivity_witness,
    schubert,
    schubert_expand,
)
from .divsym import ds_direct, ds_factorized, qds_direct, qds_factorized
from .gz import gz_face, hhmp_locate, hhmp_membership, moment_mu

__version__ = "0.1.0"
