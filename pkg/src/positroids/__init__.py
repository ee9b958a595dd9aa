"""Positroid combinatorics: matroids by bases, Grassmann necklaces,
decorated permutations, cyclic shift moves, and the quotient poset."""

from .cyclic import (
    CyclicInterval,
    cyclic_components,
    gale_leq,
    gale_leq_sorted,
    i_precedes,
    i_sorted,
    interval_length,
    interval_set,
)
from .errors import (
    CapExceeded,
    EmptyBases,
    ExchangeViolation,
    GroundSetMismatch,
    IntervalTooLong,
    InvalidNecklace,
    MixedCardinality,
    NonIncreasingPoints,
    NotAPositroid,
    NotAQuotient,
    ParseError,
    PositroidError,
)
from .matroid import (
    ExactMatrix,
    Flag,
    Matroid,
    matroid_from_matrix,
    realize_uniform,
    uniform,
    vandermonde_product,
)
from .positroid import (
    DecoratedPermutation,
    GrassmannNecklace,
    bases_from_necklace,
    is_positroid,
    necklace_from_matroid,
    necklace_from_perm,
    perm_from_necklace,
    perm_inverse,
    positroid_from_perm,
    smallest_containing_positroid,
    uniform_perm,
)
from .poset import (
    CensusRow,
    QuotientPoset,
    build_poset,
    census_csv,
    check_necklace_containment,
    check_shift_conjecture,
    closure_vs_direct,
    decorated_permutations,
    mobius,
    rank_sizes,
    to_dot,
    uniform_quotient_census,
)
from .shift import (
    FreezeSet,
    PredictedCircuits,
    circuit_cover_uniform,
    predicted_circuits,
    predicted_rank,
    shift_left,
    shift_right,
)

__all__ = [name for name in dir() if not name.startswith("_")]
