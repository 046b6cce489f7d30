"""Free Lie algebras in the Lyndon basis and their explicit quotients."""

from .algebra import (
    FreeLieAlgebra,
    GradedAlgebra,
    LieElement,
    NilpotentTruncation,
    TruncationError,
    free_lie_algebra,
    nilpotent_truncation,
    standard_free,
)
from .quotients import QuotientJ, QuotientK, compare_with_free, quotient_J, quotient_K
from .words import (
    OracleCutoffExceeded,
    is_lyndon,
    lyndon_words,
    lyndon_words_of_length,
    standard_factorization,
    tensor_bracket,
    witt_dimension,
)

__all__ = [
    "FreeLieAlgebra",
    "GradedAlgebra",
    "LieElement",
    "NilpotentTruncation",
    "TruncationError",
    "free_lie_algebra",
    "nilpotent_truncation",
    "standard_free",
    "QuotientJ",
    "QuotientK",
    "compare_with_free",
    "quotient_J",
    "quotient_K",
    "OracleCutoffExceeded",
    "is_lyndon",
    "lyndon_words",
    "lyndon_words_of_length",
    "standard_factorization",
    "tensor_bracket",
    "witt_dimension",
]
