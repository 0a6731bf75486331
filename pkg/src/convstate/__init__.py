"""Exact state-space analysis of convolutional codes over prime fields."""

from .errors import (
    BothZero,
    ConvStateError,
    DimensionMismatch,
    DivisionByZero,
    FormatError,
    MixedFields,
    NonCausalDenominator,
    NotBasic,
    NotCanonical,
    NotReduced,
    PreconditionError,
    RankDeficient,
    TooLargeToEnumerate,
)
from .gf import FieldElem, FieldSpec
from .polylaurent import (
    INF,
    NEG_INF,
    LaurentPoly,
    Poly,
    RationalFn,
    TruncatedSeries,
    anticausal_part,
    causal_part,
    delay_degree,
    poly_gcd,
    rational_expand,
)
from .polymat import (
    DegreeProfile,
    PolyMatrix,
    SmithForm,
    UnimodularCert,
    canonicalize,
    degree_profile,
    det,
    extdeg,
    intdeg,
    is_reduced,
    mat_mul,
    minors,
    predictable_degree_check,
    rank_rational,
    reduce,
    right_inverse,
    smith_form,
)
from .realize import (
    Realization,
    SymbolStream,
    controller_realization,
    encode,
    encode_series,
    encoder_step,
    standard_realization,
)
from .statespace import (
    AnticausalInput,
    StateSpaceReport,
    StateVector,
    in_code,
    in_cstar,
    minimality_report,
    oracle_state_dim,
    state_of,
    verify_theorem1,
    verify_theorem2,
    verify_theorem3,
)

__version__ = "0.1.0"
