"""Exact counts of rational plane curves with prescribed contacts to a cubic.

The package layers, bottom up:

- :mod:`~tangenttab.combinatorics`: binomials, multiplicity sequences.
- :mod:`~tangenttab.kontsevich`: curve counts through points.
- :mod:`~tangenttab.kcoeff`: the K coefficients and normalization tables.
- :mod:`~tangenttab.tangency`: the closed-form tangency counts and the
  exact identity suites.
- :mod:`~tangenttab.chrelation`: general contact profiles and their
  symbolic reduction.
- :mod:`~tangenttab.oracle`: independent geometric oracles and calibration.
- :mod:`~tangenttab.cli`: command-line front end.

All arithmetic is exact (integers and rationals); there is no floating
point anywhere in a counting path.
"""

from .combinatorics import IndexSequence, binom, forward_difference, seq_stats
from .chrelation import (
    ContactProfile,
    LinearCombination,
    cubic_profile,
    evaluate_by_reduction,
    evaluate_cubic_profile,
    expand_once,
    expected_dimension,
    free_points,
    parse_profile,
    reduce_to_terminal,
)
from .errors import (
    CalibrationMismatch,
    DegenerateConfiguration,
    EngineError,
    ExtraneousFactorAmbiguity,
    IdenticallyZeroEliminant,
    NotEvaluable,
    NotReducible,
    ProfileMismatch,
    RangeError,
    UnknownNormalization,
    UnsupportedOrder,
    ZeroNormalization,
)
from .kcoeff import (
    KTable,
    NormalizationTable,
    alpha_factor,
    k_coefficient,
    solve_normalization,
)
from .kontsevich import KontsevichTable, kontsevich_number
from .oracle import (
    PlaneCubic,
    calibrate,
    conic_flag_count,
    pencil_tangency_count,
    tangent_lines_count,
)
from .tangency import (
    TangencyProblem,
    count,
    gw_invariant,
    p_value,
    q_coefficients,
    q_value,
    verify_ch_identity,
    verify_delta,
    verify_integrality,
    verify_key_relation,
    verify_q_properties,
)

__version__ = "0.1.0"

__all__ = [
    "binom",
    "forward_difference",
    "seq_stats",
    "IndexSequence",
    "KontsevichTable",
    "kontsevich_number",
    "KTable",
    "NormalizationTable",
    "alpha_factor",
    "k_coefficient",
    "solve_normalization",
    "TangencyProblem",
    "count",
    "p_value",
    "q_coefficients",
    "q_value",
    "gw_invariant",
    "verify_ch_identity",
    "verify_key_relation",
    "verify_delta",
    "verify_q_properties",
    "verify_integrality",
    "ContactProfile",
    "LinearCombination",
    "expected_dimension",
    "free_points",
    "expand_once",
    "reduce_to_terminal",
    "evaluate_cubic_profile",
    "evaluate_by_reduction",
    "cubic_profile",
    "parse_profile",
    "PlaneCubic",
    "conic_flag_count",
    "tangent_lines_count",
    "pencil_tangency_count",
    "calibrate",
    "EngineError",
    "RangeError",
    "UnknownNormalization",
    "ZeroNormalization",
    "CalibrationMismatch",
    "NotReducible",
    "UnsupportedOrder",
    "ProfileMismatch",
    "NotEvaluable",
    "DegenerateConfiguration",
    "IdenticallyZeroEliminant",
    "ExtraneousFactorAmbiguity",
]
