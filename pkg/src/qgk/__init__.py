"""Quiver root systems, Kac polynomials, GKM algebras, and cuspidal inversions."""

from .cuspidal import (
    CuspidalError,
    CuspidalTable,
    absolutely_cuspidal,
    cuspidal_from_abs,
    invert_character,
    ip_general,
    ip_polynomial,
    ip_table,
)
from .gkm import (
    AmbiguousDecompositionError,
    GkmDimTable,
    GkmEngine,
    GkmError,
    WeightFunction,
    free_lie_character,
    gkm_character,
    gkm_dims,
    lowest_weight_extract,
    uea_character,
)
from .kac import (
    DEFAULT_FIELDS,
    FLAVOURS,
    HUA_NORMALISATION,
    BudgetError,
    CountingError,
    KacTable,
    brute_force_counts,
    hua_kac,
    oracle_kac,
    oracle_kac_full,
    oracle_kac_table,
    select_hua_normalisation,
)
from .nakajima import (
    Block,
    LowestWeightDecomposition,
    NakajimaError,
    framed_character,
    lw_decompose,
)
from .qpoly import QPoly, QPolyError, parse_qpoly
from .quiver import (
    FRAMING_VERTEX,
    DimVector,
    Quiver,
    QuiverError,
    double,
    euler_form,
    frame,
    framed_vector,
    sym_form,
    triple,
    unframed_part,
)
from .roots import (
    HYPERBOLIC,
    ISOTROPIC,
    REAL,
    CartanDatum,
    RootError,
    RootTables,
    canonical_decomposition,
    fundamental_cone_membership,
    phi_plus,
    positive_roots,
    sigma_membership,
    weyl_reflect,
)
from .series import (
    GradedSeries,
    PlethMode,
    SeriesError,
    adams,
    pleth_exp,
    pleth_log,
    series_inv,
    series_mul,
    sym_power_coeff,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguousDecompositionError",
    "Block",
    "BudgetError",
    "CartanDatum",
    "CountingError",
    "CuspidalError",
    "CuspidalTable",
    "DEFAULT_FIELDS",
    "DimVector",
    "FLAVOURS",
    "FRAMING_VERTEX",
    "GkmDimTable",
    "GkmEngine",
    "GkmError",
    "GradedSeries",
    "HUA_NORMALISATION",
    "HYPERBOLIC",
    "ISOTROPIC",
    "KacTable",
    "LowestWeightDecomposition",
    "NakajimaError",
    "PlethMode",
    "QPoly",
    "QPolyError",
    "Quiver",
    "QuiverError",
    "REAL",
    "RootError",
    "RootTables",
    "SeriesError",
    "WeightFunction",
    "absolutely_cuspidal",
    "adams",
    "brute_force_counts",
    "canonical_decomposition",
    "cuspidal_from_abs",
    "double",
    "euler_form",
    "frame",
    "framed_character",
    "framed_vector",
    "free_lie_character",
    "fundamental_cone_membership",
    "gkm_character",
    "gkm_dims",
    "hua_kac",
    "invert_character",
    "ip_general",
    "ip_polynomial",
    "ip_table",
    "lowest_weight_extract",
    "lw_decompose",
    "oracle_kac",
    "oracle_kac_full",
    "oracle_kac_table",
    "parse_qpoly",
    "phi_plus",
    "pleth_exp",
    "pleth_log",
    "positive_roots",
    "select_hua_normalisation",
    "series_inv",
    "series_mul",
    "sigma_membership",
    "sym_form",
    "sym_power_coeff",
    "triple",
    "unframed_part",
    "uea_character",
    "weyl_reflect",
]
