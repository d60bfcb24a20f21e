"""Toeplitz operators on weighted Bergman spaces of the unit ball:
finite-prefix matrices, diagonal eigenvalues, and commutant verifiers.
"""

from .multiindex import (
    BasisIndexer,
    DimensionMismatchError,
    dominates,
    enumerate_multiindices,
    shift,
    unit,
)
from .specialfn import (
    SpaceParams,
    d_coeff,
    d_coeff_axis,
    lemma4_ratio,
    log_gamma,
    norm_constant,
)
from .quadrature import (
    MCEstimate,
    QuadratureRule,
    RadialProfile,
    ball_monomial_integral,
    mc_ball_integral,
    radial_integral,
)
from .symbols import (
    InvarianceFlags,
    MonomialCombo,
    OmegaTable,
    SeparatelyRadialSymbol,
    constant_symbol,
    invariance_flags,
    monomial,
    omega,
    omega_table,
    torus_average,
    z_power,
    zbar_power,
)
from .toeplitz import (
    PrefixOperator,
    apply_toeplitz,
    assemble,
    basis_symbol,
    berezin,
    berezin_tail_bound,
    commutator,
    commutator_entry_residual,
    identity_operator,
    operator_norm,
    toeplitz_entry,
)
from .commutant import (
    AnalyticTestFailedError,
    AnalyticTestReport,
    Lemma4Report,
    Prop2Verdict,
    Theorem2Equivalence,
    Theorem2Report,
    analytic_test,
    extract_symbol,
    lemma4_check,
    prop2_classify,
    prop4_operator,
    theorem2_equivalence,
    theorem2_residual,
)
from .psets import (
    Complement,
    Finite,
    Full,
    ProductWithFull,
    PVerdict,
    SetExpr,
    Translate,
    Union,
    contains,
    divergence_probe,
    property_p,
    replay,
    zero_set_prefix,
)

__version__ = "0.1.0"
