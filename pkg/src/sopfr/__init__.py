"""Distribution of sopfr(n) = sum a_i p_i in residue classes.

Exact exponential sums S(x; h, q) = sum_{n<=x} e^{2 pi i h sopfr(n)/q} at
scale, the explicit constants of their asymptotics, and the numerical
identity checks tying the two together.
"""

from .asymptotic import (
    ClassCoefficients,
    IdentityCheck,
    PredictionReport,
    QuadratureError,
    class_coefficients,
    euler_product_identity,
    parity_series_identity,
    predict_main,
    slit_integral,
    zeta_integral_closed_form,
    zeta_integral_quadrature,
)
from .characters import (
    CharacterGroup,
    DirichletCharacter,
    UnitGroupStructure,
    character_group,
    euler_phi,
    gauss_sum,
    mobius,
    phase_from_gauss_sums,
    ramanujan_sum,
    unit_group,
    unit_roots,
)
from .constants import (
    ConstantResult,
    TruncationConfig,
    TruncationError,
    correction_factor,
    leading_coefficient,
    log_correction,
    power_correction,
)
from .empirical import (
    CheckpointMismatch,
    ComparisonReport,
    ExpSumResult,
    ResidueCounts,
    compare,
    exp_sum,
    exp_sum_from_counts,
    mod9_table,
    residue_counts,
)
from .lfunctions import (
    EvaluationOptions,
    complex_pow,
    dirichlet_l,
    hurwitz_zeta_minus_pole,
    l_at_one,
    real_gamma,
    zeta,
)
from .sieve import (
    DEFAULT_SEGMENT_SIZE,
    Factorization,
    FactorSieve,
    SopfrValue,
    build_sieve,
    factorize,
    iter_sopfr_mod,
    primes_upto,
    sopfr,
    sopfr_mod,
    stream_sopfr_mod,
)

__version__ = "0.1.0"
