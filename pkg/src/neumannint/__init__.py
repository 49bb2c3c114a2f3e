"""Large-order two-centre integral engine with a built-in arbitrary-precision oracle."""

from .series import ExpansionSettings, SeriesOutcome, sum_series
from .special import (
    CapacityError,
    ExpIntTable,
    MomentTable,
    StirlingTable,
    a_moment,
    b_coeff,
    bessel_i,
    bessel_i_large_order,
    bessel_ik_cross,
    bessel_k,
    bessel_k_large_order,
    digamma_int,
    exp_int,
    stirling2,
)
from .lmu import (
    LRequest,
    Lambda_coeff,
    ik_split,
    l_general,
    l_large_order,
    l_leading,
    lambda_coeff,
    raise_p_and_sigma,
)
from .wmu import (
    BasicIntegralCache,
    Omega,
    T_coeff,
    WParams,
    omega,
    raise_sigma_w,
    tau_coeff,
    w_general,
    w_large_order,
    w_sigma,
)
from .driver import (
    GenericIntegralRequest,
    eta_integral,
    k_integral,
    neumann_sum,
)

__version__ = "0.1.0"

__all__ = [
    "ExpansionSettings",
    "SeriesOutcome",
    "sum_series",
    "CapacityError",
    "ExpIntTable",
    "MomentTable",
    "StirlingTable",
    "a_moment",
    "b_coeff",
    "bessel_i",
    "bessel_i_large_order",
    "bessel_ik_cross",
    "bessel_k",
    "bessel_k_large_order",
    "digamma_int",
    "exp_int",
    "stirling2",
    "LRequest",
    "Lambda_coeff",
    "ik_split",
    "l_general",
    "l_large_order",
    "l_leading",
    "lambda_coeff",
    "raise_p_and_sigma",
    "BasicIntegralCache",
    "Omega",
    "T_coeff",
    "WParams",
    "omega",
    "raise_sigma_w",
    "tau_coeff",
    "w_general",
    "w_large_order",
    "w_sigma",
    "GenericIntegralRequest",
    "eta_integral",
    "k_integral",
    "neumann_sum",
    "__version__",
]
