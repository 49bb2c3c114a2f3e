"""Assembly of the full two-centre integral from its factor integrals.

The quantity computed is the expansion

    I = (8/R) (-1)^sigma sum_{mu >= sigma} (2mu+1)
        W_mu^sigma(p1, p2, alpha1, alpha2)
        i_mu^sigma(q1, beta1) i_mu^sigma(q2, beta2)

where the eta-side factors

    i_mu^sigma(q, beta) = (-1)^mu/2 (mu-sigma)!/(mu+sigma)! *
        integral_-1^1 P_mu^sigma(eta) (1-eta^2)^(sigma/2) eta^q e^(-beta eta)

are evaluated by stable ladder recurrences seeded from modified spherical
Bessel values, and W comes from the large-order engine above the mu switch
and from the quadrature-backed reference path below it.  k_integral, the
xi > 1 analogue of the eta factors, is provided for completeness.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import count

from .legutil import weighted_deriv_coeffs
from .series import ExpansionSettings, SeriesOutcome, sum_series
from .special import ExpIntTable, bessel_i_array
from .wmu import w_sigma


class PrecisionWarning(UserWarning):
    """Raised (as a warning) when cancellation leaves few significant digits."""


@dataclass(frozen=True)
class GenericIntegralRequest:
    """Parameters of one full two-centre integral.

    Exponential parameters may be decimal strings (pinning exact decimal
    values for oracle work) or floats.  |beta| <= alpha is required on each
    centre for the charge-distribution integrals to make sense.
    """

    p1: int
    q1: int
    p2: int
    q2: int
    sigma: int
    alpha1: float | str
    alpha2: float | str
    beta1: float | str
    beta2: float | str
    R: float

    def __post_init__(self):
        if min(self.p1, self.q1, self.p2, self.q2, self.sigma) < 0:
            raise ValueError(f"indices must be nonnegative: {self}")
        for a, b in ((self.alpha1, self.beta1), (self.alpha2, self.beta2)):
            if float(a) <= 0:
                raise ValueError(f"alpha must be positive: {self}")
            if abs(float(b)) > float(a):
                raise ValueError(f"|beta| must not exceed alpha: {self}")
        if self.R <= 0:
            raise ValueError(f"R must be positive: {self}")


# ---------------------------------------------------------------------------
# eta-side factor integrals
# ---------------------------------------------------------------------------

def _eta_exact_zero_beta(mu: int, sigma: int, q: int) -> float:
    # Exact Fraction evaluation of the beta = 0 integral; orthogonality of
    # the weighted Legendre polynomial against eta^q makes this identically
    # zero whenever mu - sigma > q (and for parity mismatches).
    poly = weighted_deriv_coeffs(mu, sigma, -1)
    total = Fraction(0)
    for k, c in enumerate(poly):
        if c and (k + q) % 2 == 0:
            total += c * Fraction(2, k + q + 1)
    norm = Fraction(
        math.factorial(mu - sigma), 2 * math.factorial(mu + sigma)
    )
    if mu % 2:
        norm = -norm
    return float(norm * total)


class _EtaLadder:
    """Memoized ladder evaluation of i_mu^sigma(q, beta) at fixed beta > 0.

    Base values i_mu^0(0, beta) equal the modified spherical Bessel i_mu(beta);
    sigma is raised by [up - down]/(2mu+1) and q by the eta-multiplication
    recurrence -( (mu+sigma+1) up + (mu-sigma) down )/(2mu+1).
    """

    def __init__(self, beta: float, order: int):
        self._base = bessel_i_array(order, beta)
        self._memo: dict[tuple[int, int, int], float] = {}

    def value(self, mu: int, q: int, sigma: int) -> float:
        if mu < sigma or mu < 0:
            return 0.0
        key = (mu, q, sigma)
        got = self._memo.get(key)
        if got is not None:
            return got
        if q > 0:
            up = self.value(mu + 1, q - 1, sigma)
            down = self.value(mu - 1, q - 1, sigma)
            out = -((mu + sigma + 1) * up + (mu - sigma) * down) / (2 * mu + 1)
        elif sigma > 0:
            out = (
                self.value(mu + 1, 0, sigma - 1) - self.value(mu - 1, 0, sigma - 1)
            ) / (2 * mu + 1)
        else:
            out = self._base[mu]
        self._memo[key] = out
        return out


def eta_integral(mu: int, sigma: int, q: int, beta) -> float:
    """i_mu^sigma(q, beta); exact rational arithmetic at beta = 0."""
    if mu < 0 or sigma < 0 or q < 0:
        raise ValueError(f"indices must be nonnegative: mu={mu}, sigma={sigma}, q={q}")
    if mu < sigma:
        return 0.0
    b = float(beta)
    if b == 0.0:
        return _eta_exact_zero_beta(mu, sigma, q)
    value = _EtaLadder(abs(b), mu + q + sigma).value(mu, q, sigma)
    if b < 0 and (mu + sigma + q) % 2:
        value = -value
    return value


# ---------------------------------------------------------------------------
# xi-side factor integrals
# ---------------------------------------------------------------------------

def k_integral(mu: int, sigma: int, p: int, alpha: float) -> float:
    """k_mu^sigma(p, alpha) = (mu-sigma)!/(mu+sigma)! *
    integral_1^inf P_mu^sigma(xi) (xi^2-1)^(sigma/2) xi^p e^(-alpha xi) dxi,

    via the exact monomial expansion of the weighted Legendre polynomial
    against E_{-n}(alpha).  The alternating coefficients cancel by roughly
    2^mu when alpha >> mu, so a PrecisionWarning is emitted when fewer than
    three significant digits survive.
    """
    if mu < 0 or sigma < 0 or p < 0:
        raise ValueError(f"indices must be nonnegative: mu={mu}, sigma={sigma}, p={p}")
    if mu < sigma:
        return 0.0
    if alpha <= 0:
        raise ValueError(f"alpha must be positive, got {alpha}")
    table = ExpIntTable(alpha)
    poly = weighted_deriv_coeffs(mu, sigma, +1)
    terms = [float(c) * table.get(-(j + p)) for j, c in enumerate(poly) if c]
    total = math.fsum(terms)
    peak = max(abs(t) for t in terms)
    # fsum is exact, but the E_{-n}(alpha) inputs each carry ~1 ulp; when the
    # alternating sum cancels below ~1e-13 of the peak term fewer than three
    # significant digits survive.
    if peak > 0 and abs(total) < 1e-13 * peak:
        import warnings

        warnings.warn(
            f"k_integral(mu={mu}, sigma={sigma}, p={p}, alpha={alpha}) lost "
            f"~{math.log10(peak / max(abs(total), 5e-324)):.0f} digits to cancellation",
            PrecisionWarning,
            stacklevel=2,
        )
    norm = Fraction(math.factorial(mu - sigma), math.factorial(mu + sigma))
    return float(norm) * total


# ---------------------------------------------------------------------------
# full expansion
# ---------------------------------------------------------------------------

def neumann_sum(
    req: GenericIntegralRequest,
    mu_switch: int = 25,
    settings: ExpansionSettings | None = None,
    w_source=None,
) -> SeriesOutcome:
    """Sum the expansion of the full two-centre integral.

    W values come from `w_source(mu)` when given; otherwise from the
    quadrature-backed reference path below mu_switch and the large-order
    engine above it.  A W whose series diverges raises ArithmeticError
    naming the first bad mu.  When a beta vanishes the eta factors are
    identically zero beyond mu = q + sigma and the sum terminates exactly.
    """
    s = settings or ExpansionSettings()
    sig = req.sigma
    a1 = float(req.alpha1)
    a2 = float(req.alpha2)
    b1 = float(req.beta1)
    b2 = float(req.beta2)

    if w_source is None:

        def w_source(m: int) -> float:
            if m < mu_switch:
                from .oracle import oracle_w_float

                return oracle_w_float(m, sig, req.p1, req.p2, a1, a2)
            outcome = w_sigma(m, sig, req.p1, req.p2, a1, a2, s)
            if not outcome.converged:
                raise ArithmeticError(
                    f"large-order W series failed at mu={m}: {outcome.reason}"
                )
            return outcome.value

    def terms():
        for m in count(sig):
            if b1 == 0.0 and m - sig > req.q1:
                return
            if b2 == 0.0 and m - sig > req.q2:
                return
            e1 = eta_integral(m, sig, req.q1, b1)
            e2 = eta_integral(m, sig, req.q2, b2)
            if e1 == 0.0 or e2 == 0.0:
                yield 0.0
                continue
            yield (2 * m + 1) * w_source(m) * e1 * e2

    outcome = sum_series(terms(), s)
    prefactor = (8.0 / req.R) * (-1.0 if sig % 2 else 1.0)
    return outcome.scaled(prefactor)
