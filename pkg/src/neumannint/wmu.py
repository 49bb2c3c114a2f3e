"""Large-order evaluation of the two-centre outer integrals W.

W_mu^sigma(p1, p2, alpha1, alpha2) is the symmetrized double integral over
1 <= xi2 <= xi1 < inf of

    Q_mu^sigma(xi1) (xi1^2-1)^(sigma/2) xi1^p1 e^(-alpha1 xi1)
  * P_mu^sigma(xi2) (xi2^2-1)^(sigma/2) xi2^p2 e^(-alpha2 xi2)

plus the same expression with (p1, alpha1) and (p2, alpha2) interchanged.
The sigma = 0, p2 = 0 case has the large-order series

    W_mu(p; alpha1, alpha2) = 1/(2mu+1) * sum_s d_s / (mu+1/2)^s
    d_s = sum_{l=0}^{s} b_{s-l}(alpha2) (-1)^l [T_l + (-1)^s tau_l]

where tau_m and T_m are the alternating Stirling-weighted sums over the
basic integrals

    omega_np = integral_0^1 t^n E_{-p}(alpha1 + alpha2 t) dt
    Omega_np = integral_1^inf t^n E_{-p}(alpha1 + alpha2 t) dt

General p2 follows by differentiating the series with respect to alpha2
(propagated symbolically with jets, using the exact shift rules
d/d alpha2 omega_np = -omega_{n+1,p+1} and likewise for Omega); general
sigma follows from the three-term sigma-raising recurrence.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import count

from .series import (
    CONSECUTIVE_BELOW,
    ExpansionSettings,
    Jet,
    SeriesOutcome,
    sum_series,
)
from .special import ExpIntTable, ScaledWeightTable, safe_fsum

# Differentiation depth bound for the p2-raising route: beyond this the
# jet convolutions lose too many digits to certify against the oracle.
P2_MAX = 12

# Positive-half abscissas and weights of the 64-point Gauss-Legendre rule
# on [-1, 1] (the rule is symmetric), frozen from a 40-digit Newton solve
# of the Legendre roots.
_GL64_HALF = (
    (0.024350292663424433, 0.04869095700913972),
    (0.072993121787799039, 0.048575467441503427),
    (0.12146281929612055, 0.048344762234802957),
    (0.16964442042399282, 0.047999388596458308),
    (0.21742364374000708, 0.047540165714830309),
    (0.26468716220876742, 0.046968182816210017),
    (0.31132287199021096, 0.046284796581314417),
    (0.35722015833766812, 0.045491627927418144),
    (0.40227015796399163, 0.044590558163756563),
    (0.44636601725346409, 0.043583724529323453),
    (0.48940314570705296, 0.042473515123653589),
    (0.53127946401989455, 0.041262563242623529),
    (0.57189564620263403, 0.039953741132720341),
    (0.61115535517239325, 0.038550153178615629),
    (0.64896547125465734, 0.037055128540240046),
    (0.68523631305423324, 0.035472213256882384),
    (0.71988185017161083, 0.033805161837141609),
    (0.75281990726053190, 0.032057928354851554),
    (0.78397235894334141, 0.030234657072402479),
    (0.81326531512279756, 0.028339672614259483),
    (0.84062929625258036, 0.026377469715054659),
    (0.86599939815409282, 0.024352702568710873),
    (0.88931544599511411, 0.022270173808383254),
    (0.91052213707850281, 0.020134823153530209),
    (0.92956917213193958, 0.017951715775697343),
    (0.94641137485840282, 0.015726030476024719),
    (0.96100879965205372, 0.013463047896718643),
    (0.97332682778991096, 0.011168139460131129),
    (0.98333625388462596, 0.0088467598263639477),
    (0.99101337147674432, 0.0065044579689783629),
    (0.99634011677195528, 0.0041470332605624676),
    (0.99930504173577214, 0.0017832807216964329),
)


def _gauss64(f, a: float, b: float) -> float:
    """64-point Gauss-Legendre estimate of the integral of f over [a, b]."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    acc = []
    for x, w in _GL64_HALF:
        dx = half * x
        acc.append(w * (f(mid + dx) + f(mid - dx)))
    return math.fsum(acc) * half


@dataclass(frozen=True)
class WParams:
    """Parameters of one W evaluation.

    alpha1/alpha2 may be decimal strings; the float engine casts them,
    while the oracle uses them verbatim to pin the exact decimal parameter
    point rather than its float64 rounding.
    """

    p1: int
    p2: int
    sigma: int
    alpha1: float | str
    alpha2: float | str
    mu: int

    def __post_init__(self):
        if min(self.p1, self.p2, self.sigma, self.mu) < 0:
            raise ValueError(f"indices must be nonnegative: {self}")
        if self.sigma > self.mu:
            raise ValueError(f"sigma > mu in {self}")
        if float(self.alpha1) <= 0 or float(self.alpha2) <= 0:
            raise ValueError(f"exponents must be positive: {self}")


class BasicIntegralCache:
    """Memoized omega_np and Omega_np values at fixed (alpha1, alpha2).

    omega uses the ascending E-series with a geometric tail bound; Omega is
    routed by region: exact finite forms for n >= 0, and composite
    Gauss-Legendre quadrature of the defining integral for n < 0 (the
    integrand is positive, smooth and rapidly decaying there, so panels
    scaled to its width deliver machine accuracy for every alpha1/alpha2
    ratio -- unlike the inter-index recurrences, which lose a digit or more
    per p level to cancellation when alpha1 is close to alpha2).
    Values beyond the float range are stored as inf and propagate to the
    series divergence detector.
    """

    def __init__(self, alpha1: float, alpha2: float):
        if alpha1 <= 0 or alpha2 <= 0:
            raise ValueError("alpha1 and alpha2 must be positive")
        self.alpha1 = float(alpha1)
        self.alpha2 = float(alpha2)
        self.exp_sum = ExpIntTable(self.alpha1 + self.alpha2)
        self.exp_a2 = ExpIntTable(self.alpha2)
        self._ema1 = math.exp(-self.alpha1)
        self._omega: dict[tuple[int, int], float] = {}
        self._Omega: dict[tuple[int, int], float] = {}

    # -- omega ---------------------------------------------------------

    def omega(self, n: int, p: int) -> float:
        """omega_np for n >= 0, p >= 0."""
        if n < 0 or p < 0:
            raise ValueError(f"omega needs n, p >= 0, got ({n}, {p})")
        key = (n, p)
        if key not in self._omega:
            self._omega[key] = self._omega_series(n, p)
        return self._omega[key]

    def _omega_series(self, n: int, p: int) -> float:
        # omega_np = n! sum_k alpha2^k/(n+k+1)! E_{-p-k}(alpha1+alpha2);
        # every term is positive.  The terms are updated multiplicatively --
        # E_{-m-1}/E_{-m} = (m+1)/z + e'_m with e'_m = (z^m/m!)/sum_{i<=m}z^i/i!
        # -- because the E_{-m} factors alone overflow double precision long
        # before the series (whose terms stay modest) has met its tail bound.
        # Stop when the geometric tail bound from E_{-m-1}/E_{-m} <= 1+(m+1)/z
        # drops below tolerance.
        z = self.alpha1 + self.alpha2
        w = e = 1.0
        for i in range(1, p + 1):
            w *= z / i
            e += w
        r = w / e
        term = self.exp_sum.get(-p) / (n + 1)
        if not math.isfinite(term):
            return math.inf
        terms = [term]
        total = term
        for k in range(100_000):
            # sup over all later term ratios: the (p+j+1)/(n+j+2) factor can
            # still grow toward 1 when p < n+1, so envelope it by max(.., 1).
            ratio = (
                self.alpha2 / z * max(1.0, (p + k + 1) / (n + k + 2))
                + self.alpha2 / (n + k + 2)
            )
            if ratio < 1.0 and term * ratio / (1.0 - ratio) <= 1e-17 * total:
                return math.fsum(terms)
            term *= self.alpha2 / (n + k + 2) * ((p + k + 1) / z + r)
            x = r * z / (p + k + 1)
            r = x / (1.0 + x)
            terms.append(term)
            total += term
        raise ArithmeticError(
            f"omega series failed to meet its tail bound at n={n}, p={p}"
        )

    def omega_partial(self, n: int, p: int, n_terms: int) -> float:
        """Partial sum of the omega series through k = n_terms - 1."""
        coeff = 1.0 / (n + 1)
        terms = []
        for k in range(n_terms):
            terms.append(coeff * self.exp_sum.get(-(p + k)))
            coeff *= self.alpha2 / (n + k + 2)
        return math.fsum(terms)

    def omega_tail_bound(self, n: int, p: int, n_terms: int) -> float:
        """Closed-form bound on the omega-series remainder after n_terms terms.

        B_1 = alpha2 (p+1)! / (alpha1^(p+2) (n+1)(n+2)) and
        B_{N} = B_{N-1} * (alpha2/alpha1) (p+N)/(n+N+1); evaluated
        incrementally so the factorials never overflow.  The bound is valid
        for any positive parameters but only useful when alpha2 < alpha1.
        """
        bound = self.alpha2 * math.factorial(p + 1) / (
            self.alpha1 ** (p + 2) * (n + 1) * (n + 2)
        )
        for big_n in range(1, n_terms):
            bound *= (self.alpha2 / self.alpha1) * (p + big_n + 1) / (n + big_n + 2)
        return bound

    # -- Omega ---------------------------------------------------------

    def Omega(self, n: int, p: int) -> float:
        """Omega_np for any integer n and p >= 0."""
        if p < 0:
            raise ValueError(f"Omega needs p >= 0, got p={p}")
        key = (n, p)
        if key in self._Omega:
            return self._Omega[key]
        if p == 0:
            value = self._omega0_closed(n) if n >= 0 else self._omega_negative(n, 0)
        elif n >= 1:
            value = self._diagonal_up(n, p)
        elif n == 0:
            value = self.exp_sum.get(-p + 1) / self.alpha2
        else:
            value = self._omega_negative(n, p)
        self._Omega[key] = value
        return value

    def _omega0_closed(self, n: int) -> float:
        # Omega_n0 = n! sum_{j=0}^{n} E_{j+1}(alpha1+alpha2) / ((n-j)! alpha2^(j+1));
        # exact finite sum of positive terms.
        coeff = 1.0 / self.alpha2
        terms = []
        for j in range(n + 1):
            term = coeff * self.exp_sum.get(j + 1)
            if not math.isfinite(term):
                return math.inf
            terms.append(term)
            coeff *= (n - j) / self.alpha2
        return math.fsum(terms)

    def _omega0_upward(self, n: int) -> float:
        # Alternate route used as a cross-check: upward recursion
        # Omega_{m,0} = e^-alpha1 E_{1-m}(alpha2)/alpha2 - (alpha1/alpha2) Omega_{m-1,0}
        # (stable while alpha1/m stays below 1).
        value = self.exp_sum.get(1) / self.alpha2
        for m in range(1, n + 1):
            value = (
                self._ema1 * self.exp_a2.get(1 - m) / self.alpha2
                - (self.alpha1 / self.alpha2) * value
            )
            if not math.isfinite(value):
                return math.inf
        return value

    def _diagonal_up(self, n: int, p: int) -> float:
        # Omega_np = (n/alpha2) Omega_{n-1,p-1} + E_{-p+1}(alpha1+alpha2)/alpha2,
        # walked up the diagonal from the exact base at n-p <= 0 or p = 0;
        # all coefficients are positive.
        steps = min(n, p)
        base = self.Omega(n - steps, p - steps)
        if not math.isfinite(base):
            return math.inf
        value = base
        for j in range(steps - 1, -1, -1):
            nn, pp = n - j, p - j
            seed = self.exp_sum.get(-pp + 1)
            if not math.isfinite(seed) or not math.isfinite(value):
                return math.inf
            value = (nn * value + seed) / self.alpha2
        return value

    def _omega_negative(self, n: int, p: int) -> float:
        # n <= -1: integrate t^n E_{-p}(alpha1 + alpha2 t) directly on
        # geometrically widening panels.  Recurrences that relate Omega_np
        # across (n, p) all subtract like-sized quantities when
        # alpha1 ~ alpha2 and amplify roundoff by an order of magnitude per
        # p level, whereas the integrand itself is positive and smooth, so
        # quadrature is exact to the working precision everywhere.
        a1, a2 = self.alpha1, self.alpha2
        p_fact = float(math.factorial(p))

        def integrand(t: float) -> float:
            # E_{-p}(z) = p! e^-z z^-(p+1) sum_{k<=p} z^k/k! for z > 0.
            z = a1 + a2 * t
            s = 1.0
            term = 1.0
            for k in range(1, p + 1):
                term *= z / k
                s += term
            return (t ** n) * p_fact * math.exp(-z) * s / z ** (p + 1)

        # The integrand falls off like t^n e^(-alpha2 t), so its width past
        # t = 1 is ~ 1/(|n| + alpha2); doubling panel sizes then cover any
        # remaining slow tail in a few dozen panels at most.
        h = 1.0 / (-n + a2 + p + 1.0)
        t0 = 1.0
        parts = []
        total = 0.0
        while True:
            part = _gauss64(integrand, t0, t0 + h)
            parts.append(part)
            total += part
            if part <= 1e-18 * total:
                return math.fsum(parts)
            t0 += h
            h *= 2.0


def omega(n: int, p: int, alpha1: float, alpha2: float) -> float:
    """omega_np = integral_0^1 t^n E_{-p}(alpha1 + alpha2 t) dt."""
    return BasicIntegralCache(alpha1, alpha2).omega(n, p)


def Omega(n: int, p: int, alpha1: float, alpha2: float) -> float:
    """Omega_np = integral_1^inf t^n E_{-p}(alpha1 + alpha2 t) dt.

    Raises OverflowError when the value exceeds the float64 range.
    """
    value = BasicIntegralCache(alpha1, alpha2).Omega(n, p)
    if not math.isfinite(value):
        raise OverflowError(
            f"Omega({n},{p}) at alpha1={alpha1}, alpha2={alpha2} overflows"
        )
    return value


def tau_coeff(m: int, mu: int, p: int, alpha1: float, alpha2: float) -> float:
    """tau_m = sum_k (-1)^(m-k) S_mk/k! (alpha2/2)^(2k) omega_{mu+2k,p};
    tau_0 = omega_{mu,p}."""
    cache = BasicIntegralCache(alpha1, alpha2)
    table = ScaledWeightTable(alpha2, 1.0)
    return table.signed_sum(m, lambda k: cache.omega(mu + 2 * k, p))


def T_coeff(m: int, mu: int, p: int, alpha1: float, alpha2: float) -> float:
    """T_m = sum_k (-1)^(m-k) S_mk/k! (alpha2/2)^(2k) Omega_{2k-mu-1,p};
    T_0 = Omega_{-mu-1,p}."""
    cache = BasicIntegralCache(alpha1, alpha2)
    table = ScaledWeightTable(alpha2, 1.0)
    return table.signed_sum(m, lambda k: cache.Omega(2 * k - mu - 1, p))


class _WCoefficients:
    """Lazy scaled tau/T/b streams for the sigma = 0, p2 = 0 series."""

    def __init__(self, p: int, alpha1: float, alpha2: float, mu: int):
        self.p = p
        self.mu = mu
        self.x = 1.0 / (mu + 0.5)
        self.cache = BasicIntegralCache(alpha1, alpha2)
        self.table = ScaledWeightTable(alpha2, self.x)
        self._tau: list[float] = []
        self._T: list[float] = []

    def tau_tilde(self, m: int) -> float:
        while len(self._tau) <= m:
            order = len(self._tau)
            self._tau.append(
                self.table.signed_sum(
                    order, lambda k: self.cache.omega(self.mu + 2 * k, self.p)
                )
            )
        return self._tau[m]

    def T_tilde(self, m: int) -> float:
        while len(self._T) <= m:
            order = len(self._T)
            self._T.append(
                self.table.signed_sum(
                    order, lambda k: self.cache.Omega(2 * k - self.mu - 1, self.p)
                )
            )
        return self._T[m]

    def d_tilde(self, s: int) -> float:
        sign_s = 1.0 if s % 2 == 0 else -1.0
        return safe_fsum(
            (self.table.b_tilde(s - l) if l % 2 == 0 else -self.table.b_tilde(s - l))
            * (self.T_tilde(l) + sign_s * self.tau_tilde(l))
            for l in range(s + 1)
        )


def w_large_order(
    p: int,
    alpha1: float,
    alpha2: float,
    mu: int,
    settings: ExpansionSettings | None = None,
) -> SeriesOutcome:
    """W_mu(p1 = p, p2 = 0, sigma = 0) by the large-order series."""
    if p < 0 or mu < 0:
        raise ValueError(f"p and mu must be nonnegative, got p={p}, mu={mu}")
    coeffs = _WCoefficients(p, alpha1, alpha2, mu)
    outcome = sum_series((coeffs.d_tilde(s) for s in count()), settings)
    return outcome.scaled(1.0 / (2 * mu + 1))


# ---------------------------------------------------------------------------
# general p2 via jets in alpha2
# ---------------------------------------------------------------------------

class _JetWeightTable:
    """ScaledWeightTable whose entries are jets in alpha2.

    The weight recursion is identical, but (z/2)^2 becomes the quadratic jet
    ((alpha2+h)/2)^2 = (alpha2/2)^2 + (alpha2/2) h + h^2/4, so each u_{m,k}
    carries its own alpha2-derivatives.
    """

    def __init__(self, alpha2: float, x: float, order: int):
        self.x = x
        self.order = order
        y = [0.0] * (order + 1)
        y[0] = (alpha2 / 2.0) ** 2
        if order >= 1:
            y[1] = alpha2 / 2.0
        if order >= 2:
            y[2] = 0.25
        self._y = Jet(y)
        self._rows: list[list[Jet]] = [[Jet.constant(1.0, order)]]
        self._b: list[Jet] = [Jet.constant(1.0, order)]

    def row(self, m: int) -> list[Jet]:
        rows = self._rows
        while len(rows) <= m:
            mm = len(rows)
            prev = rows[mm - 1]
            zero = Jet.constant(0.0, self.order)
            new = [zero] * (mm + 1)
            for k in range(1, mm + 1):
                left = prev[k - 1] * self._y * (1.0 / k)
                right = prev[k] * float(k) if k < mm else zero
                new[k] = (left + right) * self.x
            rows.append(new)
        return rows[m]

    def signed_sum(self, m: int, f) -> Jet:
        if m == 0:
            return f(0)
        row = self.row(m)
        acc = Jet.constant(0.0, self.order)
        for k in range(1, m + 1):
            contrib = row[k] * f(k)
            acc = acc + contrib if (m - k) % 2 == 0 else acc - contrib
        return acc

    def b_tilde(self, m: int) -> Jet:
        b = self._b
        one = Jet.constant(1.0, self.order)
        while len(b) <= m:
            b.append(self.signed_sum(len(b), lambda _k: one))
        return b[m]


class _WJetCoefficients:
    """tau/T/b streams as jets in alpha2, for p2-differentiation.

    The basic-integral jets are exact: the j-th alpha2-derivative of
    omega_np is (-1)^j omega_{n+j,p+j} (and likewise for Omega), so jet
    coefficient j is (-1)^j omega_{n+j,p+j} / j!.
    """

    def __init__(self, p1: int, alpha1: float, alpha2: float, mu: int, order: int):
        self.p1 = p1
        self.mu = mu
        self.order = order
        self.x = 1.0 / (mu + 0.5)
        self.cache = BasicIntegralCache(alpha1, alpha2)
        self.table = _JetWeightTable(alpha2, self.x, order)
        self._tau: list[Jet] = []
        self._T: list[Jet] = []
        self._fact = [math.factorial(j) for j in range(order + 1)]

    def _omega_jet(self, n: int) -> Jet:
        return Jet(
            (-1.0 if j % 2 else 1.0) * self.cache.omega(n + j, self.p1 + j) / self._fact[j]
            for j in range(self.order + 1)
        )

    def _Omega_jet(self, n: int) -> Jet:
        return Jet(
            (-1.0 if j % 2 else 1.0) * self.cache.Omega(n + j, self.p1 + j) / self._fact[j]
            for j in range(self.order + 1)
        )

    def tau_tilde(self, m: int) -> Jet:
        while len(self._tau) <= m:
            order = len(self._tau)
            self._tau.append(
                self.table.signed_sum(order, lambda k: self._omega_jet(self.mu + 2 * k))
            )
        return self._tau[m]

    def T_tilde(self, m: int) -> Jet:
        while len(self._T) <= m:
            order = len(self._T)
            self._T.append(
                self.table.signed_sum(order, lambda k: self._Omega_jet(2 * k - self.mu - 1))
            )
        return self._T[m]

    def d_tilde(self, s: int) -> Jet:
        acc = Jet.constant(0.0, self.order)
        for l in range(s + 1):
            b = self.table.b_tilde(s - l)
            lam = self.T_tilde(l)
            tau = self.tau_tilde(l)
            inner = lam + tau if s % 2 == 0 else lam - tau
            contrib = b * inner
            acc = acc + contrib if l % 2 == 0 else acc - contrib
        return acc


def w_general(
    p1: int,
    p2: int,
    alpha1: float,
    alpha2: float,
    mu: int,
    settings: ExpansionSettings | None = None,
) -> SeriesOutcome:
    """W_mu(p1, p2, sigma = 0) by alpha2-differentiation of the series:

    W(p1, p2) = (-1)^p2 d^p2/d alpha2^p2 W(p1, 0), with the derivatives
    carried symbolically through the coefficient recursions by jets.
    """
    if p2 < 0 or p1 < 0:
        raise ValueError(f"p1 and p2 must be nonnegative, got ({p1}, {p2})")
    if p2 > P2_MAX:
        raise ValueError(f"p2={p2} beyond the supported differentiation depth {P2_MAX}")
    if p2 == 0:
        return w_large_order(p1, alpha1, alpha2, mu, settings)
    s = settings or ExpansionSettings()
    coeffs = _WJetCoefficients(p1, alpha1, alpha2, mu, p2)

    total = [0.0] * (p2 + 1)
    consecutive = 0
    best_rel = math.inf
    best_value = 0.0
    best_count = 0
    window: list[float] = []
    prev_min: float | None = None
    candidate: SeriesOutcome | None = None
    deadline = 0
    sign = 1.0 if p2 % 2 == 0 else -1.0
    scale = sign * math.factorial(p2) / (2 * mu + 1)

    def diverged(reason: str) -> SeriesOutcome:
        return SeriesOutcome(
            value=best_value,
            terms_used=best_count,
            converged=False,
            est_rel_error=best_rel,
            diverged=True,
            reason=reason,
        )

    for m in range(s.max_terms):
        if candidate is not None and m >= deadline:
            return candidate
        term = coeffs.d_tilde(m)
        if not term.isfinite():
            if candidate is not None:
                return diverged("terms rebounded after apparent convergence")
            return diverged("term overflow")
        for j in range(p2 + 1):
            total[j] += term.c[j]
        rel = max(
            abs(term.c[j]) / max(abs(total[j]), 1e-300) for j in range(p2 + 1)
        )
        if rel < best_rel:
            best_rel = rel
            best_value = scale * (total[p2] - term.c[p2])
            best_count = m
        if candidate is None:
            if rel <= s.rel_tol:
                consecutive += 1
                if consecutive >= CONSECUTIVE_BELOW:
                    # Same confirmation scan as sum_series: only trust the
                    # stop if the windowed-minimum detector stays quiet for
                    # as many terms again as the stop took.
                    candidate = SeriesOutcome(
                        value=scale * total[p2],
                        terms_used=m + 1 - CONSECUTIVE_BELOW,
                        converged=True,
                        est_rel_error=rel,
                    )
                    deadline = (m + 1) + max(s.divergence_window, m + 1)
            else:
                consecutive = 0
        window.append(rel)
        if len(window) == s.divergence_window:
            cur_min = min(window)
            if prev_min is not None and cur_min >= prev_min and cur_min > 0.0:
                if candidate is not None:
                    return diverged("terms rebounded after apparent convergence")
                return diverged("terms stopped decreasing")
            prev_min = cur_min
            window = []
    if candidate is not None:
        return candidate
    return diverged(f"term cap {s.max_terms} reached")


# ---------------------------------------------------------------------------
# sigma raising
# ---------------------------------------------------------------------------

def raise_sigma_w(
    w_table: dict[tuple[int, int, int], float], sigma: int
) -> dict[tuple[int, int, int], float]:
    """One sigma-raising step on a table {(mu, p1, p2): W_mu^sigma(...)}:

    W_mu^(sigma+1)(p1,p2) =
        (mu-sigma)(mu-sigma+1)^2/(2mu+1) * W_{mu+1}^sigma(p1,p2)
      - (mu-sigma)(mu+sigma+1)          * W_mu^sigma(p1+1,p2+1)
      + (mu+sigma+1)(mu+sigma)^2/(2mu+1) * W_{mu-1}^sigma(p1,p2)

    Entries are produced for every (mu, p1, p2) with mu > sigma whose three
    source entries are present.
    """
    out: dict[tuple[int, int, int], float] = {}
    for (mu, p1, p2) in w_table:
        if mu <= sigma:
            continue
        up = w_table.get((mu + 1, p1, p2))
        mid = w_table.get((mu, p1 + 1, p2 + 1))
        down = w_table.get((mu - 1, p1, p2))
        if up is None or mid is None or down is None:
            continue
        out[(mu, p1, p2)] = (
            (mu - sigma) * (mu - sigma + 1) ** 2 / (2 * mu + 1) * up
            - (mu - sigma) * (mu + sigma + 1) * mid
            + (mu + sigma + 1) * (mu + sigma) ** 2 / (2 * mu + 1) * down
        )
    return out


def w_sigma(
    mu: int,
    sigma: int,
    p1: int,
    p2: int,
    alpha1: float,
    alpha2: float,
    settings: ExpansionSettings | None = None,
) -> SeriesOutcome:
    """W_mu^sigma(p1, p2) via w_general plus sigma-raising.

    Builds the pyramid of sigma = 0 values W_{mu'}(p1+j, p2+j) for
    mu' in [mu-sigma, mu+sigma] and j <= sigma, then applies raise_sigma_w
    sigma times.  All component series must converge.
    """
    WParams(p1=p1, p2=p2, sigma=sigma, alpha1=alpha1, alpha2=alpha2, mu=mu)
    if sigma == 0:
        return w_general(p1, p2, alpha1, alpha2, mu, settings)
    table: dict[tuple[int, int, int], float] = {}
    max_terms = 0
    max_err = 0.0
    for dmu in range(-sigma, sigma + 1):
        mu_src = mu + dmu
        for j in range(sigma + 1):
            if mu_src < 0 or abs(dmu) + j > sigma:
                continue
            outcome = w_general(p1 + j, p2 + j, alpha1, alpha2, mu_src, settings)
            if not outcome.converged:
                return SeriesOutcome(
                    value=math.nan,
                    terms_used=outcome.terms_used,
                    converged=False,
                    est_rel_error=math.inf,
                    diverged=True,
                    reason=f"component series failed at mu={mu_src}, "
                    f"p=({p1 + j},{p2 + j}): {outcome.reason}",
                )
            table[(mu_src, p1 + j, p2 + j)] = outcome.value
            max_terms = max(max_terms, outcome.terms_used)
            max_err = max(max_err, outcome.est_rel_error)
    for level in range(sigma):
        table = raise_sigma_w(table, level)
    value = table[(mu, p1, p2)]
    return SeriesOutcome(
        value=value,
        terms_used=max_terms,
        converged=True,
        est_rel_error=max_err,
    )
