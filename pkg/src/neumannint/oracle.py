"""Arbitrary-precision oracle for every fast-path quantity in this package.

Values are computed with mpmath directly from the defining integrals
(adaptive tanh-sinh quadrature over hand-chosen segment lists) or from
mpmath's special functions, at a working precision far beyond float64.
`certify` reruns any value with ten extra working digits - which tightens
every internal quadrature tolerance by ten orders of magnitude, strictly
stronger than halving it - and requires the relative shift to stay below
10^-target_digits.

Parameter values may be passed as strings ("0.1") to pin the exact decimal
point being evaluated rather than its float64 rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from functools import lru_cache

from mpmath import mp

from .legutil import weighted_deriv_coeffs
from .wmu import WParams, raise_sigma_w


@dataclass(frozen=True)
class OracleConfig:
    """Precision policy: working digits, certified digits, quad depth."""

    working_digits: int = 50
    target_digits: int = 30
    max_subdivisions: int = 10

    def __post_init__(self):
        if self.working_digits < self.target_digits + 10:
            raise ValueError("working_digits must exceed target_digits + 10")

    def halved(self) -> "OracleConfig":
        """A config at least twice as strict: one extra working digit
        tightens every derived quadrature tolerance tenfold, which bounds
        from above what exact tolerance-halving could change."""
        return replace(self, working_digits=self.working_digits + 1)


DEFAULT_CONFIG = OracleConfig()


@dataclass
class CertifiedValue:
    """A value that survived the +10-digit recomputation check."""

    value: float
    text: str
    rel_shift: float
    ok: bool


# ---------------------------------------------------------------------------
# scalar building blocks (ambient mp.dps applies)
# ---------------------------------------------------------------------------

def _En(n: int, z):
    if n >= 1:
        return mp.expint(n, z)
    m = -n
    return mp.gammainc(m + 1, z) / z ** (m + 1)


def _an(n: int, z):
    if z == 0:
        return mp.mpf(1) / (n + 1)
    return mp.gammainc(n + 1, 0, z) / z ** (n + 1)


def _sph_i(mu: int, z):
    return mp.besseli(mu + mp.mpf(1) / 2, z) * mp.sqrt(mp.pi / (2 * z))


def _sph_k(mu: int, z):
    return mp.besselk(mu + mp.mpf(1) / 2, z) * mp.sqrt(mp.pi / (2 * z))


def _q0_list(lmax: int, x):
    """[Q_0(x), ..., Q_lmax(x)] for x > 1.

    Upward value recurrence (with digit headroom against its e^(2 l t)
    error growth, t = acosh x) while l*t stays small; otherwise the
    downward ratio continued fraction, whose contamination damps by
    e^(-2t) per step.
    """
    t = mp.acosh(x)
    tf = float(t)
    if lmax * tf <= 30.0:
        headroom = int(2 * lmax * tf / math.log(10)) + 10
        with mp.extradps(headroom):
            vals = [mp.log((x + 1) / (x - 1)) / 2]
            if lmax >= 1:
                vals.append(x * vals[0] - 1)
            for l in range(1, lmax):
                vals.append(((2 * l + 1) * x * vals[l] - l * vals[l - 1]) / (l + 1))
        return vals
    extra = int(mp.dps * math.log(10) / (2 * tf)) + 30
    ratios = [mp.mpf(0)] * max(lmax, 1)
    r = x - mp.sqrt(x * x - 1)
    for l in range(lmax + extra, 0, -1):
        r = l / ((2 * l + 1) * x - (l + 1) * r)
        if l - 1 < lmax:
            ratios[l - 1] = r
    vals = [mp.log((x + 1) / (x - 1)) / 2]
    for l in range(lmax):
        vals.append(ratios[l] * vals[l])
    return vals


def _q_sigma(mu: int, sigma: int, x):
    """Q_mu^sigma(x) for x > 1, convention Q^sigma = (x^2-1)^(sigma/2) d^sigma Q."""
    vals = _q0_list(mu, x)
    if sigma == 0:
        return vals[mu]
    s = mp.sqrt(x * x - 1)
    level = vals
    for m in range(sigma):
        nxt = [mp.mpf(0)] * (mu + 1)
        for l in range(m + 1, mu + 1):
            nxt[l] = ((l - m) * x * level[l] - (l + m) * level[l - 1]) / s
        level = nxt
    return level[mu]


# ---------------------------------------------------------------------------
# quadrature scaffolding
# ---------------------------------------------------------------------------

def _tail_cutoff(rate: float, power: float, dps: int) -> float:
    """X where t^power e^(-rate t) has dropped 10^(dps+5)-fold from its peak."""
    target = (dps + 5) * math.log(10)
    t_pk = max(1.0, power / rate) if power > 0 else 1.0
    x = t_pk + target / rate
    for _ in range(4):
        growth = max(power, 0.0) * math.log(x / t_pk)
        x = t_pk + (target + growth) / rate
    return x


def _points_from(a, x_cut, scale):
    """Segment boundaries geometrically clustered toward the endpoint a."""
    pts = [mp.mpf(a)]
    step = scale
    while float(a) + step < 0.98 * x_cut:
        pts.append(a + mp.mpf(step))
        step *= 4
    pts.append(mp.mpf(x_cut))
    return pts


def _prescale(f, sample_xs):
    """Rescale f by an exact power of two so its sampled peak is O(1).

    mp.quad's convergence thresholds behave absolutely, so an integrand
    whose values sit many orders of magnitude below 1 comes back with a
    correspondingly degraded relative error (measured: ~1e-10 relative on a
    perfectly smooth panel whose integrand peaked near 1e-46).  Scaling by
    2^-e is exact in binary floating point, so it costs no accuracy.
    """
    peak = max((abs(f(x)) for x in sample_xs), default=mp.mpf(0))
    if peak == 0:
        return f, mp.mpf(1)
    e = mp.mag(peak)
    if -2 <= e <= 2:
        return f, mp.mpf(1)
    s = mp.mpf(2) ** (1 - int(e))
    return (lambda x: f(x) * s), s


def _quad(f, points, cfg: OracleConfig):
    xs = []
    for a, b in zip(points[:-2], points[1:-1]):
        xs.append(a + (b - a) / 2)
        if len(xs) >= 3:
            break
    xs.append(points[0] + (points[1] - points[0]) / mp.mpf(10))
    g, s = _prescale(f, xs)
    return mp.quad(g, points, maxdegree=cfg.max_subdivisions) / s


def _panel_quad(f, z0, rate, cfg: OracleConfig, efolds_per_panel=3.0, peak_hints=()):
    """Integrate f from z0 to infinity on panels sized to the local scale.

    rate(z) bounds |d ln f / dz|, so each panel spans about
    efolds_per_panel e-folds and the tanh-sinh rule per panel sees a gently
    varying integrand.  (A single mp.quad call across a sharply decaying
    integrand stalls near 1e-10 relative: the level-doubling error estimate
    settles on the wrong value when almost all nodes land where the
    integrand has already died.)  Stops when a panel contributes below
    10^-(working_digits + 8) of the running total; peak_hints lets callers
    whose integrand peaks away from z0 seed the prescaling samples.
    """
    z = mp.mpf(z0)
    w0 = efolds_per_panel / max(rate(float(z)), 1e-2)
    samples = [z + w0 / 4, z + w0] + [mp.mpf(h) for h in peak_hints]
    g, s = _prescale(f, samples)
    total = []
    floor = mp.mpf(10) ** (-cfg.working_digits - 8)
    for _ in range(600):
        width = efolds_per_panel / max(rate(float(z)), 1e-2)
        part = mp.quad(g, [z, z + width], maxdegree=cfg.max_subdivisions)
        total.append(part)
        z += width
        if abs(part) <= abs(mp.fsum(total)) * floor:
            return mp.fsum(total) / s
    raise ArithmeticError("panel quadrature failed to exhaust the tail")


# ---------------------------------------------------------------------------
# L-side oracles
# ---------------------------------------------------------------------------

def oracle_L(mu: int, sigma: int = 0, p: int = 0, alpha=1.0, cfg: OracleConfig | None = None):
    """L_mu^sigma(p, alpha) by direct quadrature of its definition."""
    cfg = cfg or DEFAULT_CONFIG
    if sigma > mu or sigma < 0 or p < 0:
        raise ValueError(f"bad indices mu={mu}, sigma={sigma}, p={p}")
    with mp.workdps(cfg.working_digits):
        a = mp.mpf(alpha)
        norm = mp.factorial(mu - sigma) / mp.factorial(mu + sigma)
        half_sigma = mp.mpf(sigma) / 2

        def f(xi):
            if xi <= 1:
                return mp.mpf(0)
            value = _q_sigma(mu, sigma, xi) * xi ** p * mp.exp(-a * xi)
            if sigma:
                value *= (xi * xi - 1) ** half_sigma
            return value

        x_cut = _tail_cutoff(float(a), p + sigma, cfg.working_digits)
        points = _points_from(1, max(x_cut, 1.5), 0.25 / max(float(a), mu, 1.0))
        return norm * _quad(f, points, cfg)


def oracle_I_factor(mu: int, alpha, cfg: OracleConfig | None = None):
    """(2/pi) integral_0^alpha e^-z i_mu(z) dz (the k_mu-multiplying factor).

    Integrating the power series of i_mu term by term gives a sum of lower
    incomplete gammas with all-positive terms,

        sum_k gamma(mu+2k+1, alpha) / (2^k k! (2mu+2k+1)!!),

    which tanh-sinh quadrature of the sharply endpoint-weighted integrand
    cannot match (its level-doubling error estimate stalls around 1e-10 for
    z^n weights with n ~ 50+).
    """
    cfg = cfg or DEFAULT_CONFIG
    with mp.workdps(cfg.working_digits):
        a = mp.mpf(alpha)
        floor = mp.mpf(10) ** (-cfg.working_digits - 5)
        total = mp.mpf(0)
        for k in range(2000):
            term = mp.gammainc(mu + 2 * k + 1, 0, a) / (
                2 ** k * mp.factorial(k) * mp.fac2(2 * mu + 2 * k + 1)
            )
            total += term
            if k > 2 and term < total * floor:
                return 2 / mp.pi * total
        raise ArithmeticError(
            f"I-factor series did not settle for mu={mu}, alpha={alpha}"
        )


def oracle_K_factor(mu: int, alpha, cfg: OracleConfig | None = None):
    """(2/pi) integral_alpha^inf e^-z k_mu(z) dz (the i_mu-multiplying factor).

    k_mu(z) is (pi/2) e^-z times a polynomial in 1/z, so the integral is the
    exact finite sum  sum_{j<=mu} (mu+j)!/(j!(mu-j)!) (2 alpha)^-j E_{j+1}(2 alpha)
    (the pi/2 cancels the 2/pi prefactor); every term is positive.
    """
    cfg = cfg or DEFAULT_CONFIG
    with mp.workdps(cfg.working_digits):
        a = mp.mpf(alpha)
        return mp.fsum(
            mp.factorial(mu + j)
            / (mp.factorial(j) * mp.factorial(mu - j))
            * (2 * a) ** (-j)
            * mp.expint(j + 1, 2 * a)
            for j in range(mu + 1)
        )


def oracle_L_from_split(mu: int, alpha, cfg: OracleConfig | None = None):
    """Cross-route for L_mu(alpha): K_mu(alpha) i_mu(alpha) + I_mu(alpha) k_mu(alpha)."""
    cfg = cfg or DEFAULT_CONFIG
    with mp.workdps(cfg.working_digits):
        a = mp.mpf(alpha)
        return oracle_K_factor(mu, a, cfg) * _sph_i(mu, a) + oracle_I_factor(
            mu, a, cfg
        ) * _sph_k(mu, a)


# ---------------------------------------------------------------------------
# W-side oracles
# ---------------------------------------------------------------------------

def _jet_mul(a: list, b: list, order: int) -> list:
    return [
        mp.fsum(a[i] * b[j - i] for i in range(j + 1) if i < len(a) and j - i < len(b))
        for j in range(order + 1)
    ]


def _bessel_jet(mu: int, z, c0, c1, order: int) -> list:
    # Taylor coefficients of a solution of z^2 f'' + 2 z f' - (mu(mu+1)+z^2) f = 0
    # around z, given f and f'.
    c = [c0, c1]
    lam = mp.mpf(mu * (mu + 1))
    for j in range(order - 1):
        low = c[j - 2] if j >= 2 else mp.mpf(0)
        c_jm1 = c[j - 1] if j >= 1 else mp.mpf(0)
        num = (
            2 * z * (j + 1) * j * c[j + 1]
            + j * (j - 1) * c[j]
            + 2 * z * (j + 1) * c[j + 1]
            + 2 * j * c[j]
            - (lam + z * z) * c[j]
            - 2 * z * c_jm1
            - low
        )
        c.append(-num / (z * z * (j + 2) * (j + 1)))
    return c[: order + 1]


def _w_jets_1d(mu: int, p: int, a1, a2, order: int, cfg: OracleConfig) -> list:
    """Taylor coefficients in alpha2 of W_mu(p, 0; alpha1, alpha2), from the
    exact factor split W = K(alpha2) i_mu(alpha2) + I(alpha2) k_mu(alpha2) with

        K(a) = (2/pi) integral_a^inf  k_mu(z) E_-p(alpha1+z) dz
        I(a) = (2/pi) integral_0^a    i_mu(z) E_-p(alpha1+z) dz

    K' = -(2/pi) k_mu E_-p and I' = (2/pi) i_mu E_-p close the derivative
    chain, so every coefficient is analytic (no finite differences).
    """
    def k_integrand(z):
        return _sph_k(mu, z) * _En(-p, a1 + z)

    # k_mu(z) E_-p falls off like z^-(mu+1) e^-2z (power-law boundary layer
    # of width ~ a2/(mu+1) at the left endpoint, then exponential decay).
    kfac = 2 / mp.pi * _panel_quad(
        k_integrand, a2, lambda z: (mu + 1) / z + 2.0, cfg
    )

    # i_mu(z) E_-p concentrates all its mass within ~ a2/(mu+1) of the upper
    # limit; substituting z = a2 e^-v turns that layer into a plain e^-(mu+1)v
    # decay on v >= 0 that the same panel strategy resolves.
    def i_integrand_v(v):
        z = a2 * mp.exp(-v)
        return _sph_i(mu, z) * _En(-p, a1 + z) * z

    ifac = 2 / mp.pi * _panel_quad(
        i_integrand_v, 0, lambda v: mu + 1.0, cfg
    )
    i_val = _sph_i(mu, a2)
    k_val = _sph_k(mu, a2)
    if mu == 0:
        i_prime = _sph_i(1, a2)
        k_prime = -_sph_k(1, a2)
    else:
        i_prime = _sph_i(mu - 1, a2) - (mu + 1) / a2 * i_val
        k_prime = -_sph_k(mu - 1, a2) - (mu + 1) / a2 * k_val
    if order == 0:
        return [kfac * i_val + ifac * k_val]

    i_jet = _bessel_jet(mu, a2, i_val, i_prime, order)
    k_jet = _bessel_jet(mu, a2, k_val, k_prime, order)
    e_jet = [
        (-1) ** j * _En(-p - j, a1 + a2) / mp.factorial(j) for j in range(order + 1)
    ]
    ke = _jet_mul(k_jet, e_jet, order - 1)
    ie = _jet_mul(i_jet, e_jet, order - 1)
    kfac_jet = [kfac] + [-(2 / mp.pi) * ke[j] / (j + 1) for j in range(order)]
    ifac_jet = [ifac] + [(2 / mp.pi) * ie[j] / (j + 1) for j in range(order)]
    return [
        a + b
        for a, b in zip(
            _jet_mul(kfac_jet, i_jet, order), _jet_mul(ifac_jet, k_jet, order)
        )
    ]


def _w_half_2d(p_out: int, p_in: int, sigma: int, a_out, a_in, mu: int, cfg: OracleConfig):
    """One ordered half of the 2D definition: the outer Q-side integral over
    xi_out in (1, inf) of the inner P-side integral over (1, xi_out)."""
    poly = weighted_deriv_coeffs(mu, sigma, +1)
    coeffs = [mp.mpf(c.numerator) / c.denominator for c in poly]
    jmax = len(coeffs) - 1 + p_in
    # I_j(x) = integral_1^x t^j e^(-a_in t) dt
    #        = j!/a_in^(j+1) [e^-a_in e_j(a_in) - e^(-a_in x) e_j(a_in x)],
    # e_j(y) = sum_{i<=j} y^i/i!, evaluated cumulatively per node.
    e_at_a = []
    acc = mp.mpf(0)
    term = mp.mpf(1)
    for j in range(jmax + 1):
        acc += term
        e_at_a.append(acc)
        term = term * a_in / (j + 1)
    pref = []
    cur = 1 / a_in
    for j in range(jmax + 1):
        pref.append(cur)
        cur = cur * (j + 1) / a_in
    em_a = mp.exp(-a_in)
    half_sigma = mp.mpf(sigma) / 2

    def inner(x):
        y = a_in * x
        em_y = mp.exp(-y)
        total = mp.mpf(0)
        acc_y = mp.mpf(0)
        term_y = mp.mpf(1)
        for j in range(jmax + 1):
            acc_y += term_y
            if j >= p_in and coeffs[j - p_in]:
                total += coeffs[j - p_in] * pref[j] * (em_a * e_at_a[j] - em_y * acc_y)
            term_y = term_y * y / (j + 1)
        return total

    def f(x):
        if x <= 1:
            return mp.mpf(0)
        value = _q_sigma(mu, sigma, x) * x ** p_out * mp.exp(-a_out * x) * inner(x)
        if sigma:
            value *= (x * x - 1) ** half_sigma
        return value

    x_cut = _tail_cutoff(float(a_out), p_out + sigma, cfg.working_digits)
    points = _points_from(1, max(x_cut, 1.5), 0.25 / max(float(a_out), mu, 1.0))
    return _quad(f, points, cfg)


def oracle_W(params: WParams, cfg: OracleConfig | None = None, force_2d: bool = False):
    """W_mu^sigma(p1, p2, alpha1, alpha2) at oracle precision.

    sigma = 0 uses the exact factor-split route with analytic
    alpha2-derivative jets for p2 > 0; sigma > 0 (or force_2d) evaluates the
    symmetrized 2D definition directly.
    """
    cfg = cfg or DEFAULT_CONFIG
    if params.sigma == 0 and not force_2d:
        with mp.workdps(cfg.working_digits):
            a1 = mp.mpf(params.alpha1)
            a2 = mp.mpf(params.alpha2)
            jets = _w_jets_1d(params.mu, params.p1, a1, a2, params.p2, cfg)
            sign = -1 if params.p2 % 2 else 1
            return sign * mp.factorial(params.p2) * jets[params.p2]
    # The 2D route expands the Legendre factors in monomials, whose
    # coefficients alternate in sign and reach ~4^mu, so it loses O(mu)
    # digits internally.  Escalate the working precision until two
    # consecutive rounds agree to the target -- a self-certifying stop that
    # needs no a-priori loss model.
    prev = None
    wd = cfg.working_digits
    for _ in range(8):
        with mp.workdps(wd):
            a1 = mp.mpf(params.alpha1)
            a2 = mp.mpf(params.alpha2)
            boosted = replace(
                cfg,
                working_digits=wd,
                max_subdivisions=cfg.max_subdivisions
                + (wd - cfg.working_digits + 24) // 25,
            )
            value = _w_half_2d(
                params.p1, params.p2, params.sigma, a1, a2, params.mu, boosted
            ) + _w_half_2d(
                params.p2, params.p1, params.sigma, a2, a1, params.mu, boosted
            )
            if prev is not None and abs(value - prev) <= abs(value) * mp.mpf(
                10
            ) ** (-cfg.target_digits):
                return value
        prev = value
        wd += 30
    raise ArithmeticError(
        f"2D W quadrature failed to stabilize at mu={params.mu}, "
        f"sigma={params.sigma}"
    )


# ---------------------------------------------------------------------------
# basic-integral oracle
# ---------------------------------------------------------------------------

def oracle_basic(kind: str, cfg: OracleConfig | None = None, **kw):
    """Reference values for the scalar building blocks.

    kinds: 'En' (n, z), 'an' (n, z), 'omega'/'Omega' (n, p, alpha1, alpha2),
    'eta' (mu, sigma, q, beta), 'k' (mu, sigma, p, alpha),
    'I_mu'/'K_mu' (mu, alpha).
    """
    cfg = cfg or DEFAULT_CONFIG
    with mp.workdps(cfg.working_digits):
        if kind == "En":
            return _En(kw["n"], mp.mpf(kw["z"]))
        if kind == "an":
            return _an(kw["n"], mp.mpf(kw["z"]))
        if kind == "omega":
            n, p = kw["n"], kw["p"]
            a1, a2 = mp.mpf(kw["alpha1"]), mp.mpf(kw["alpha2"])
            fa1, fa2 = float(a1), float(a2)

            # t = e^-v turns the t^n weight into a plain e^-(n+1)v decay;
            # the remaining rate term bounds the E-factor's variation.  The
            # integrand peaks at t ~ (n+1)/alpha2 when that lies inside (0,1).
            def g(v):
                t = mp.exp(-v)
                return t ** (n + 1) * _En(-p, a1 + a2 * t)

            peak_v = math.log(fa2 / (n + 1)) if fa2 > n + 1 else 0.0
            return _panel_quad(
                g,
                0,
                lambda v: n + 1 + fa2 * math.exp(-v) * (1 + p / (fa1 + fa2 * math.exp(-v))),
                cfg,
                peak_hints=(peak_v,) if peak_v > 0 else (),
            )
        if kind == "Omega":
            n, p = kw["n"], kw["p"]
            a1, a2 = mp.mpf(kw["alpha1"]), mp.mpf(kw["alpha2"])
            fa1, fa2 = float(a1), float(a2)
            return _panel_quad(
                lambda t: t ** n * _En(-p, a1 + a2 * t),
                1,
                lambda t: abs(n) / t + fa2 * (1 + p / (fa1 + fa2 * t)),
                cfg,
            )
        if kind == "eta":
            return _oracle_eta(kw["mu"], kw["sigma"], kw["q"], mp.mpf(kw["beta"]), cfg)
        if kind == "k":
            return _oracle_k(kw["mu"], kw["sigma"], kw["p"], mp.mpf(kw["alpha"]), cfg)
        if kind == "I_mu":
            return oracle_I_factor(kw["mu"], mp.mpf(kw["alpha"]), cfg)
        if kind == "K_mu":
            return oracle_K_factor(kw["mu"], mp.mpf(kw["alpha"]), cfg)
    raise ValueError(f"unknown oracle kind {kind!r}")


def _oracle_eta(mu: int, sigma: int, q: int, beta, cfg: OracleConfig):
    # (-1)^mu/2 * (mu-sigma)!/(mu+sigma)! *
    #   integral_-1^1 P_mu^sigma(eta) (1-eta^2)^(sigma/2) eta^q e^(-beta eta),
    # the weighted polynomial part taken exactly from Fraction coefficients.
    poly = weighted_deriv_coeffs(mu, sigma, -1)
    coeffs = [mp.mpf(c.numerator) / c.denominator for c in poly]
    norm = mp.factorial(mu - sigma) / mp.factorial(mu + sigma) / 2
    if mu % 2:
        norm = -norm

    def f(eta):
        acc = mp.mpf(0)
        for c in reversed(coeffs):
            acc = acc * eta + c
        return acc * eta ** q * mp.exp(-beta * eta)

    return norm * _quad(f, [-1, 0, 1], cfg)


def _oracle_k(mu: int, sigma: int, p: int, alpha, cfg: OracleConfig):
    # (mu-sigma)!/(mu+sigma)! sum_j c_j E_{-(j+p)}(alpha), with c_j the exact
    # coefficients of (xi^2-1)^sigma d^sigma P_mu; cancellation is absorbed
    # by the working precision.
    poly = weighted_deriv_coeffs(mu, sigma, +1)
    norm = mp.factorial(mu - sigma) / mp.factorial(mu + sigma)
    total = mp.fsum(
        mp.mpf(c.numerator) / c.denominator * _En(-(j + p), mp.mpf(alpha))
        for j, c in enumerate(poly)
        if c
    )
    return norm * total


# ---------------------------------------------------------------------------
# ODE residuals (finite differences at oracle precision; independent of the
# analytic derivative identities used elsewhere)
# ---------------------------------------------------------------------------

def ode_residual_L(mu: int, alpha, cfg: OracleConfig | None = None):
    """Residual and inhomogeneity of
    alpha^2 L'' + 2 alpha L' - [mu(mu+1) + alpha^2] L = -e^-alpha
    with L = oracle_L(mu, 0, 0, .) and derivatives by central differences."""
    cfg = cfg or DEFAULT_CONFIG
    work = replace(cfg, working_digits=cfg.working_digits + 10)
    with mp.workdps(work.working_digits):
        a = mp.mpf(alpha)
        h = a * mp.mpf(10) ** (-(cfg.working_digits // 5))
        lm = oracle_L(mu, 0, 0, a - h, work)
        l0 = oracle_L(mu, 0, 0, a, work)
        lp = oracle_L(mu, 0, 0, a + h, work)
        d1 = (lp - lm) / (2 * h)
        d2 = (lp - 2 * l0 + lm) / (h * h)
        rhs = -mp.exp(-a)
        resid = a * a * d2 + 2 * a * d1 - (mu * (mu + 1) + a * a) * l0 - rhs
        return resid, rhs


def ode_residual_W(mu: int, p: int, alpha1, alpha2, cfg: OracleConfig | None = None):
    """Residual and inhomogeneity of
    a2^2 W'' + 2 a2 W' - [mu(mu+1) + a2^2] W = -E_-p(alpha1 + alpha2)
    (derivatives in alpha2) with W = oracle_W(p, 0, sigma=0) values."""
    cfg = cfg or DEFAULT_CONFIG
    work = replace(cfg, working_digits=cfg.working_digits + 10)
    with mp.workdps(work.working_digits):
        a1 = mp.mpf(alpha1)
        a2 = mp.mpf(alpha2)
        h = a2 * mp.mpf(10) ** (-(cfg.working_digits // 5))

        def w_at(a):
            return _w_jets_1d(mu, p, a1, a, 0, work)[0]

        wm = w_at(a2 - h)
        w0 = w_at(a2)
        wp = w_at(a2 + h)
        d1 = (wp - wm) / (2 * h)
        d2 = (wp - 2 * w0 + wm) / (h * h)
        rhs = -_En(-p, a1 + a2)
        resid = a2 * a2 * d2 + 2 * a2 * d1 - (mu * (mu + 1) + a2 * a2) * w0 - rhs
        return resid, rhs


# ---------------------------------------------------------------------------
# certification and float shims
# ---------------------------------------------------------------------------

def certify(fn, *args, cfg: OracleConfig | None = None, **kw) -> CertifiedValue:
    """Run an oracle function at working precision and again with 10 more
    digits; accept when the relative shift is below 10^-target_digits."""
    cfg = cfg or DEFAULT_CONFIG
    hi = replace(cfg, working_digits=cfg.working_digits + 10)
    v1 = fn(*args, cfg=cfg, **kw)
    v2 = fn(*args, cfg=hi, **kw)
    with mp.workdps(hi.working_digits):
        if v2 == 0:
            shift = abs(v2 - v1)
        else:
            shift = abs(v2 - v1) / abs(v2)
        ok = shift < mp.mpf(10) ** (-cfg.target_digits)
        text = mp.nstr(v2, cfg.target_digits)
    return CertifiedValue(value=float(v2), text=text, rel_shift=float(shift), ok=bool(ok))


_FLOAT_CFG = OracleConfig(working_digits=30, target_digits=15, max_subdivisions=8)


@lru_cache(maxsize=4096)
def oracle_w_float(
    mu: int, sigma: int, p1: int, p2: int, alpha1: float, alpha2: float
) -> float:
    """float64 W_mu^sigma(p1, p2) for the driver's low-mu path.

    sigma = 0 comes straight from the factor-split jets; sigma > 0 applies
    the sigma-raising recurrence to a pyramid of sigma = 0 values.
    """
    with mp.workdps(_FLOAT_CFG.working_digits):
        a1 = mp.mpf(alpha1)
        a2 = mp.mpf(alpha2)
        if sigma == 0:
            jets = _w_jets_1d(mu, p1, a1, a2, p2, _FLOAT_CFG)
            sign = -1 if p2 % 2 else 1
            return float(sign * mp.factorial(p2) * jets[p2])
        table: dict[tuple[int, int, int], float] = {}
        for dmu in range(-sigma, sigma + 1):
            mu_src = mu + dmu
            if mu_src < 0:
                continue
            for j in range(sigma - abs(dmu) + 1):
                jets = _w_jets_1d(mu_src, p1 + j, a1, a2, p2 + j, _FLOAT_CFG)
                sign = -1 if (p2 + j) % 2 else 1
                table[(mu_src, p1 + j, p2 + j)] = float(
                    sign * mp.factorial(p2 + j) * jets[p2 + j]
                )
        for level in range(sigma):
            table = raise_sigma_w(table, level)
        return table[(mu, p1, p2)]
