"""Scalar special functions everything else is built from.

Float64 implementations of

    E_n(z) = integral_1^inf t^(-n) e^(-z t) dt   (generalized exponential
                                                  integral, any integer n)
    a_n(z) = integral_0^1 t^n e^(-z t) dt        (exponential moments, n >= 0)
    psi(n)                                       (digamma at positive integers)
    S_mk                                         (Stirling numbers, 2nd kind)
    b_m(z) = sum_{k=1..m} (-1)^(m-k) S_mk/k! (z/2)^(2k),   b_0(z) = 1

plus the modified spherical Bessel functions i_mu(z), k_mu(z) (standard
recurrence paths and large-order series paths) and the scaled
Stirling-weighted tables that power all large-order expansions in this
package.
"""

from __future__ import annotations

import math
from itertools import count

from .series import ExpansionSettings, SeriesOutcome, sum_series

EULER_GAMMA = 0.5772156649015328606065121

# Capacity of the default Stirling/coefficient tables: the series term cap is
# 200, and coefficient orders never exceed the term index plus a small margin.
MAX_ORDER = 240


class CapacityError(Exception):
    """An order beyond a table's configured capacity was requested."""


def safe_fsum(terms):
    """math.fsum that degrades to inf/nan instead of raising on overflow."""
    try:
        return math.fsum(terms)
    except (OverflowError, ValueError):
        return math.inf


# ---------------------------------------------------------------------------
# double-double arithmetic
# ---------------------------------------------------------------------------
# The alternating Stirling-weighted sums below cancel badly once (z/2)^2
# outgrows the order index: at z = 30 the condition number of a single
# lambda/Lambda coefficient reaches ~1e10 by m = 50, which leaves six good
# digits in a float64 coefficient and ~1e-13 in the summed series.  The
# value and weight tables therefore carry ~31-digit double-double entries
# internally -- pairs (hi, lo) representing hi + lo with |lo| <= ulp(hi)/2 --
# and collapse to float64 only at their public boundaries.  Smooth one-
# parameter input errors (e.g. the rounding of e^-z itself) pass through the
# cancellations unamplified, so float-accurate anchors are fine; only the
# per-entry rounding noise has to go, and these error-free transforms
# (Knuth two-sum, Dekker split product) remove it.  Overflowing entries turn
# into inf/nan pairs, which every consumer already treats as divergence.

_SPLIT = 134217729.0  # 2**27 + 1, Veltkamp splitting constant


def _two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    t = s - a
    return s, (a - (s - t)) + (b - t)


def _two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    ah = _SPLIT * a
    ah -= ah - a
    al = a - ah
    bh = _SPLIT * b
    bh -= bh - b
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(x, y):
    s, e = _two_sum(x[0], y[0])
    e += x[1] + y[1]
    s2 = s + e
    return s2, e - (s2 - s)


def dd_add_f(x, a: float):
    s, e = _two_sum(x[0], a)
    e += x[1]
    s2 = s + e
    return s2, e - (s2 - s)


def dd_mul(x, y):
    p, e = _two_prod(x[0], y[0])
    e += x[0] * y[1] + x[1] * y[0]
    p2 = p + e
    return p2, e - (p2 - p)


def dd_mul_f(x, a: float):
    p, e = _two_prod(x[0], a)
    e += x[1] * a
    p2 = p + e
    return p2, e - (p2 - p)


def dd_div_f(x, a: float):
    q1 = x[0] / a
    p, e = _two_prod(q1, a)
    q2 = ((x[0] - p) + (x[1] - e)) / a
    s = q1 + q2
    return s, q2 - (s - q1)


def dd_div(x, y):
    q1 = x[0] / y[0]
    r = dd_add(x, dd_mul_f(y, -q1))
    q2 = r[0] / y[0]
    s = q1 + q2
    return s, q2 - (s - q1)


def dd_neg(x):
    return -x[0], -x[1]


def dd_float(x) -> float:
    hi, lo = x
    return hi if not math.isfinite(hi) else hi + lo


# ---------------------------------------------------------------------------
# generalized exponential integral E_n
# ---------------------------------------------------------------------------

def _exp_int_cf(n: int, z: float) -> float:
    # E_n(z) = e^-z * 1/(z+ n/(1+ 1/(z+ (n+1)/(1+ 2/(z+ ...)))))  for z >= 1.
    # Forward (Wallis) recurrence on the convergents; numerators and
    # denominators grow without bound, so both are rescaled by 1e-150
    # whenever they exceed 1e150.
    a_prev, a_cur = 1.0, 0.0
    b_prev, b_cur = 0.0, 1.0
    value = math.inf
    stable = 0

    def partial_quotients():
        yield 1.0, z
        for j in count():
            yield float(n + j), 1.0
            yield float(j + 1), z

    for num, den in partial_quotients():
        a_prev, a_cur = a_cur, den * a_cur + num * a_prev
        b_prev, b_cur = b_cur, den * b_cur + num * b_prev
        if abs(a_cur) > 1e150 or abs(b_cur) > 1e150:
            a_prev *= 1e-150
            a_cur *= 1e-150
            b_prev *= 1e-150
            b_cur *= 1e-150
        if b_cur != 0.0:
            new = a_cur / b_cur
            if abs(new - value) <= 1e-16 * abs(new):
                stable += 1
                if stable >= 2:
                    value = new
                    break
            else:
                stable = 0
            value = new
    return math.exp(-z) * value


def _exp_int_series(n: int, z: float) -> float:
    # Digamma-form series for n >= 1 and 0 < z < 1.
    total = ((-z) ** (n - 1) / math.factorial(n - 1)) * (digamma_int(n) - math.log(z))
    power = 1.0  # (-z)^k / k!
    for k in range(0, 400):
        if k != n - 1:
            contrib = power / (1 - n + k)
            total -= contrib
            if k > n and abs(contrib) <= 1e-18 * abs(total):
                return total
        power *= -z / (k + 1)
    raise ArithmeticError(f"series for E_{n}({z}) did not settle")


class ExpIntTable:
    """Growable table of E_n(z) at fixed z, filled in the stable directions.

    One anchor value at n0 = max(1, ceil(z)) (continued fraction for z >= 1,
    digamma series for z < 1) is extended upward via
    E_{n+1} = (e^-z - z E_n)/n (stable for n >= z) and downward via
    E_{n-1} = (e^-z - (n-1) E_n)/z (stable for n <= z; for n <= 0 every
    coefficient is positive so relative errors cannot outgrow the values).
    Both walks run in double-double so the values can feed the cancellation-
    prone Stirling-weighted sums; get() collapses to float64, get_dd() hands
    out the pairs.  Entries that exceed the float range are stored as inf;
    callers treat non-finite values as divergence signals.
    """

    def __init__(self, z: float):
        if z <= 0:
            raise ValueError(f"E_n(z) requires z > 0, got z={z}")
        self.z = float(z)
        self._emz = math.exp(-self.z)
        n0 = max(1, math.ceil(self.z))
        anchor = _exp_int_series(n0, self.z) if self.z < 1.0 else _exp_int_cf(n0, self.z)
        self._vals = {n0: (anchor, 0.0)}
        self._n_lo = self._n_hi = n0

    def get_dd(self, n: int) -> tuple[float, float]:
        vals = self._vals
        z = self.z
        emz = self._emz
        while self._n_hi < n:
            m = self._n_hi
            vals[m + 1] = dd_div_f(dd_add_f(dd_mul_f(vals[m], -z), emz), float(m))
            self._n_hi = m + 1
        while self._n_lo > n:
            m = self._n_lo
            prev = vals[m]
            if not math.isfinite(prev[0]):
                vals[m - 1] = (math.inf, 0.0)
            else:
                vals[m - 1] = dd_div_f(
                    dd_add_f(dd_mul_f(prev, float(1 - m)), emz), z
                )
                if not math.isfinite(vals[m - 1][0]):
                    vals[m - 1] = (math.inf, 0.0)
            self._n_lo = m - 1
        return vals[n]

    def get(self, n: int) -> float:
        return dd_float(self.get_dd(n))


def exp_int(n: int, z: float) -> float:
    """E_n(z) for any integer n and z > 0.

    Routing: n >= 1 with z < 1 uses the digamma series; n >= 1 with z >= 1
    the continued fraction; n <= 0 the downward walk from the positive-order
    anchor.  Raises OverflowError when the (necessarily huge) negative-order
    value exceeds the float64 range.  Batch callers should use ExpIntTable.
    """
    if z <= 0:
        raise ValueError(f"E_n(z) requires z > 0, got z={z}")
    if n >= 1:
        return _exp_int_series(n, z) if z < 1.0 else _exp_int_cf(n, z)
    value = ExpIntTable(z).get(n)
    if not math.isfinite(value):
        raise OverflowError(f"E_{n}({z}) exceeds the double-precision range")
    return value


def exp_int_leading(n: int, z: float) -> float:
    """Leading large-order behaviour e^-z/(n+z) of E_n(z), for n > z."""
    if n <= z:
        raise ValueError("leading form requires n > z")
    return math.exp(-z) / (n + z)


# ---------------------------------------------------------------------------
# exponential moments a_n
# ---------------------------------------------------------------------------

class MomentTable:
    """a_n(z) = integral_0^1 t^n e^(-zt) dt for n = 0..capacity (growable).

    Backward Miller recurrence a_{n-1} = (z a_n + e^-z)/n from a trial seed,
    normalized against the closed form a_0 = (1 - e^-z)/z.  Seed
    contamination reaches order n scaled by z^(start-n) n!/start!, so the
    start order is chosen to push that factor below 1e-17 even for a
    completely wrong seed; the a_0 comparison stays as a sanity check.
    The walk runs in double-double (see get_dd) because the values feed
    alternating Stirling-weighted sums that amplify per-entry noise.
    """

    def __init__(self, z: float, n_hi: int = 64):
        if z < 0:
            raise ValueError(f"a_n(z) requires z >= 0, got z={z}")
        self.z = float(z)
        self._emz = math.exp(-self.z)
        self._a0 = 1.0 if self.z == 0.0 else -math.expm1(-self.z) / self.z
        self._vals: list[tuple[float, float]] = []
        self._build(max(n_hi, 8))

    def _build(self, n_hi: int) -> None:
        z = self.z
        emz = self._emz
        start = n_hi + 8
        if z > 0:
            lz = math.log(z)
            floor = math.log(1e-17)
            while (
                (start - n_hi) * lz
                - (math.lgamma(start + 1) - math.lgamma(n_hi + 1))
            ) > floor:
                start += 8
        vals = [(0.0, 0.0)] * (start + 1)
        a = (emz / max(start - z, 1.0), 0.0)  # rough asymptotic seed
        vals[start] = a
        for m in range(start, 0, -1):
            a = dd_div_f(dd_add_f(dd_mul_f(a, z), emz), float(m))
            vals[m - 1] = a
        if abs(vals[0][0] - self._a0) > 1e-12 * self._a0:
            raise ArithmeticError(f"moment recurrence failed to stabilize at z={z}")
        scale = dd_div((self._a0, 0.0), vals[0])
        self._vals = [dd_mul(v, scale) for v in vals[: n_hi + 1]]

    def get_dd(self, n: int) -> tuple[float, float]:
        if n >= len(self._vals):
            self._build(max(n, 2 * len(self._vals)))
        return self._vals[n]

    def get(self, n: int) -> float:
        return dd_float(self.get_dd(n))


def a_moment(n: int, z: float) -> float:
    """a_n(z) = integral_0^1 t^n e^(-zt) dt, n >= 0, z >= 0."""
    if n < 0:
        raise ValueError(f"a_n requires n >= 0, got n={n}")
    return MomentTable(z, n).get(n)


def a_moment_leading(n: int, z: float) -> float:
    """Leading large-order behaviour e^-z/(n-z) of a_n(z), for n > z."""
    if n <= z:
        raise ValueError("leading form requires n > z")
    return math.exp(-z) / (n - z)


# ---------------------------------------------------------------------------
# digamma, Stirling numbers, b_m coefficients
# ---------------------------------------------------------------------------

def digamma_int(n: int) -> float:
    """psi(n) = -gamma + sum_{k=1}^{n-1} 1/k for integer n >= 1."""
    if n < 1:
        raise ValueError(f"digamma_int requires n >= 1, got n={n}")
    return -EULER_GAMMA + math.fsum(1.0 / k for k in range(1, n))


class StirlingTable:
    """Triangular table of Stirling numbers of the second kind, as floats.

    Entries follow S_mk = S_{m-1,k-1} + k S_{m-1,k} with S_00 = 1; values are
    exact while integer-representable in a float (guaranteed through m = 25)
    and saturate to inf far beyond that, which downstream code never uses
    directly (weighted recursions take over long before).
    """

    def __init__(self, max_order: int = MAX_ORDER):
        self.max_order = max_order
        rows = [[1.0]]
        for m in range(1, max_order + 1):
            prev = rows[m - 1]
            row = [0.0] * (m + 1)
            for k in range(1, m + 1):
                left = prev[k - 1]
                right = k * prev[k] if k < m else 0.0
                row[k] = left + right
            rows.append(row)
        self._rows = rows

    def value(self, m: int, k: int) -> float:
        if m < 0 or k < 0 or k > m:
            return 0.0
        if m > self.max_order:
            raise CapacityError(
                f"S_({m},{k}) beyond table capacity {self.max_order}"
            )
        return self._rows[m][k]


_DEFAULT_STIRLING = StirlingTable()


def stirling2(m: int, k: int) -> float:
    """S_mk from the default table; 0 outside the triangle."""
    return _DEFAULT_STIRLING.value(m, k)


class ScaledWeightTable:
    """Rows of u_{m,k} = S_mk/k! (z/2)^(2k) x^m for fixed (z, x).

    The recursion u_{m,k} = (u_{m-1,k-1} (z/2)^2 / k + k u_{m-1,k}) * x has
    only positive terms, so each entry is formed cancellation-free, and the
    folded-in x^m factor (x is 1/(mu+1/2) in the large-order series) keeps
    deep rows representable where raw Stirling weights would overflow.
    Alternating sums of a row against a value stream f(k) produce the
    b_m/lambda_m/Lambda_m/tau_m/T_m coefficient family, each times x^m.
    Rows are kept in double-double: the alternating sums cancel by factors
    up to ~(z/2)^(2m)/m! and would otherwise amplify entry roundoff into
    the leading digits of deep coefficients.
    """

    def __init__(self, z: float, x: float = 1.0):
        self.z = float(z)
        self.x = float(x)
        self._y = _two_prod(self.z / 2.0, self.z / 2.0)
        self._rows: list[list[tuple[float, float]]] = [[(1.0, 0.0)]]
        self._b: list[tuple[float, float]] = [(1.0, 0.0)]

    def row(self, m: int) -> list[tuple[float, float]]:
        """Row m of u_{m,k}, entries as double-double (hi, lo) pairs."""
        rows = self._rows
        y = self._y
        x = self.x
        while len(rows) <= m:
            mm = len(rows)
            prev = rows[mm - 1]
            new = [(0.0, 0.0)] * (mm + 1)
            for k in range(1, mm + 1):
                left = dd_div_f(dd_mul(prev[k - 1], y), float(k))
                if k < mm:
                    left = dd_add(left, dd_mul_f(prev[k], float(k)))
                new[k] = dd_mul_f(left, x)
            rows.append(new)
        return rows[m]

    def signed_sum(self, m: int, f) -> float:
        """sum_{k=1..m} (-1)^(m-k) u_{m,k} f(k) for m >= 1; f(0) for m = 0."""
        if m == 0:
            return f(0)
        parts = []
        for k, (hi, lo) in enumerate(self.row(m)[1:], start=1):
            v = f(k)
            sign = 1.0 if (m - k) % 2 == 0 else -1.0
            p, e = _two_prod(hi, v)
            parts.append(sign * p)
            parts.append(sign * (e + lo * v))
        return safe_fsum(parts)

    def signed_sum_dd(self, m: int, f) -> tuple[float, float]:
        """signed_sum against a double-double stream f(k) -> (hi, lo)."""
        if m == 0:
            return f(0)
        acc = (0.0, 0.0)
        for k, u in enumerate(self.row(m)[1:], start=1):
            term = dd_mul(u, f(k))
            acc = dd_add(acc, term if (m - k) % 2 == 0 else dd_neg(term))
        return acc

    def b_tilde_dd(self, m: int) -> tuple[float, float]:
        """b_m(z) * x^m as a double-double pair."""
        b = self._b
        one = (1.0, 0.0)
        while len(b) <= m:
            b.append(self.signed_sum_dd(len(b), lambda _k: one))
        return b[m]

    def b_tilde(self, m: int) -> float:
        """b_m(z) * x^m."""
        return dd_float(self.b_tilde_dd(m))


def b_coeff(m: int, z: float) -> float:
    """b_m(z) = sum_{k=1..m} (-1)^(m-k) S_mk/k! (z/2)^(2k); b_0 = 1.

    Evaluated by the weighted recursion (never from raw Stirling numbers).
    Raises OverflowError when a weighted term leaves the float range, which
    signals that a series using this order must be declared divergent.
    """
    if m < 0:
        raise ValueError(f"b_m requires m >= 0, got m={m}")
    if m > MAX_ORDER:
        raise CapacityError(f"b_{m} beyond supported order {MAX_ORDER}")
    value = ScaledWeightTable(z).b_tilde(m)
    if not math.isfinite(value):
        raise OverflowError(f"b_{m}({z}) exceeds the double-precision range")
    return value


# ---------------------------------------------------------------------------
# modified spherical Bessel functions
# ---------------------------------------------------------------------------

def bessel_k_array(mu_max: int, z: float) -> list[float]:
    """[k_0(z), ..., k_mu_max(z)] by the stable upward recurrence.

    k_0 = (pi/2) e^-z / z; entries overflow to inf for very large mu/small z.
    """
    if z <= 0:
        raise ValueError(f"k_mu(z) requires z > 0, got z={z}")
    k0 = (math.pi / 2.0) * math.exp(-z) / z
    if mu_max == 0:
        return [k0]
    vals = [k0, k0 * (1.0 + 1.0 / z)]
    for n in range(1, mu_max):
        prev, cur = vals[n - 1], vals[n]
        try:
            vals.append(prev + (2 * n + 1) / z * cur)
        except OverflowError:
            vals.append(math.inf)
    return vals


def bessel_k(mu: int, z: float) -> float:
    """k_mu(z), the modified spherical Bessel function of the second kind."""
    value = bessel_k_array(mu, z)[mu]
    if not math.isfinite(value):
        raise OverflowError(f"k_{mu}({z}) exceeds the double-precision range")
    return value


def bessel_i_array(mu_max: int, z: float) -> list[float]:
    """[i_0(z), ..., i_mu_max(z)] by backward Miller recurrence.

    Normalized against i_0 = sinh(z)/z, with the start order mu_max +
    max(20, ceil(2z)) guard terms and a doubling retry if the normalization
    cross-check on i_1 fails.  Entries that underflow are returned as 0.0.
    """
    if z <= 0:
        raise ValueError(f"i_mu(z) requires z > 0, got z={z}")
    i0 = math.sinh(z) / z
    i1 = (math.cosh(z) - math.sinh(z) / z) / z
    guard = max(20, math.ceil(2 * z))
    for _ in range(6):
        start = mu_max + guard
        vals = [0.0] * (start + 2)
        vals[start + 1] = 0.0
        vals[start] = 1e-255
        for m in range(start, 0, -1):
            nxt = vals[m + 1] + (2 * m + 1) / z * vals[m]
            if abs(nxt) > 1e260:
                scale = 1e-260
                for idx in range(m, start + 2):
                    vals[idx] *= scale
                nxt *= scale
            vals[m - 1] = nxt
        scale = i0 / vals[0]
        out = [v * scale for v in vals[: mu_max + 1]]
        if mu_max == 0 or abs(out[1] - i1) <= 1e-12 * abs(i1):
            return out
        guard *= 2
    raise ArithmeticError(f"Miller recurrence failed to stabilize for i_mu({z})")


def bessel_i(mu: int, z: float) -> float:
    """i_mu(z), the modified spherical Bessel function of the first kind.

    Underflow at large mu returns 0.0 (the value is genuinely below the
    smallest positive float); this is not an error.
    """
    return bessel_i_array(mu, z)[mu]


def _bessel_i_ratios(mu_max: int, z: float) -> list[float]:
    # rho_m = i_m/i_{m-1} for m = 1..mu_max, from the downward continued
    # fraction rho_m = z/((2m+1) + z rho_{m+1}) seeded deep above mu_max.
    depth = mu_max + 40 + math.ceil(z)
    rho = 0.0
    out = [0.0] * (mu_max + 1)
    for m in range(depth, 0, -1):
        rho = z / ((2 * m + 1) + z * rho)
        if m <= mu_max:
            out[m] = rho
    return out


def bessel_ik_cross(mu: int, z: float) -> float:
    """i_mu(z) k_{mu-1}(z) + i_{mu-1}(z) k_mu(z), which equals (pi/2)/z^2.

    Evaluated through ratio recurrences and the product chain
    i_m k_m = i_0 k_0 * prod rho_j sigma_j so that no intermediate quantity
    can overflow or underflow even where i_mu and k_mu individually would.
    The cross product equals -(i k' - i' k) under the standard derivative
    recurrences f'_mu = f_{mu-1} - (mu+1)/z f_mu (i) and
    k'_mu = -k_{mu-1} - (mu+1)/z k_mu.
    """
    if mu < 1:
        raise ValueError("cross product needs mu >= 1")
    rho = _bessel_i_ratios(mu, z)
    product = (math.pi / (4.0 * z * z)) * -math.expm1(-2.0 * z)  # i_0 k_0
    sigma = 1.0 + 1.0 / z  # k_1/k_0
    for m in range(1, mu):
        product *= rho[m] * sigma
        sigma = (2 * m + 1) / z + 1.0 / sigma
    return product * (rho[mu] + sigma)


def bessel_i_large_order(
    mu: int, z: float, settings: ExpansionSettings | None = None
) -> SeriesOutcome:
    """i_mu(z) by its large-order series (sqrt(pi)/2)(z/2)^mu/Gamma(mu+3/2) sum b_m(z)/(mu+1/2)^m."""
    if z <= 0:
        raise ValueError(f"i_mu(z) requires z > 0, got z={z}")
    settings = settings or ExpansionSettings()
    log_pref = (
        0.5 * math.log(math.pi)
        - math.log(2.0)
        + mu * math.log(z / 2.0)
        - math.lgamma(mu + 1.5)
    )
    table = ScaledWeightTable(z, 1.0 / (mu + 0.5))
    outcome = sum_series((table.b_tilde(m) for m in count()), settings)
    return outcome.scaled(_exp_guarded(log_pref))


def bessel_k_large_order(
    mu: int, z: float, settings: ExpansionSettings | None = None
) -> SeriesOutcome:
    """k_mu(z) by its large-order series (sqrt(pi)/4)Gamma(mu+1/2)/(z/2)^(mu+1) sum (-1)^m b_m(z)/(mu+1/2)^m."""
    if z <= 0:
        raise ValueError(f"k_mu(z) requires z > 0, got z={z}")
    settings = settings or ExpansionSettings()
    log_pref = (
        0.5 * math.log(math.pi)
        - 2.0 * math.log(2.0)
        + math.lgamma(mu + 0.5)
        - (mu + 1) * math.log(z / 2.0)
    )
    table = ScaledWeightTable(z, 1.0 / (mu + 0.5))
    outcome = sum_series(
        (table.b_tilde(m) if m % 2 == 0 else -table.b_tilde(m) for m in count()),
        settings,
    )
    return outcome.scaled(_exp_guarded(log_pref))


def _exp_guarded(log_value: float) -> float:
    if log_value < -745.0:
        return 0.0
    if log_value > 709.0:
        raise OverflowError("prefactor exceeds the double-precision range")
    return math.exp(log_value)
