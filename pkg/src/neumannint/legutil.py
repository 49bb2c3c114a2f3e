"""Exact monomial coefficients of Legendre polynomials and their
sigma-weighted derivative combinations.

Everything is built from the three-term recurrence with Fraction
arithmetic, so the coefficient sets stay exact at any order; callers
convert to float or mpf at the last moment.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache


@lru_cache(maxsize=None)
def legendre_coeffs(mu: int) -> tuple[Fraction, ...]:
    """Monomial coefficients (c_0, ..., c_mu) of P_mu(x) = sum c_j x^j."""
    if mu < 0:
        raise ValueError(f"mu must be nonnegative, got {mu}")
    if mu == 0:
        return (Fraction(1),)
    if mu == 1:
        return (Fraction(0), Fraction(1))
    prev = legendre_coeffs(mu - 2)
    cur = legendre_coeffs(mu - 1)
    out = [Fraction(0)] * (mu + 1)
    for j, c in enumerate(cur):
        out[j + 1] += Fraction(2 * mu - 1, mu) * c
    for j, c in enumerate(prev):
        out[j] -= Fraction(mu - 1, mu) * c
    return tuple(out)


def _differentiate(coeffs: tuple[Fraction, ...], times: int) -> tuple[Fraction, ...]:
    out = list(coeffs)
    for _ in range(times):
        out = [j * c for j, c in enumerate(out)][1:]
        if not out:
            return (Fraction(0),)
    return tuple(out)


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, ca in enumerate(a):
        if ca:
            for j, cb in enumerate(b):
                out[i + j] += ca * cb
    return tuple(out)


@lru_cache(maxsize=None)
def weighted_deriv_coeffs(mu: int, sigma: int, metric: int) -> tuple[Fraction, ...]:
    """Coefficients of [metric * (x^2 - 1)]^sigma * d^sigma P_mu / dx^sigma.

    metric = +1 gives the xi > 1 side, metric = -1 the |eta| < 1 side.
    This is the product of the associated Legendre function of integer
    order (half-power weight included) with the half-power weight from the
    integration measure, so the result is an ordinary polynomial: e.g. for
    metric = -1 it equals P_mu^sigma(eta) * (1-eta^2)^(sigma/2) with the
    Ferrers-type P (no Condon-Shortley phase).
    """
    if sigma < 0 or mu < 0:
        raise ValueError("indices must be nonnegative")
    if sigma > mu:
        return (Fraction(0),)
    base = _differentiate(legendre_coeffs(mu), sigma)
    weight = (Fraction(-metric), Fraction(0), Fraction(metric))  # metric*(x^2-1)
    out = base
    for _ in range(sigma):
        out = _poly_mul(out, weight)
    return out


def eval_poly(coeffs, x):
    """Horner evaluation; works for float and mpf alike."""
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc
