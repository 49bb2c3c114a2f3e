"""Series summation control shared by every large-order expansion.

Provides the settings/outcome types, the summation loop implementing the
stop rule (two consecutive terms below tolerance) and the divergence
detector (windowed minimum-term comparison), a van Wijngaarden style Euler
transform for slowly converging alternating series, and a small truncated
Taylor ("jet") type used to push parameter derivatives through coefficient
recursions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

# Stop rule: this many consecutive terms below rel_tol * |partial sum|.
CONSECUTIVE_BELOW = 2


@dataclass(frozen=True)
class ExpansionSettings:
    """Knobs for the large-order series: tolerance, term cap, detector window."""

    rel_tol: float = 2e-16
    max_terms: int = 200
    divergence_window: int = 10

    def __post_init__(self):
        if not (0 < self.rel_tol < 1):
            raise ValueError(f"rel_tol out of range: {self.rel_tol}")
        if self.max_terms < CONSECUTIVE_BELOW + 1:
            raise ValueError(f"max_terms too small: {self.max_terms}")
        if self.divergence_window < 2:
            raise ValueError(f"divergence_window too small: {self.divergence_window}")


DEFAULT_SETTINGS = ExpansionSettings()


@dataclass
class SeriesOutcome:
    """Result of summing one expansion.

    value          best available sum (on divergence: the partial sum
                   truncated just before the smallest term seen)
    terms_used     number of terms contributing to `value`; on convergence
                   the two sub-tolerance probe terms are not counted
    converged      stop rule met within the term cap
    est_rel_error  |smallest/last term| / |value|; when converged this is
                   guaranteed <= the requested rel_tol
    diverged       detector tripped (growing terms, overflow, or term cap)
    reason         short human-readable note for non-converged outcomes
    """

    value: float
    terms_used: int
    converged: bool
    est_rel_error: float
    diverged: bool = False
    reason: str = ""

    def scaled(self, factor: float) -> "SeriesOutcome":
        return replace(self, value=self.value * factor)


def _rel(err_abs: float, value: float) -> float:
    if value == 0.0:
        return 0.0 if err_abs == 0.0 else math.inf
    return err_abs / abs(value)


def sum_series(terms, settings: ExpansionSettings | None = None) -> SeriesOutcome:
    """Sum a term stream under the shared stop/divergence rules.

    `terms` is any iterable of floats (typically a generator that computes
    term m lazily, so that orders past the stopping point are never built).

    A stop is only provisional: an asymptotic expansion near the edge of
    its useful range can dip below tolerance for dozens of terms and then
    rebound, which is a failure to reach the floor, not convergence.  After
    the stop rule fires the scan therefore continues -- for as many terms
    again as the stop took, so the horizon scales with the expansion
    itself -- and the stop is only trusted if the windowed-minimum detector
    stays quiet throughout.  The probe terms never count toward terms_used
    or the returned value.
    """
    s = settings or DEFAULT_SETTINGS
    total = 0.0
    consecutive = 0
    best_abs = math.inf
    best_total = 0.0
    best_count = 0
    window: list[float] = []
    prev_min: float | None = None
    consumed = 0
    candidate: SeriesOutcome | None = None
    deadline = 0

    def diverged(reason: str) -> SeriesOutcome:
        return SeriesOutcome(
            value=best_total,
            terms_used=best_count,
            converged=False,
            est_rel_error=_rel(best_abs, best_total),
            diverged=True,
            reason=reason,
        )

    for term in terms:
        if candidate is not None and consumed >= deadline:
            return candidate
        if consumed >= s.max_terms:
            if candidate is not None:
                return candidate
            return diverged(f"term cap {s.max_terms} reached")
        if not math.isfinite(term):
            if candidate is not None:
                return diverged("terms rebounded after apparent convergence")
            return diverged("term overflow")
        prev_total = total
        total += term
        consumed += 1
        magnitude = abs(term)
        if magnitude < best_abs:
            best_abs = magnitude
            best_total = prev_total
            best_count = consumed - 1

        if candidate is None:
            if magnitude <= s.rel_tol * abs(total):
                consecutive += 1
                if consecutive >= CONSECUTIVE_BELOW:
                    candidate = SeriesOutcome(
                        value=total,
                        terms_used=consumed - CONSECUTIVE_BELOW,
                        converged=True,
                        est_rel_error=_rel(magnitude, total),
                    )
                    deadline = consumed + max(s.divergence_window, consumed)
            else:
                consecutive = 0

        window.append(magnitude)
        if len(window) == s.divergence_window:
            cur_min = min(window)
            # cur_min == 0 is a tail that underflowed or terminated exactly,
            # not stagnation.
            if prev_min is not None and cur_min >= prev_min and cur_min > 0.0:
                if candidate is not None:
                    return diverged("terms rebounded after apparent convergence")
                return diverged("terms stopped decreasing")
            prev_min = cur_min
            window = []

    # Stream exhausted: trust a pending stop, else the full sum.
    if candidate is not None:
        return candidate
    return SeriesOutcome(
        value=total,
        terms_used=consumed,
        converged=True,
        est_rel_error=_rel(best_abs, total),
    )


class Jet:
    """Truncated Taylor expansion sum_j c_j h^j used as a drop-in scalar.

    Arithmetic on jets propagates derivatives with respect to one parameter
    through a computation: coefficient j of the result is the j-th Taylor
    coefficient (derivative / j!) of the result of the underlying scalar
    computation.  Only +, -, * and scalar scaling are needed here.
    """

    __slots__ = ("c",)

    def __init__(self, coeffs):
        self.c = list(coeffs)

    @classmethod
    def constant(cls, value: float, order: int) -> "Jet":
        c = [0.0] * (order + 1)
        c[0] = value
        return cls(c)

    @property
    def order(self) -> int:
        return len(self.c) - 1

    def __add__(self, other):
        if isinstance(other, Jet):
            return Jet(a + b for a, b in zip(self.c, other.c))
        out = list(self.c)
        out[0] += other
        return Jet(out)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, Jet):
            return Jet(a - b for a, b in zip(self.c, other.c))
        out = list(self.c)
        out[0] -= other
        return Jet(out)

    def __neg__(self):
        return Jet(-a for a in self.c)

    def __mul__(self, other):
        if isinstance(other, Jet):
            n = min(len(self.c), len(other.c))
            out = [0.0] * n
            for j in range(n):
                out[j] = math.fsum(self.c[i] * other.c[j - i] for i in range(j + 1))
            return Jet(out)
        return Jet(a * other for a in self.c)

    __rmul__ = __mul__

    def max_abs(self) -> float:
        return max(abs(a) for a in self.c)

    def isfinite(self) -> bool:
        return all(math.isfinite(a) for a in self.c)
