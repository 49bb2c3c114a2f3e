"""Stop rule, divergence detection and jet arithmetic of the series kernel."""

import math
from itertools import chain, count, repeat

import pytest
from hypothesis import given, settings as hsettings, strategies as st

from neumannint.series import ExpansionSettings, Jet, SeriesOutcome, sum_series


def geometric(ratio, scale=1.0):
    term = scale
    while True:
        yield term
        term *= ratio


# ---------------------------------------------------------------------------
# convergence
# ---------------------------------------------------------------------------

def test_plain_geometric_converges():
    out = sum_series(geometric(0.1))
    assert out.converged and not out.diverged
    # stop fires after two consecutive sub-tolerance terms (10^-16, 10^-17);
    # the probes do not count.
    assert out.terms_used == 16
    expected = sum(10.0 ** -k for k in range(18))
    assert out.value == pytest.approx(expected, rel=1e-15)
    assert out.est_rel_error <= 2e-16


def test_value_frozen_at_stop_not_at_probe_end():
    # After the stop, 20 more decreasing terms are scanned but must not
    # leak into the value.
    stream = chain((10.0 ** -k for k in range(40)), repeat(1.0))
    out = sum_series(stream)
    assert out.converged
    assert out.value == pytest.approx(sum(10.0 ** -k for k in range(18)), rel=1e-15)


def test_exact_zero_tail_is_convergence_not_stagnation():
    out = sum_series(chain([1.0], repeat(0.0)))
    assert out.converged and not out.diverged
    assert out.value == 1.0
    assert out.terms_used == 1


def test_finite_stream_exhausted_counts_all_terms():
    out = sum_series(iter([1.0, 0.5, 0.25]))
    assert out.converged
    assert out.value == 1.75
    assert out.terms_used == 3


def test_empty_stream_is_a_zero_sum():
    out = sum_series(iter([]))
    assert out.converged
    assert out.value == 0.0 and out.terms_used == 0


def test_term_cap_during_confirmation_scan_keeps_the_stop():
    out = sum_series(geometric(0.1), ExpansionSettings(max_terms=20))
    assert out.converged
    assert out.terms_used == 16


# ---------------------------------------------------------------------------
# divergence
# ---------------------------------------------------------------------------

def test_rebound_during_scan_revokes_the_stop():
    stream = chain((10.0 ** -k for k in range(18)), repeat(1.0))
    out = sum_series(stream)
    assert not out.converged and out.diverged
    assert "rebounded" in out.reason


def test_rebound_beyond_the_scan_horizon_is_accepted():
    # The scan covers as many terms again as the stop took; a rebound far
    # past that cannot retroactively kill the (already delivered) sum.
    stream = chain((10.0 ** -k for k in range(45)), repeat(1.0))
    out = sum_series(stream)
    assert out.converged
    assert out.terms_used == 16


def test_slow_decrease_hits_term_cap():
    out = sum_series((1.0 / (k + 1) for k in count()))
    assert not out.converged and out.diverged
    assert "term cap 200" in out.reason


def test_growing_terms_stop_early():
    out = sum_series((float(k + 1) for k in count()))
    assert out.diverged
    assert out.reason == "terms stopped decreasing"
    # detector needs two full windows
    assert out.terms_used <= 20


def test_overflowing_term_flags_divergence():
    out = sum_series(iter([1.0, math.inf]))
    assert out.diverged and "overflow" in out.reason
    out = sum_series(chain([1.0, math.nan], repeat(0.0)))
    assert out.diverged


def test_divergent_value_truncates_before_smallest_term():
    # 1, 0.1, 0.01, then growth: the reported sum stops just short of the
    # smallest term (the classical optimal truncation point).
    terms = [1.0, 0.1, 0.01] + [5.0] * 30
    out = sum_series(iter(terms))
    assert out.diverged
    assert out.value == pytest.approx(1.1)
    assert out.terms_used == 2


# ---------------------------------------------------------------------------
# settings and outcome plumbing
# ---------------------------------------------------------------------------

def test_settings_validation():
    with pytest.raises(ValueError):
        ExpansionSettings(rel_tol=0.0)
    with pytest.raises(ValueError):
        ExpansionSettings(rel_tol=1.5)
    with pytest.raises(ValueError):
        ExpansionSettings(max_terms=2)
    with pytest.raises(ValueError):
        ExpansionSettings(divergence_window=1)


def test_scaled_keeps_flags():
    out = sum_series(geometric(0.5)).scaled(-2.0)
    assert out.converged
    assert out.value == pytest.approx(-4.0, rel=1e-14)


def test_loose_tolerance_stops_sooner():
    tight = sum_series(geometric(0.5))
    loose = sum_series(geometric(0.5), ExpansionSettings(rel_tol=1e-6))
    assert loose.converged and loose.terms_used < tight.terms_used


@hsettings(max_examples=40, deadline=None)
@given(
    ratio=st.floats(min_value=1e-6, max_value=0.5),
    scale=st.floats(min_value=1e-8, max_value=1e8),
)
def test_geometric_streams_always_converge(ratio, scale):
    out = sum_series(geometric(ratio, scale))
    assert out.converged
    assert out.value == pytest.approx(scale / (1.0 - ratio), rel=5e-15)


# ---------------------------------------------------------------------------
# jets
# ---------------------------------------------------------------------------

def test_jet_product_rule():
    f = Jet([2.0, 3.0, 0.5])   # 2 + 3h + 0.5h^2
    g = Jet([-1.0, 4.0, 2.0])
    prod = f * g
    assert prod.c == [-2.0, 8.0 - 3.0, 2.0 * 2.0 + 3.0 * 4.0 - 0.5]


def test_jet_scalar_mix():
    f = Jet([1.0, 2.0])
    assert (f + 3.0).c == [4.0, 2.0]
    assert (3.0 + f).c == [4.0, 2.0]
    assert (f - 1.0).c == [0.0, 2.0]
    assert (2.0 * f).c == [2.0, 4.0]
    assert (-f).c == [-1.0, -2.0]


def test_jet_constant_and_order():
    j = Jet.constant(7.0, 3)
    assert j.c == [7.0, 0.0, 0.0, 0.0]
    assert j.order == 3
    assert j.max_abs() == 7.0
    assert j.isfinite()
    assert not Jet([1.0, math.inf]).isfinite()


def test_jet_tracks_exponential_derivatives():
    # d^j/dh^j exp(a+h) at h=0 is e^a for every j: build exp by its Taylor
    # series in jet arithmetic and compare coefficient-wise.
    a = 0.7
    x = Jet([a, 1.0, 0.0, 0.0])
    term = Jet.constant(1.0, 3)
    total = Jet.constant(0.0, 3)
    for n in range(1, 25):
        total = total + term
        term = term * x * (1.0 / n)
    ea = math.exp(a)
    for j, fact in enumerate((1.0, 1.0, 2.0, 6.0)):
        assert total.c[j] * fact == pytest.approx(ea, rel=1e-12)
