"""Design equations. Expected values come from the worksheet, exact rational
arithmetic (fractions) or 30-digit mpmath evaluation done offline."""

import math

import pytest
from hypothesis import given, strategies as st

from dualheat.design import (
    AstableDesignInput,
    PsuDesignInput,
    astable_period_and_frequency,
    astable_t_off,
    astable_t_on,
    design_report,
    led_series_resistor,
    nearest_standard_capacitor,
    peak_voltage,
    ripple_voltage,
    smoothing_capacitor,
    standard_astable_period,
    standard_duty_cycle,
)

pos = st.floats(min_value=1e-3, max_value=1e3, allow_nan=False, allow_infinity=False)


def test_peak_voltage():
    assert peak_voltage(12.0) == pytest.approx(16.97, abs=0.01)
    assert peak_voltage(0.0) == 0.0
    assert peak_voltage(24.0) == pytest.approx(33.941125496954281, rel=1e-14)


def test_ripple_voltage():
    assert ripple_voltage(16.97, 0.07) == pytest.approx(1.1879, abs=1e-12)
    assert ripple_voltage(16.97, 0.0) == 0.0
    assert ripple_voltage(16.9706, 0.07) == pytest.approx(1.187942, rel=1e-12)


@pytest.mark.parametrize("fraction", [-0.01, 1.01, math.nan])
def test_ripple_fraction_rejected(fraction):
    with pytest.raises(ValueError):
        ripple_voltage(10.0, fraction)


def test_smoothing_capacitor():
    assert smoothing_capacitor(0.2, 50.0, 1.1879) * 1e6 == pytest.approx(1683.6, abs=0.1)
    assert round(smoothing_capacitor(0.2, 50.0, 1.1879) * 1e6) == 1684
    assert smoothing_capacitor(1.0, 50.0, 1.0) == pytest.approx(0.01, rel=1e-15)
    assert smoothing_capacitor(0.2, 100.0, 1.1879) * 1e6 == pytest.approx(841.8217, abs=1e-3)


@pytest.mark.parametrize("args", [(0.0, 50, 1), (0.2, 0.0, 1), (0.2, 50, 0.0), (-1, 50, 1)])
def test_smoothing_capacitor_rejects_nonpositive(args):
    with pytest.raises(ValueError):
        smoothing_capacitor(*args)


@given(pos, pos, pos, st.floats(min_value=1.5, max_value=10))
def test_smoothing_capacitor_scaling(i, f, v, k):
    base = smoothing_capacitor(i, f, v)
    assert smoothing_capacitor(i * k, f, v) == pytest.approx(base * k, rel=1e-12)
    assert smoothing_capacitor(i, f * k, v) == pytest.approx(base / k, rel=1e-12)
    assert smoothing_capacitor(i, f, v * k) == pytest.approx(base / k, rel=1e-12)


@pytest.mark.parametrize(
    "c, expected",
    [(1683.6e-6, 2200e-6), (2200e-6, 2200e-6), (2300e-6, 3300e-6), (7e-6, 10e-6), (1e-9, 1e-9), (0.5e-12, 0.68e-12)],
)
def test_nearest_standard_capacitor(c, expected):
    assert nearest_standard_capacitor(c) == pytest.approx(expected, rel=1e-12)


@given(st.floats(min_value=1e-12, max_value=1.0))
def test_nearest_standard_capacitor_properties(c):
    picked = nearest_standard_capacitor(c)
    assert picked >= c * (1 - 1e-12)
    assert nearest_standard_capacitor(picked) == picked
    mantissa = picked / 10 ** math.floor(math.log10(picked) + 1e-12)
    assert any(math.isclose(mantissa, m, rel_tol=1e-9) for m in (1.0, 1.5, 2.2, 3.3, 4.7, 6.8))


def test_led_series_resistor():
    assert led_series_resistor(5.0, 2.7, 3.2e-3) == 718.75
    assert led_series_resistor(5.0, 5.0, 3.2e-3) == 0.0
    assert led_series_resistor(12.0, 2.0, 10e-3) == pytest.approx(1000.0, rel=1e-15)


def test_led_resistor_text_value_does_not_reproduce_worksheet():
    # the worksheet writes "5 - 2.71" but reports 718.75 ohm; only 2.7 V yields that
    assert led_series_resistor(5.0, 2.71, 3.2e-3) == pytest.approx(715.625)


@pytest.mark.parametrize("args", [(2.0, 2.7, 1e-3), (5.0, 2.7, 0.0), (5.0, 2.7, -1e-3)])
def test_led_series_resistor_rejects(args):
    with pytest.raises(ValueError):
        led_series_resistor(*args)


def test_astable_t_on():
    assert astable_t_on(68e3, 68e3, 1e-6) == pytest.approx(0.0952, abs=1e-12)
    assert astable_t_on(68e3, 68e3, 0.0) == 0.0
    assert astable_t_on(10e3, 10e3, 10e-6) == pytest.approx(0.14, rel=1e-14)


def test_astable_t_off():
    assert astable_t_off(8.2e3, 47e-6) == pytest.approx(0.26978, abs=1e-12)
    assert astable_t_off(8.2e3, 0.0) == 0.0
    assert astable_t_off(10e3, 10e-6) == pytest.approx(0.07, rel=1e-14)


def test_astable_period_and_frequency():
    period, f = astable_period_and_frequency(0.0952, 0.27)
    assert period == pytest.approx(0.3652, abs=1e-12)
    assert f == pytest.approx(2.74, abs=0.01)
    assert astable_period_and_frequency(0.5, 0.5) == (1.0, 1.0)
    period, f = astable_period_and_frequency(0.0952, 0.26978)
    assert period == pytest.approx(0.36498, abs=1e-12)
    assert f == pytest.approx(2.7398761576, rel=1e-9)


def test_astable_zero_period_rejected():
    with pytest.raises(ValueError):
        astable_period_and_frequency(0.0, 0.0)


@given(pos, pos, pos, st.floats(min_value=1.5, max_value=10))
def test_worksheet_timing_is_linear(r1, r2, c, k):
    base = astable_t_on(r1, r2, c)
    assert astable_t_on(r1 * k, r2 * k, c) == pytest.approx(base * k, rel=1e-12)
    assert astable_t_on(r1, r2, c * k) == pytest.approx(base * k, rel=1e-12)
    assert astable_t_off(r1 * k, c) == pytest.approx(astable_t_off(r1, c) * k, rel=1e-12)
    assert astable_t_off(r1, c * k) == pytest.approx(astable_t_off(r1, c) * k, rel=1e-12)


def test_standard_astable_period():
    t_high, t_low, f = standard_astable_period(68e3, 68e3, 1e-6)
    assert t_high == pytest.approx(0.0942680165561526, rel=1e-13)
    assert t_low == pytest.approx(0.0471340082780763, rel=1e-13)
    assert f == pytest.approx(7.07203451416159, rel=1e-13)
    t_high, t_low, f = standard_astable_period(10e3, 10e3, 1e-6)
    assert t_high == pytest.approx(0.0138629436111989, rel=1e-13)
    assert t_low == pytest.approx(0.00693147180559945, rel=1e-13)
    assert f == pytest.approx(48.0898346962988, rel=1e-13)


def test_standard_astable_low_time_vanishes_with_r2():
    lows = [standard_astable_period(10e3, r2, 1e-6)[1] for r2 in (1e3, 1.0, 1e-3)]
    assert lows[0] > lows[1] > lows[2]
    assert lows[2] < 1e-9


@given(pos, pos)
def test_worksheet_and_standard_coefficients_agree_within_1p1_percent(r, c):
    # same RC product through both routes: 0.7 vs ln 2
    worksheet = astable_t_off(r, c)
    standard = standard_astable_period(r, r, c / 2)[0]
    assert abs(worksheet - standard) / standard <= 0.011


def test_duty_cycle_closed_form():
    assert standard_duty_cycle(68e3, 68e3) == pytest.approx(2 / 3)


def test_design_report_chain():
    r = design_report(PsuDesignInput(), AstableDesignInput())
    assert r.c_standard == pytest.approx(2200e-6, rel=1e-12)
    assert r.period_rounded == pytest.approx(0.3652, abs=1e-12)
    assert r.period == pytest.approx(0.36498, abs=1e-12)


@pytest.mark.parametrize(
    "kwargs",
    [{"vs_rms": 0.0}, {"ripple_fraction": 0.0}, {"ripple_fraction": 1.5}, {"i_load": -1.0}, {"mains_freq": 0.0}],
)
def test_psu_design_input_invariants(kwargs):
    with pytest.raises(ValueError):
        PsuDesignInput(**kwargs)


def test_astable_design_input_invariants():
    with pytest.raises(ValueError):
        AstableDesignInput(r3=0.0)
