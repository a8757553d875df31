"""Closed-form component sizing for the supply, LED indicator and alarm timer.

Two timer models live side by side on purpose. ``astable_t_on`` and
``astable_t_off`` apply the 0.7-coefficient rule with a separate R3/C3 network
for the off time, exactly as the design worksheet does. ``standard_astable_period``
is the textbook 555 result (ln 2 coefficient, discharge through R2 into the
same capacitor) and serves as the oracle for the transient timer model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .units import (
    Capacitance,
    Current,
    Duration,
    Frequency,
    Resistance,
    Voltage,
    require_finite,
    require_nonnegative,
    require_positive,
)

E6_SERIES = (1.0, 1.5, 2.2, 3.3, 4.7, 6.8)

# Rounding coefficient used by the design worksheet in place of ln 2.
WORKSHEET_COEFF = 0.7


@dataclass(frozen=True)
class PsuDesignInput:
    vs_rms: Voltage = 12.0
    ripple_fraction: float = 0.07
    i_load: Current = 0.2
    mains_freq: Frequency = 50.0

    def __post_init__(self) -> None:
        require_positive("vs_rms", self.vs_rms)
        require_positive("i_load", self.i_load)
        require_positive("mains_freq", self.mains_freq)
        if not 0 < self.ripple_fraction <= 1:
            raise ValueError(f"ripple_fraction must be in (0, 1], got {self.ripple_fraction}")


@dataclass(frozen=True)
class AstableDesignInput:
    r1: Resistance = 68e3
    r2: Resistance = 68e3
    r3: Resistance = 8.2e3
    c2: Capacitance = 1e-6
    c3: Capacitance = 47e-6

    def __post_init__(self) -> None:
        for name in ("r1", "r2", "r3", "c2", "c3"):
            require_positive(name, getattr(self, name))


def peak_voltage(vs_rms: Voltage) -> Voltage:
    return require_nonnegative("vs_rms", vs_rms) * math.sqrt(2.0)


def ripple_voltage(v_pk: Voltage, fraction: float) -> Voltage:
    v_pk = require_finite("v_pk", v_pk)
    fraction = require_finite("fraction", fraction)
    if not 0.0 <= fraction <= 1.0:
        raise ValueError(f"ripple fraction must be within [0, 1], got {fraction}")
    return v_pk * fraction


def smoothing_capacitor(i_load: Current, mains_freq: Frequency, v_ripple: Voltage) -> Capacitance:
    """Reservoir capacitance for a full-wave rectifier: ``I / (2 f Vripple)``."""
    i_load = require_positive("i_load", i_load)
    mains_freq = require_positive("mains_freq", mains_freq)
    v_ripple = require_positive("v_ripple", v_ripple)
    return i_load / (2.0 * mains_freq * v_ripple)


def nearest_standard_capacitor(c: Capacitance) -> Capacitance:
    """Smallest E6 preferred value that is >= ``c``."""
    c = require_positive("capacitance", c)
    decade = math.floor(math.log10(c))
    for exp in (decade - 1, decade, decade + 1):
        for mantissa in E6_SERIES:
            # parse from text: 2.2 * 1e-3 != 0.0022 in binary floating point
            candidate = float(f"{mantissa}e{exp}")
            if candidate >= c * (1 - 1e-12):
                return candidate
    raise AssertionError("unreachable: the next decade always holds a candidate")


def led_series_resistor(v_supply: Voltage, v_led: Voltage, i_led: Current) -> Resistance:
    v_supply = require_finite("v_supply", v_supply)
    v_led = require_finite("v_led", v_led)
    i_led = require_positive("i_led", i_led)
    if v_supply < v_led:
        raise ValueError(f"supply {v_supply} V is below the LED forward voltage {v_led} V")
    # component values are decimal quantities; evaluate on their shortest decimal
    # form so 5 V, 2.7 V, 3.2 mA gives 718.75 rather than 718.7499999999999
    exact = (Fraction(repr(v_supply)) - Fraction(repr(v_led))) / Fraction(repr(i_led))
    return float(exact)


def astable_t_on(r1: Resistance, r2: Resistance, c2: Capacitance) -> Duration:
    r1 = require_positive("r1", r1)
    r2 = require_positive("r2", r2)
    c2 = require_nonnegative("c2", c2)
    return WORKSHEET_COEFF * (r1 + r2) * c2


def astable_t_off(r3: Resistance, c3: Capacitance) -> Duration:
    r3 = require_positive("r3", r3)
    c3 = require_nonnegative("c3", c3)
    return WORKSHEET_COEFF * r3 * c3


def astable_period_and_frequency(t_on: Duration, t_off: Duration) -> tuple[Duration, Frequency]:
    period = require_nonnegative("t_on", t_on) + require_nonnegative("t_off", t_off)
    if period <= 0:
        raise ValueError("period must be > 0")
    return period, 1.0 / period


def standard_astable_period(
    r1: Resistance, r2: Resistance, c: Capacitance
) -> tuple[Duration, Duration, Frequency]:
    """Textbook 555 astable timing.

    The capacitor swings between Vs/3 and 2Vs/3, charging through R1 + R2 and
    discharging through R2 alone, so each half is ``ln 2 * R * C``.

    Returns:
        ``(t_high, t_low, frequency)``
    """
    r1 = require_positive("r1", r1)
    r2 = require_positive("r2", r2)
    c = require_positive("c", c)
    t_high = math.log(2.0) * (r1 + r2) * c
    t_low = math.log(2.0) * r2 * c
    return t_high, t_low, 1.0 / (t_high + t_low)


def standard_duty_cycle(r1: Resistance, r2: Resistance) -> float:
    return (r1 + r2) / (r1 + 2.0 * r2)


@dataclass(frozen=True)
class DesignReport:
    """Every worked value of the design sheet, unrounded."""

    v_pk: Voltage
    v_ripple: Voltage
    c_exact: Capacitance
    c_standard: Capacitance
    r_led: Resistance
    t_on: Duration
    t_off: Duration
    period: Duration
    frequency: Frequency
    period_rounded: Duration
    frequency_rounded: Frequency
    std_t_high: Duration
    std_t_low: Duration
    std_frequency: Frequency


def design_report(
    psu: PsuDesignInput,
    timer: AstableDesignInput,
    v_led: Voltage = 2.7,
    i_led: Current = 3.2e-3,
    v_supply: Voltage = 5.0,
) -> DesignReport:
    """Run the full design chain.

    ``period_rounded`` repeats the worksheet's shortcut of rounding T_OFF to two
    decimals before summing, which is how 0.3652 s arises from 0.26978 s.
    """
    v_pk = peak_voltage(psu.vs_rms)
    v_ripple = ripple_voltage(v_pk, psu.ripple_fraction)
    c_exact = smoothing_capacitor(psu.i_load, psu.mains_freq, v_ripple)
    t_on = astable_t_on(timer.r1, timer.r2, timer.c2)
    t_off = astable_t_off(timer.r3, timer.c3)
    period, frequency = astable_period_and_frequency(t_on, t_off)
    period_rounded, frequency_rounded = astable_period_and_frequency(t_on, round(t_off, 2))
    std_high, std_low, std_f = standard_astable_period(timer.r1, timer.r2, timer.c2)
    return DesignReport(
        v_pk=v_pk,
        v_ripple=v_ripple,
        c_exact=c_exact,
        c_standard=nearest_standard_capacitor(c_exact),
        r_led=led_series_resistor(v_supply, v_led, i_led),
        t_on=t_on,
        t_off=t_off,
        period=period,
        frequency=frequency,
        period_rounded=period_rounded,
        frequency_rounded=frequency_rounded,
        std_t_high=std_high,
        std_t_low=std_low,
        std_frequency=std_f,
    )
