"""Stateless transfer functions for the analog signal chain.

Supply: bridge rectifier, reservoir capacitor, linear regulator.
Sensing: LM335 (volts proportional to kelvin), single-supply subtractor that
offsets the reading to Celsius, preset-to-threshold mapping, comparator.

Rail functions accept scalars or numpy arrays of times.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .units import (
    KELVIN_OFFSET,
    Capacitance,
    Current,
    Duration,
    Frequency,
    LogicLevel,
    TemperatureC,
    TemperatureK,
    Voltage,
    require_finite,
    require_nonnegative,
    require_positive,
)


@dataclass(frozen=True)
class RailParams:
    vs_rms: Voltage = 12.0
    mains_freq: Frequency = 50.0
    diode_drop: Voltage = 0.7
    c_filter: Capacitance = 2200e-6
    i_load: Current = 0.2
    reg_setpoint: Voltage = 5.0
    reg_dropout: Voltage = 2.0

    def __post_init__(self) -> None:
        require_positive("vs_rms", self.vs_rms)
        require_positive("mains_freq", self.mains_freq)
        require_positive("c_filter", self.c_filter)
        require_positive("reg_setpoint", self.reg_setpoint)
        require_nonnegative("diode_drop", self.diode_drop)
        require_nonnegative("i_load", self.i_load)
        require_nonnegative("reg_dropout", self.reg_dropout)

    @property
    def rectified_peak(self) -> Voltage:
        return max(0.0, self.vs_rms * math.sqrt(2.0) - 2.0 * self.diode_drop)


@dataclass(frozen=True)
class SensorParams:
    """LM335 gain and the subtractor's reference.

    The defaults are datasheet values (10 mV/K, reference at 0 degC). For a
    Celsius-exact reading the reference must equal ``gain * 273.15``.
    """

    gain: float = 0.010
    v_ref_subtract: Voltage = 2.7315

    def __post_init__(self) -> None:
        require_positive("gain", self.gain)
        require_finite("v_ref_subtract", self.v_ref_subtract)

    @classmethod
    def celsius_referenced(cls, gain: float) -> "SensorParams":
        return cls(gain=gain, v_ref_subtract=gain * KELVIN_OFFSET)


# Float slack for the tie rule: the sensor/subtractor chain can land a few ulps
# under a threshold it mathematically equals.
TIE_TOLERANCE = 1e-12


@dataclass(frozen=True)
class ComparatorParams:
    v_threshold: Voltage = 0.300
    hysteresis: Voltage = 0.0

    def __post_init__(self) -> None:
        require_finite("v_threshold", self.v_threshold)
        require_nonnegative("hysteresis", self.hysteresis)


def _scalar_or_array(x: np.ndarray, like) -> float | np.ndarray:
    return float(x) if np.ndim(like) == 0 else x


def rectified_voltage(t: Duration | np.ndarray, p: RailParams) -> Voltage | np.ndarray:
    """Full-wave bridge output: two diode drops per conduction path, never negative."""
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0):
        raise ValueError("t must be >= 0")
    amplitude = p.vs_rms * math.sqrt(2.0)
    v = np.abs(amplitude * np.sin(2.0 * math.pi * p.mains_freq * t_arr)) - 2.0 * p.diode_drop
    return _scalar_or_array(np.maximum(v, 0.0), t)


def filtered_rail(t: Duration | np.ndarray, p: RailParams) -> Voltage | np.ndarray:
    """Reservoir-capacitor rail with instant recharge and constant-current droop.

    The diodes stop conducting where the falling half-sine becomes steeper than
    the droop slope ``i_load / c_filter``. From that departure point the rail
    decays linearly until the next half-cycle rises above it again. The
    capacitor is taken as already charged at ``t = 0`` (steady state, no
    power-up transient), so the waveform is periodic in ``1 / (2 f)``.
    """
    t_arr = np.asarray(t, dtype=float)
    rect = np.asarray(rectified_voltage(t_arr, p))
    amplitude = p.vs_rms * math.sqrt(2.0)
    omega = 2.0 * math.pi * p.mains_freq
    slope = p.i_load / p.c_filter
    if slope >= amplitude * omega:
        return _scalar_or_array(rect, t)
    theta_d = math.acos(-slope / (amplitude * omega))
    v_depart = amplitude * math.sin(theta_d) - 2.0 * p.diode_drop
    if v_depart <= 0:
        return _scalar_or_array(rect, t)
    half_cycle = np.floor((omega * t_arr - theta_d) / math.pi)
    t_depart = (half_cycle * math.pi + theta_d) / omega
    droop = v_depart - slope * (t_arr - t_depart)
    return _scalar_or_array(np.maximum(np.maximum(rect, droop), 0.0), t)


def regulator_out(v_in: Voltage | np.ndarray, p: RailParams) -> Voltage | np.ndarray:
    """Ideal series regulator: setpoint when there is headroom, ``v_in - dropout`` otherwise."""
    v = np.asarray(v_in, dtype=float)
    if np.any(v < 0):
        raise ValueError("v_in must be >= 0")
    out = np.minimum(p.reg_setpoint, np.maximum(0.0, v - p.reg_dropout))
    return _scalar_or_array(out, v_in)


def lm335_voltage(t: TemperatureK | np.ndarray, p: SensorParams) -> Voltage | np.ndarray:
    t_arr = np.asarray(t, dtype=float)
    if np.any(t_arr < 0) or not np.all(np.isfinite(t_arr)):
        raise ValueError("absolute temperature must be finite and >= 0 K")
    return _scalar_or_array(p.gain * t_arr, t)


def subtractor_out(
    v_sensor: Voltage | np.ndarray, p: SensorParams, v_rail: Voltage | np.ndarray
) -> Voltage | np.ndarray:
    """Sensor voltage minus the reference, clipped to the op-amp's single supply."""
    out = np.clip(np.asarray(v_sensor, dtype=float) - p.v_ref_subtract, 0.0, v_rail)
    return _scalar_or_array(out, v_sensor)


def temp_to_threshold(preset: TemperatureC, p: SensorParams) -> Voltage:
    """Comparator reference voltage matching a preset temperature in degC."""
    v = require_finite("preset", preset) * p.gain
    if v < 0:
        raise ValueError(f"preset {preset} degC maps to a negative threshold ({v} V)")
    return v


def comparator_out(v_plus: Voltage, state_prev: LogicLevel, p: ComparatorParams) -> LogicLevel:
    """Comparator with optional hysteresis.

    Rises when ``v_plus`` reaches the threshold and falls once it drops below
    ``threshold - hysteresis``. Equality counts as "at or above the preset",
    so it drives the output high.
    """
    threshold = p.v_threshold
    if state_prev is LogicLevel.HIGH:
        threshold -= p.hysteresis
    return LogicLevel.HIGH if v_plus >= threshold - TIE_TOLERANCE else LogicLevel.LOW
