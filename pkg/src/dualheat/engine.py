"""Fixed-step transient simulation of the dual-sensor alarm chain.

Signal flow per sample: temperature profile -> LM335 voltage (plus optional
seeded noise) -> subtractor -> comparator -> alarm = OR of both comparators.
The alarm gates the 555 (enable line in astable mode) and the load is enabled
only while the alarm is off.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Sequence

import numpy as np

from .blocks import (
    ComparatorParams,
    RailParams,
    SensorParams,
    comparator_out,
    filtered_rail,
    lm335_voltage,
    regulator_out,
    subtractor_out,
    temp_to_threshold,
)
from .timer555 import (
    Timer555Config,
    Timer555State,
    TimerInputs,
    TimerMode,
    reset_active,
    timer_init,
    timer_step,
)
from .units import (
    KELVIN_OFFSET,
    Duration,
    Frequency,
    LogicLevel,
    TemperatureC,
    Trace,
    require_finite,
    require_nonnegative,
    require_positive,
)

N_CHANNELS = 2
ALARM_POLICY = "follow_either"


class UnmeasurableSignalError(ValueError):
    """Raised when a channel has too few edges to measure a frequency."""


@dataclass(frozen=True)
class TemperatureProfile:
    """Piecewise-linear temperature in degC versus time, held constant outside the breakpoints."""

    breakpoints: tuple[tuple[Duration, TemperatureC], ...]

    def __post_init__(self) -> None:
        points = tuple((float(t), float(c)) for t, c in self.breakpoints)
        if not points:
            raise ValueError("profile needs at least one breakpoint")
        for t, c in points:
            require_finite("profile time", t)
            require_finite("profile temperature", c)
            if c < -KELVIN_OFFSET:
                raise ValueError(f"profile temperature {c} degC is below absolute zero")
        for (t_a, _), (t_b, _) in zip(points, points[1:]):
            if not t_b > t_a:
                raise ValueError(f"profile times must be strictly increasing ({t_a} then {t_b})")
        object.__setattr__(self, "breakpoints", points)

    @classmethod
    def constant(cls, temp: TemperatureC) -> "TemperatureProfile":
        return cls(((0.0, temp),))

    @classmethod
    def ramp(cls, t0: Duration, c0: TemperatureC, t1: Duration, c1: TemperatureC) -> "TemperatureProfile":
        return cls(((t0, c0), (t1, c1)))

    def at(self, t):
        times, temps = zip(*self.breakpoints)
        out = np.interp(t, times, temps)
        return float(out) if np.ndim(t) == 0 else out

    @property
    def max_temp(self) -> TemperatureC:
        return max(c for _, c in self.breakpoints)

    @property
    def min_temp(self) -> TemperatureC:
        return min(c for _, c in self.breakpoints)


@dataclass(frozen=True)
class CircuitSystem:
    rail: RailParams = field(default_factory=RailParams)
    sensors: tuple[SensorParams, SensorParams] = (SensorParams(), SensorParams())
    comparators: tuple[ComparatorParams, ComparatorParams] = (ComparatorParams(), ComparatorParams())
    timer: Timer555Config = field(default_factory=Timer555Config)
    alarm_policy: str = ALARM_POLICY

    def __post_init__(self) -> None:
        object.__setattr__(self, "sensors", tuple(self.sensors))
        object.__setattr__(self, "comparators", tuple(self.comparators))
        if len(self.sensors) != N_CHANNELS or len(self.comparators) != N_CHANNELS:
            raise ValueError("the system has exactly two sensor channels and two comparators")
        if self.alarm_policy != ALARM_POLICY:
            raise ValueError(f"unsupported alarm policy {self.alarm_policy!r}")
        for i, cmp in enumerate(self.comparators, start=1):
            if not 0.0 <= cmp.v_threshold <= self.rail.reg_setpoint:
                raise ValueError(
                    f"comparator {i} threshold {cmp.v_threshold} V is outside [0, {self.rail.reg_setpoint}] V"
                )

    @classmethod
    def with_presets(
        cls,
        presets: Sequence[TemperatureC],
        hysteresis: Sequence[float] = (0.0, 0.0),
        sensors: Sequence[SensorParams] = (SensorParams(), SensorParams()),
        **kwargs,
    ) -> "CircuitSystem":
        comparators = tuple(
            ComparatorParams(temp_to_threshold(p, s), h) for p, s, h in zip(presets, sensors, hysteresis)
        )
        return cls(sensors=tuple(sensors), comparators=comparators, **kwargs)


@dataclass(frozen=True)
class AlarmReport:
    intervals: tuple[tuple[Duration, Duration], ...]
    sensor_triggered: tuple[bool, ...]

    @property
    def first_alarm(self) -> Duration | None:
        return self.intervals[0][0] if self.intervals else None

    def summary(self) -> str:
        lines = [f"alarm intervals: {len(self.intervals)}"]
        for start, end in self.intervals:
            lines.append(f"  [{start:.6g} s, {end:.6g} s)  duration {end - start:.6g} s")
        for i, hit in enumerate(self.sensor_triggered, start=1):
            lines.append(f"sensor {i} triggered: {'yes' if hit else 'no'}")
        return "\n".join(lines)


def sample_count(dt: Duration, t_end: Duration) -> int:
    """Number of samples ``k * dt`` that lie in ``[0, t_end)``."""
    return max(1, math.ceil(t_end / dt - 1e-9))


def _timer_inputs(cfg: Timer555Config, alarm: bool) -> TimerInputs:
    high = cfg.vs
    if cfg.mode is TimerMode.ASTABLE:
        return TimerInputs(trigger=high, reset=high, enable=alarm)
    if cfg.mode is TimerMode.MONOSTABLE:
        return TimerInputs(trigger=0.0 if alarm else high, reset=high)
    return TimerInputs(trigger=0.0 if alarm else high, reset=high if alarm else 0.0)


def _settle(state: Timer555State, inputs: TimerInputs, cfg: Timer555Config) -> Timer555State:
    if reset_active(inputs, cfg):
        return Timer555State(0.0, LogicLevel.LOW, cfg.mode is not TimerMode.BISTABLE)
    return state


def run_transient(
    system: CircuitSystem,
    profiles: Sequence[TemperatureProfile],
    dt: Duration,
    t_end: Duration,
    noise_amplitude: float = 0.0,
    seed: int = 0,
) -> Trace:
    """Simulate the full chain on the grid ``k * dt`` for ``k * dt < t_end``.

    Noise, when enabled, is zero-mean uniform on ``[-a, a]`` volts added to each
    sensor voltage independently, drawn from ``numpy.random.default_rng(seed)``.
    The timer state recorded at sample ``k`` reflects inputs up to sample ``k - 1``
    plus any reset applied at ``k``.
    """
    dt = require_positive("dt", dt)
    t_end = require_finite("t_end", t_end)
    if not t_end > dt:
        raise ValueError(f"t_end ({t_end}) must exceed dt ({dt})")
    noise_amplitude = require_nonnegative("noise_amplitude", noise_amplitude)
    profiles = tuple(profiles)
    if len(profiles) != N_CHANNELS:
        raise ValueError(f"expected {N_CHANNELS} temperature profiles, got {len(profiles)}")

    n = sample_count(dt, t_end)
    times = np.arange(n) * dt
    v_rail = filtered_rail(times, system.rail)
    v_reg = regulator_out(v_rail, system.rail)
    rng = np.random.default_rng(seed) if noise_amplitude > 0 else None

    columns: dict[str, np.ndarray] = {"v_rail": v_rail, "v_reg": v_reg}
    sub_outs = []
    for i, (profile, sensor) in enumerate(zip(profiles, system.sensors), start=1):
        v_sensor = lm335_voltage(profile.at(times) + KELVIN_OFFSET, sensor)
        if rng is not None:
            v_sensor = v_sensor + rng.uniform(-noise_amplitude, noise_amplitude, size=n)
        columns[f"v_sensor{i}"] = v_sensor
        sub_outs.append(subtractor_out(v_sensor, sensor, v_rail))
    for i, sub in enumerate(sub_outs, start=1):
        columns[f"v_sub{i}"] = sub

    cmp_levels = np.zeros((N_CHANNELS, n))
    for i, (sub, params) in enumerate(zip(sub_outs, system.comparators)):
        level = LogicLevel.LOW
        row = cmp_levels[i]
        for k in range(n):
            level = comparator_out(sub[k], level, params)
            row[k] = level
    alarm = np.logical_or(cmp_levels[0] > 0, cmp_levels[1] > 0)

    cfg = system.timer
    v_cap = np.empty(n)
    t_out = np.empty(n)
    state = timer_init(cfg)
    for k in range(n):
        inputs = _timer_inputs(cfg, bool(alarm[k]))
        state = _settle(state, inputs, cfg)
        v_cap[k] = state.v_cap
        t_out[k] = int(state.output)
        state = timer_step(state, inputs, cfg, dt)

    columns["cmp1"] = cmp_levels[0]
    columns["cmp2"] = cmp_levels[1]
    columns["alarm"] = alarm.astype(float)
    columns["timer_vcap"] = v_cap
    columns["timer_out"] = t_out
    columns["load_enable"] = (~alarm).astype(float)
    return Trace(dt=dt, channels=columns)


def _high_runs(levels: np.ndarray) -> list[tuple[int, int]]:
    high = np.concatenate(([False], np.asarray(levels) > 0.5, [False]))
    edges = np.flatnonzero(np.diff(high.astype(np.int8)))
    return list(zip(edges[::2].tolist(), edges[1::2].tolist()))


def alarm_intervals(trace: Trace) -> AlarmReport:
    """Maximal runs of a high alarm channel as ``[start, end)`` at sample resolution."""
    if "alarm" not in trace.channels:
        raise KeyError("trace has no 'alarm' channel")
    intervals = tuple(
        (trace.t0 + k1 * trace.dt, trace.t0 + k2 * trace.dt) for k1, k2 in _high_runs(trace["alarm"])
    )
    flags = tuple(
        bool(np.any(trace[f"cmp{i}"] > 0.5)) if f"cmp{i}" in trace.channels else bool(intervals)
        for i in range(1, N_CHANNELS + 1)
    )
    return AlarmReport(intervals=intervals, sensor_triggered=flags)


def edge_count(samples: np.ndarray) -> int:
    """Number of level changes (rising plus falling) in a logic channel."""
    high = np.asarray(samples) > 0.5
    return int(np.count_nonzero(high[1:] != high[:-1]))


def rising_edge_times(trace: Trace, channel: str, window: tuple[Duration, Duration] | None = None) -> np.ndarray:
    samples = np.asarray(trace[channel])
    times = trace.times()
    if window is not None:
        lo, hi = window
        if lo < trace.t0 or hi > trace.t_end + 1e-12 or not hi > lo:
            raise ValueError(f"window {window} is not inside the trace span [{trace.t0}, {trace.t_end}]")
        keep = (times >= lo) & (times <= hi)
        samples, times = samples[keep], times[keep]
    if samples.size == 0:
        return np.empty(0)
    mid = 0.5 * (samples.max() + samples.min())
    high = samples > mid
    rising = np.flatnonzero(~high[:-1] & high[1:]) + 1
    return times[rising]


def measure_frequency(
    trace: Trace, channel: str, window: tuple[Duration, Duration] | None = None
) -> Frequency:
    """Frequency from rising edges: ``(edges - 1) / (t_last_edge - t_first_edge)``.

    A sample counts as a rising edge when it is above the channel's mid-level
    and its predecessor is not.

    Raises:
        UnmeasurableSignalError: fewer than two rising edges in the window.
    """
    edges = rising_edge_times(trace, channel, window)
    if edges.size < 2:
        raise UnmeasurableSignalError(
            f"channel {channel!r} has {edges.size} rising edge(s) in the window; need at least 2"
        )
    return (edges.size - 1) / (edges[-1] - edges[0])


def measure_duty_cycle(trace: Trace, channel: str, window: tuple[Duration, Duration] | None = None) -> float:
    """High fraction over the whole cycles between the first and last rising edge."""
    edges = rising_edge_times(trace, channel, window)
    if edges.size < 2:
        raise UnmeasurableSignalError(f"channel {channel!r} needs two rising edges to measure duty cycle")
    times = trace.times()
    span = (times >= edges[0] - 1e-12) & (times < edges[-1] - 1e-12)
    return float(np.mean(trace[channel][span] > 0.5))


def first_alarm_time(trace: Trace) -> Duration | None:
    return alarm_intervals(trace).first_alarm


def sweep_preset(
    system: CircuitSystem,
    profile: TemperatureProfile,
    presets: Sequence[TemperatureC],
    dt: Duration,
    t_end: Duration,
) -> list[tuple[TemperatureC, Duration | None]]:
    """First alarm time for each preset.

    Both channels see ``profile`` and both comparators get the preset, mirroring
    a bench test where each dial is set to the same value.
    """
    presets = list(presets)
    if not presets:
        raise ValueError("preset list is empty")
    rows = []
    for preset in presets:
        comparators = tuple(
            replace(cmp, v_threshold=temp_to_threshold(preset, sensor))
            for cmp, sensor in zip(system.comparators, system.sensors)
        )
        trial = replace(system, comparators=comparators)
        trace = run_transient(trial, (profile, profile), dt, t_end)
        rows.append((float(preset), first_alarm_time(trace)))
    return rows
