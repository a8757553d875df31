"""Behavioral 555 timer: astable, monostable and bistable modes.

The timing capacitor follows exact RC exponentials. Threshold crossings that
fall inside a step are located by solving the exponential for the crossing
time, so the capacitor never overshoots Vs/3 or 2Vs/3 and several output
flips can happen within one large step.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from .units import (
    Capacitance,
    Duration,
    LogicLevel,
    Resistance,
    Trace,
    Voltage,
    require_nonnegative,
    require_positive,
)

RESET_THRESHOLD = 0.4  # pin 4 active below this level
BISTABLE_RESET_THRESHOLD = 0.7

# Guards the in-step crossing loop against a pathological (near-zero tau) config.
_MAX_FLIPS_PER_STEP = 1_000_000


class TimerMode(str, enum.Enum):
    ASTABLE = "astable"
    MONOSTABLE = "monostable"
    BISTABLE = "bistable"


@dataclass(frozen=True)
class Timer555Config:
    mode: TimerMode = TimerMode.ASTABLE
    vs: Voltage = 5.0
    r1: Resistance = 68e3
    r2: Resistance = 68e3
    c: Capacitance = 1e-6
    r_mono: Resistance = 100e3

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", TimerMode(self.mode))
        require_positive("vs", self.vs)
        if self.mode is TimerMode.ASTABLE:
            require_positive("r1", self.r1)
            require_positive("r2", self.r2)
            require_positive("c", self.c)
        elif self.mode is TimerMode.MONOSTABLE:
            require_positive("r_mono", self.r_mono)
            require_positive("c", self.c)

    @property
    def tau_charge(self) -> Duration:
        return (self.r1 + self.r2) * self.c

    @property
    def tau_discharge(self) -> Duration:
        return self.r2 * self.c

    @property
    def tau_min(self) -> Duration:
        if self.mode is TimerMode.MONOSTABLE:
            return self.r_mono * self.c
        return min(self.tau_charge, self.tau_discharge)

    @property
    def v_upper(self) -> Voltage:
        return 2.0 * self.vs / 3.0

    @property
    def v_lower(self) -> Voltage:
        return self.vs / 3.0


@dataclass(frozen=True)
class Timer555State:
    v_cap: Voltage = 0.0
    output: LogicLevel = LogicLevel.LOW
    discharging: bool = False


@dataclass(frozen=True)
class TimerInputs:
    trigger: Voltage = 5.0
    reset: Voltage = 5.0
    enable: bool = True

    def __post_init__(self) -> None:
        require_nonnegative("trigger", self.trigger)
        require_nonnegative("reset", self.reset)


def timer_init(cfg: Timer555Config) -> Timer555State:
    if not isinstance(cfg, Timer555Config):
        raise TypeError(f"expected Timer555Config, got {type(cfg).__name__}")
    if cfg.mode is TimerMode.ASTABLE:
        return Timer555State(0.0, LogicLevel.HIGH, False)
    return Timer555State(0.0, LogicLevel.LOW, False)


def reset_active(inputs: TimerInputs, cfg: Timer555Config) -> bool:
    if not inputs.enable:
        return True
    limit = BISTABLE_RESET_THRESHOLD if cfg.mode is TimerMode.BISTABLE else RESET_THRESHOLD
    return inputs.reset < limit


def _relax(v: float, target: float, tau: float, t: float) -> float:
    return target + (v - target) * math.exp(-t / tau)


def _time_to_reach(v: float, target: float, level: float, tau: float) -> float:
    """Time for an RC relaxation from ``v`` toward ``target`` to hit ``level``.

    Returns ``inf`` when the level lies beyond the asymptote.
    """
    num = v - target
    den = level - target
    if num == 0 or den == 0 or (num > 0) != (den > 0) or abs(den) > abs(num):
        return 0.0 if den == num else math.inf
    return tau * math.log(num / den)


def _step_astable(state: Timer555State, cfg: Timer555Config, dt: float) -> Timer555State:
    v, out = state.v_cap, state.output
    remaining = dt
    for _ in range(_MAX_FLIPS_PER_STEP):
        if out is LogicLevel.HIGH:
            if v >= cfg.v_upper:
                out = LogicLevel.LOW
                continue
            t_hit = _time_to_reach(v, cfg.vs, cfg.v_upper, cfg.tau_charge)
            if t_hit > remaining:
                v = _relax(v, cfg.vs, cfg.tau_charge, remaining)
                break
            v, out = cfg.v_upper, LogicLevel.LOW
        else:
            if v <= cfg.v_lower:
                out = LogicLevel.HIGH
                continue
            t_hit = _time_to_reach(v, 0.0, cfg.v_lower, cfg.tau_discharge)
            if t_hit > remaining:
                v = _relax(v, 0.0, cfg.tau_discharge, remaining)
                break
            v, out = cfg.v_lower, LogicLevel.HIGH
        remaining -= t_hit
    else:
        raise RuntimeError("astable step exceeded the crossing limit; dt is far too large for the RC network")
    v = min(max(v, 0.0), cfg.vs)
    return Timer555State(v, out, out is LogicLevel.LOW)


def _step_monostable(
    state: Timer555State, inputs: TimerInputs, cfg: Timer555Config, dt: float
) -> Timer555State:
    tau = cfg.r_mono * cfg.c
    if inputs.trigger < cfg.v_lower:
        # trigger held low keeps the output high and the discharge pin open
        return Timer555State(_relax(state.v_cap, cfg.vs, tau, dt), LogicLevel.HIGH, False)
    if state.output is LogicLevel.LOW:
        return Timer555State(0.0, LogicLevel.LOW, True)
    t_hit = _time_to_reach(state.v_cap, cfg.vs, cfg.v_upper, tau)
    if state.v_cap >= cfg.v_upper or t_hit <= dt:
        return Timer555State(0.0, LogicLevel.LOW, True)
    return Timer555State(_relax(state.v_cap, cfg.vs, tau, dt), LogicLevel.HIGH, False)


def timer_step(
    state: Timer555State, inputs: TimerInputs, cfg: Timer555Config, dt: Duration
) -> Timer555State:
    """Advance the timer by ``dt`` with inputs held constant over the step."""
    if not dt > 0 or not math.isfinite(dt):
        raise ValueError(f"dt must be > 0, got {dt!r}")
    if reset_active(inputs, cfg):
        return Timer555State(0.0, LogicLevel.LOW, cfg.mode is not TimerMode.BISTABLE)
    if cfg.mode is TimerMode.ASTABLE:
        return _step_astable(state, cfg, dt)
    if cfg.mode is TimerMode.MONOSTABLE:
        return _step_monostable(state, inputs, cfg, dt)
    if inputs.trigger < cfg.v_lower:
        return replace(state, output=LogicLevel.HIGH)
    return state


def simulate_timer_free_run(
    cfg: Timer555Config, t_end: Duration, dt: Duration, enable: bool = True
) -> Trace:
    """Run an astable timer with constant inputs and record ``v_cap`` and ``output``.

    Samples are taken at ``k * dt`` for ``k * dt < t_end``; the first sample is
    the initial state.
    """
    if cfg.mode is not TimerMode.ASTABLE:
        raise ValueError(f"free-run simulation needs an astable timer, got {cfg.mode.value}")
    require_positive("dt", dt)
    require_positive("t_end", t_end)
    n = max(1, math.ceil(t_end / dt - 1e-9))
    inputs = TimerInputs(trigger=cfg.vs, reset=cfg.vs, enable=enable)
    state = timer_init(cfg)
    if not enable:
        state = timer_step(state, inputs, cfg, dt)
    v_cap = np.empty(n)
    output = np.empty(n)
    for k in range(n):
        v_cap[k] = state.v_cap
        output[k] = int(state.output)
        state = timer_step(state, inputs, cfg, dt)
    return Trace(dt=dt, channels={"v_cap": v_cap, "output": output})
