"""Behavioral simulator and design calculator for a dual-sensor heat alarm."""

from .blocks import ComparatorParams, RailParams, SensorParams
from .engine import (
    AlarmReport,
    CircuitSystem,
    TemperatureProfile,
    alarm_intervals,
    measure_frequency,
    run_transient,
    sweep_preset,
)
from .scenario import ScenarioDoc, ScenarioError, parse_scenario, render_scenario, write_trace
from .timer555 import Timer555Config, Timer555State, TimerInputs, TimerMode
from .units import LogicLevel, Trace

__version__ = "0.1.0"
