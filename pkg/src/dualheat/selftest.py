"""Worked values from the original design sheet, recomputed and compared."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable

from .blocks import SensorParams, comparator_out, ComparatorParams, lm335_voltage, temp_to_threshold
from .design import AstableDesignInput, PsuDesignInput, design_report
from .timer555 import Timer555Config, TimerInputs, TimerMode, timer_init, timer_step
from .units import LogicLevel


@dataclass(frozen=True)
class Check:
    name: str
    compute: Callable[[], float]
    expected: float
    tol: float

    def run(self) -> tuple[bool, float]:
        value = float(self.compute())
        return abs(value - self.expected) <= self.tol, value


def _report():
    return design_report(PsuDesignInput(), AstableDesignInput())


def _reset_output() -> float:
    cfg = Timer555Config()
    state = timer_step(timer_init(cfg), TimerInputs(reset=0.0), cfg, 1e-3)
    return float(state.output)


def _bistable_trigger() -> float:
    cfg = Timer555Config(mode=TimerMode.BISTABLE)
    state = timer_step(timer_init(cfg), TimerInputs(trigger=1.0), cfg, 1e-3)
    return float(state.output)


def _comparator_200mv() -> float:
    return float(comparator_out(0.200, LogicLevel.LOW, ComparatorParams(v_threshold=0.300)))


WORKED_CHECKS: tuple[Check, ...] = (
    Check("peak voltage Vpk [V]", lambda: _report().v_pk, 16.97, 0.01),
    Check("ripple voltage [V]", lambda: _report().v_ripple, 1.1879, 0.0005),
    Check("smoothing capacitor [uF]", lambda: _report().c_exact * 1e6, 1684.0, 1.0),
    Check("standard capacitor [uF]", lambda: _report().c_standard * 1e6, 2200.0, 1e-9),
    Check("LED resistor [ohm]", lambda: _report().r_led, 718.75, 1e-9),
    Check("T_ON [s]", lambda: _report().t_on, 0.0952, 1e-4),
    Check("T_OFF [s]", lambda: _report().t_off, 0.26978, 5e-5),
    Check("T with rounded T_OFF [s]", lambda: _report().period_rounded, 0.3652, 1e-9),
    Check("F [Hz]", lambda: _report().frequency_rounded, 2.74, 0.01),
    Check("LM335 at 298.2 K [V]", lambda: lm335_voltage(298.2, SensorParams()), 2.982, 1e-12),
    Check("threshold for 30 degC [V]", lambda: temp_to_threshold(30.0, SensorParams()), 0.300, 1e-12),
    Check("comparator 200 mV vs 300 mV [logic]", _comparator_200mv, 0.0, 0.0),
    Check("reset forces output low [logic]", _reset_output, 0.0, 0.0),
    Check("bistable trigger 1 V sets output [logic]", _bistable_trigger, 1.0, 0.0),
)


def run_selftest(out=print) -> bool:
    ok = True
    for check in WORKED_CHECKS:
        passed, value = check.run()
        ok &= passed
        out(f"{'PASS' if passed else 'FAIL'}  {check.name:<42} got {value:.8g}  expected {check.expected:g} +/- {check.tol:g}")
    out(f"selftest: {'all checks passed' if ok else 'FAILURES'}")
    return ok
