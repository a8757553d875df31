"""Scenario files and trace export.

Scenario grammar (format 1)::

    # comment
    [supply]            vs_rms, mains_freq, diode_drop, c_filter, i_load, reg_setpoint, reg_dropout
    [sensor.1|2]        gain, v_ref
    [comparator.1|2]    preset (degC), hysteresis (V)
    [timer]             mode, vs, r1, r2, c, r_mono
    [profile.1|2]       one "time_s temp_c" pair per line
    [run]               format, dt, t_end, seed, noise

Numbers take an optional decimal SI suffix (``68k``, ``1u``, ``2.2m``).
Unknown sections or keys are errors; ``[run]`` and both profiles are required.
"""

from __future__ import annotations

import csv
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Callable

import numpy as np

from .blocks import ComparatorParams, RailParams, SensorParams, temp_to_threshold
from .engine import CircuitSystem, TemperatureProfile
from .timer555 import Timer555Config, TimerMode
from .units import Duration, TemperatureC, Trace, Voltage

FORMAT_VERSION = 1

SI_SUFFIXES = {"k": 1e3, "M": 1e6, "m": 1e-3, "u": 1e-6, "n": 1e-9}

_NUMBER = re.compile(r"^([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)([kMmun]?)$")
_SECTION = re.compile(r"^\[([A-Za-z_]+(?:\.\d+)?)\]$")


class ScenarioError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line
        self.message = message


@dataclass(frozen=True)
class ComparatorSetting:
    preset: TemperatureC = 30.0
    hysteresis: Voltage = 0.0


@dataclass(frozen=True)
class RunParams:
    dt: Duration = 1e-3
    t_end: Duration = 10.0
    seed: int = 0
    noise: Voltage = 0.0
    format: int = FORMAT_VERSION


@dataclass(frozen=True)
class ScenarioDoc:
    profiles: tuple[TemperatureProfile, TemperatureProfile]
    supply: RailParams = field(default_factory=RailParams)
    sensors: tuple[SensorParams, SensorParams] = (SensorParams(), SensorParams())
    comparators: tuple[ComparatorSetting, ComparatorSetting] = (ComparatorSetting(), ComparatorSetting())
    timer: Timer555Config = field(default_factory=Timer555Config)
    run: RunParams = field(default_factory=RunParams)

    def to_system(self) -> CircuitSystem:
        comparators = tuple(
            ComparatorParams(temp_to_threshold(c.preset, s), c.hysteresis)
            for c, s in zip(self.comparators, self.sensors)
        )
        return CircuitSystem(rail=self.supply, sensors=self.sensors, comparators=comparators, timer=self.timer)


def parse_number(text: str) -> float:
    m = _NUMBER.match(text.strip())
    if not m:
        raise ValueError(f"not a number: {text!r}")
    value = float(m.group(1))
    if m.group(2):
        value *= SI_SUFFIXES[m.group(2)]
    return value


def _positive(v: float) -> float:
    if not v > 0:
        raise ValueError("must be > 0")
    return v


def _nonnegative(v: float) -> float:
    if v < 0:
        raise ValueError("must be >= 0")
    return v


def _any(v: float) -> float:
    return v


def _count(v: float) -> int:
    if v < 0 or v != int(v):
        raise ValueError("must be a non-negative integer")
    return int(v)


# section -> {key: (attribute name, validator)}
_SUPPLY_KEYS = {
    "vs_rms": ("vs_rms", _positive),
    "mains_freq": ("mains_freq", _positive),
    "diode_drop": ("diode_drop", _nonnegative),
    "c_filter": ("c_filter", _positive),
    "i_load": ("i_load", _nonnegative),
    "reg_setpoint": ("reg_setpoint", _positive),
    "reg_dropout": ("reg_dropout", _nonnegative),
}
_SENSOR_KEYS = {"gain": ("gain", _positive), "v_ref": ("v_ref_subtract", _any)}
_COMPARATOR_KEYS = {"preset": ("preset", _any), "hysteresis": ("hysteresis", _nonnegative)}
_TIMER_KEYS = {
    "mode": ("mode", None),
    "vs": ("vs", _positive),
    "r1": ("r1", _positive),
    "r2": ("r2", _positive),
    "c": ("c", _positive),
    "r_mono": ("r_mono", _positive),
}
_RUN_KEYS = {
    "format": ("format", _count),
    "dt": ("dt", _positive),
    "t_end": ("t_end", _positive),
    "seed": ("seed", _count),
    "noise": ("noise", _nonnegative),
}

SECTION_ORDER = (
    "supply",
    "sensor.1",
    "sensor.2",
    "comparator.1",
    "comparator.2",
    "timer",
    "profile.1",
    "profile.2",
    "run",
)
REQUIRED_SECTIONS = ("profile.1", "profile.2", "run")


def _key_table(section: str) -> dict[str, tuple[str, Callable | None]]:
    kind = section.split(".")[0]
    return {
        "supply": _SUPPLY_KEYS,
        "sensor": _SENSOR_KEYS,
        "comparator": _COMPARATOR_KEYS,
        "timer": _TIMER_KEYS,
        "run": _RUN_KEYS,
    }[kind]


class _Section:
    def __init__(self, name: str, line: int):
        self.name = name
        self.line = line
        self.values: dict[str, object] = {}
        self.key_lines: dict[str, int] = {}
        self.points: list[tuple[float, float]] = []


def _parse_key_value(sec: _Section, text: str, lineno: int) -> None:
    if "=" not in text:
        raise ScenarioError(lineno, f"expected 'key = value' in [{sec.name}], got {text!r}")
    key, _, raw = (part.strip() for part in text.partition("="))
    table = _key_table(sec.name)
    if key not in table:
        raise ScenarioError(lineno, f"unknown key {key!r} in [{sec.name}]; allowed: {', '.join(table)}")
    if key in sec.values:
        raise ScenarioError(lineno, f"duplicate key {key!r} in [{sec.name}]")
    attr, check = table[key]
    if check is None:
        try:
            value: object = TimerMode(raw)
        except ValueError:
            modes = ", ".join(m.value for m in TimerMode)
            raise ScenarioError(lineno, f"unknown timer mode {raw!r}; expected one of {modes}") from None
    else:
        try:
            value = check(parse_number(raw))
        except ValueError as exc:
            raise ScenarioError(lineno, f"{key}: {exc}") from None
    sec.values[attr] = value
    sec.key_lines[attr] = lineno


def _parse_profile_line(sec: _Section, text: str, lineno: int) -> None:
    parts = text.split()
    if len(parts) != 2:
        raise ScenarioError(lineno, f"profile lines hold 'time temp', got {text!r}")
    try:
        t, temp = parse_number(parts[0]), parse_number(parts[1])
    except ValueError as exc:
        raise ScenarioError(lineno, str(exc)) from None
    if sec.points and not t > sec.points[-1][0]:
        raise ScenarioError(lineno, f"profile times must strictly increase ({sec.points[-1][0]} then {t})")
    if t < 0:
        raise ScenarioError(lineno, f"profile time {t} is negative")
    if temp < -273.15:
        raise ScenarioError(lineno, f"temperature {temp} degC is below absolute zero")
    sec.points.append((t, temp))


def _build(cls, sec: _Section | None, **extra):
    if sec is None:
        return cls(**extra)
    try:
        return cls(**sec.values, **extra)
    except ValueError as exc:
        raise ScenarioError(sec.line, f"[{sec.name}]: {exc}") from None


def parse_scenario(text: str) -> ScenarioDoc:
    """Parse scenario text; every error is a ScenarioError carrying a line number."""
    sections: dict[str, _Section] = {}
    current: _Section | None = None
    lines = text.splitlines()
    for lineno, raw in enumerate(lines, start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        if body.startswith("["):
            m = _SECTION.match(body)
            if not m or m.group(1) not in SECTION_ORDER:
                raise ScenarioError(lineno, f"unknown section {body}; allowed: {', '.join(SECTION_ORDER)}")
            name = m.group(1)
            if name in sections:
                raise ScenarioError(lineno, f"duplicate section [{name}] (first at line {sections[name].line})")
            current = sections[name] = _Section(name, lineno)
        elif current is None:
            raise ScenarioError(lineno, f"content before any section header: {body!r}")
        elif current.name.startswith("profile"):
            _parse_profile_line(current, body, lineno)
        else:
            _parse_key_value(current, body, lineno)

    eof = max(len(lines), 1)
    for name in REQUIRED_SECTIONS:
        if name not in sections:
            raise ScenarioError(eof, f"missing required section [{name}]")

    run_sec = sections["run"]
    if "format" not in run_sec.values:
        raise ScenarioError(run_sec.line, "[run] needs 'format = 1'")
    if run_sec.values["format"] != FORMAT_VERSION:
        raise ScenarioError(run_sec.key_lines["format"], f"unsupported format {run_sec.values['format']}")
    run = _build(RunParams, run_sec)
    if not run.t_end > run.dt:
        raise ScenarioError(run_sec.line, f"t_end ({run.t_end}) must exceed dt ({run.dt})")

    profiles = []
    for i in (1, 2):
        sec = sections[f"profile.{i}"]
        if not sec.points:
            raise ScenarioError(sec.line, f"[profile.{i}] has no breakpoints")
        profiles.append(TemperatureProfile(tuple(sec.points)))

    sensors = tuple(_build(SensorParams, sections.get(f"sensor.{i}")) for i in (1, 2))
    comparators = tuple(_build(ComparatorSetting, sections.get(f"comparator.{i}")) for i in (1, 2))
    supply = _build(RailParams, sections.get("supply"))
    timer = _build(Timer555Config, sections.get("timer"))

    doc = ScenarioDoc(
        profiles=tuple(profiles),
        supply=supply,
        sensors=sensors,
        comparators=comparators,
        timer=timer,
        run=run,
    )
    for i, (setting, sensor) in enumerate(zip(comparators, sensors), start=1):
        sec = sections.get(f"comparator.{i}")
        line = sec.key_lines.get("preset", sec.line) if sec else eof
        try:
            threshold = temp_to_threshold(setting.preset, sensor)
        except ValueError as exc:
            raise ScenarioError(line, f"comparator {i}: {exc}") from None
        if threshold > supply.reg_setpoint:
            raise ScenarioError(
                line, f"comparator {i}: preset maps to {threshold} V, above the {supply.reg_setpoint} V rail"
            )
    return doc


def load_scenario(path: str | Path) -> ScenarioDoc:
    return parse_scenario(Path(path).read_text(encoding="utf-8"))


def _num(value: float) -> str:
    return repr(float(value))


def _render_fields(obj, table: dict[str, tuple[str, Callable | None]]) -> list[str]:
    out = []
    for key, (attr, check) in table.items():
        value = getattr(obj, attr)
        if check is None:
            text = value.value
        elif check is _count:
            text = str(int(value))
        else:
            text = _num(value)
        out.append(f"{key} = {text}")
    return out


def render_scenario(doc: ScenarioDoc) -> str:
    """Canonical text: fixed section and key order, every key explicit, shortest round-trip floats."""
    blocks = []
    blocks.append(["[supply]", *_render_fields(doc.supply, _SUPPLY_KEYS)])
    for i, sensor in enumerate(doc.sensors, start=1):
        blocks.append([f"[sensor.{i}]", *_render_fields(sensor, _SENSOR_KEYS)])
    for i, cmp in enumerate(doc.comparators, start=1):
        blocks.append([f"[comparator.{i}]", *_render_fields(cmp, _COMPARATOR_KEYS)])
    blocks.append(["[timer]", *_render_fields(doc.timer, _TIMER_KEYS)])
    for i, profile in enumerate(doc.profiles, start=1):
        blocks.append([f"[profile.{i}]", *(f"{_num(t)} {_num(c)}" for t, c in profile.breakpoints)])
    blocks.append(["[run]", *_render_fields(doc.run, _RUN_KEYS)])
    return "\n\n".join("\n".join(b) for b in blocks) + "\n"


def write_trace(trace: Trace, path: str | Path) -> None:
    """Write ``time_s`` plus every channel as CSV with round-trip-exact floats."""
    path = Path(path)
    try:
        with path.open("w", newline="", encoding="utf-8") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["time_s", *trace.names])
            columns = [trace.times(), *(trace[n] for n in trace.names)]
            for row in zip(*columns):
                writer.writerow([repr(float(v)) for v in row])
    except OSError as exc:
        raise OSError(f"cannot write trace to {path}: {exc.strerror or exc}") from exc


def read_trace(path: str | Path) -> Trace:
    """Inverse of :func:`write_trace`; ``dt`` is recovered from the time column."""
    with Path(path).open(newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    header, body = rows[0], rows[1:]
    if not header or header[0] != "time_s":
        raise ValueError(f"{path}: first column must be 'time_s'")
    data = np.array([[float(x) for x in r] for r in body], dtype=float).reshape(len(body), len(header))
    times = data[:, 0]
    dt = float(times[1] - times[0]) if len(times) > 1 else 1.0
    t0 = float(times[0]) if len(times) else 0.0
    return Trace(dt=dt, t0=t0, channels={name: data[:, j] for j, name in enumerate(header[1:], start=1)})


def default_scenario_path() -> Path:
    return Path(__file__).with_name("scenarios") / "default.scn"
