"""Physical quantity aliases, temperature conversion, logic levels and the Trace container.

Quantities are plain floats in SI base units. The aliases only document intent
at API boundaries; no unit algebra is performed.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

Voltage = float
Resistance = float
Capacitance = float
Current = float
Duration = float
Frequency = float
TemperatureK = float
TemperatureC = float

KELVIN_OFFSET = 273.15


def require_finite(name: str, value: float) -> float:
    value = float(value)
    if not math.isfinite(value):
        raise ValueError(f"{name} must be finite, got {value!r}")
    return value


def require_positive(name: str, value: float) -> float:
    value = require_finite(name, value)
    if value <= 0:
        raise ValueError(f"{name} must be > 0, got {value!r}")
    return value


def require_nonnegative(name: str, value: float) -> float:
    value = require_finite(name, value)
    if value < 0:
        raise ValueError(f"{name} must be >= 0, got {value!r}")
    return value


def kelvin_from_celsius(t: TemperatureC) -> TemperatureK:
    """Convert degrees Celsius to kelvin.

    Raises:
        ValueError: if ``t`` is below absolute zero or not finite.
    """
    t = require_finite("temperature", t)
    if t < -KELVIN_OFFSET:
        raise ValueError(f"temperature {t} degC is below absolute zero")
    return t + KELVIN_OFFSET


def celsius_from_kelvin(t: TemperatureK) -> TemperatureC:
    return require_nonnegative("temperature", t) - KELVIN_OFFSET


class LogicLevel(enum.IntEnum):
    LOW = 0
    HIGH = 1

    def volts(self, v_high: Voltage) -> Voltage:
        """Render the level as a signal: HIGH is the positive rail, LOW is 0 V."""
        return float(v_high) if self is LogicLevel.HIGH else 0.0


@dataclass(frozen=True)
class Trace:
    """Uniformly sampled multi-channel waveform.

    Sample ``k`` of every channel belongs to time ``t0 + k * dt``. Channels are
    kept in insertion order, which is also the column order on export.
    """

    dt: Duration
    t0: Duration = 0.0
    channels: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self) -> None:
        require_positive("dt", self.dt)
        require_finite("t0", self.t0)
        lengths = {len(v) for v in self.channels.values()}
        if len(lengths) > 1:
            raise ValueError(f"trace channels have unequal lengths: {sorted(lengths)}")
        frozen = {}
        for name, samples in self.channels.items():
            arr = np.array(samples, dtype=float)
            arr.setflags(write=False)
            frozen[name] = arr
        object.__setattr__(self, "channels", frozen)

    @classmethod
    def from_columns(
        cls, dt: Duration, columns: Iterable[tuple[str, Sequence[float]]], t0: Duration = 0.0
    ) -> "Trace":
        return cls(dt=dt, t0=t0, channels=dict(columns))

    @property
    def names(self) -> list[str]:
        return list(self.channels)

    def __len__(self) -> int:
        for samples in self.channels.values():
            return len(samples)
        return 0

    @property
    def t_end(self) -> Duration:
        """Time one step past the last sample, i.e. the end of the covered span."""
        return self.t0 + len(self) * self.dt

    def times(self) -> np.ndarray:
        return self.t0 + np.arange(len(self)) * self.dt

    def __getitem__(self, name: str) -> np.ndarray:
        try:
            return self.channels[name]
        except KeyError:
            raise KeyError(f"trace has no channel {name!r}; available: {self.names}") from None

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Trace):
            return NotImplemented
        return (
            self.dt == other.dt
            and self.t0 == other.t0
            and self.names == other.names
            and all(np.array_equal(self[n], other[n]) for n in self.names)
        )

    __hash__ = None  # type: ignore[assignment]
