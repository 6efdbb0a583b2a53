"""Unit-carrying quantities and the radio context shared by all models."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError

SPEED_OF_LIGHT = 299_792_458.0  # m/s


@dataclass(frozen=True, order=True)
class Frequency:
    """Carrier frequency, stored in MHz."""

    mhz: float

    def __post_init__(self):
        if not math.isfinite(self.mhz) or self.mhz <= 0:
            raise DomainError(f"frequency must be positive, got {self.mhz} MHz")

    @classmethod
    def from_ghz(cls, ghz: float) -> Frequency:
        return cls(ghz * 1000.0)

    @property
    def ghz(self) -> float:
        return self.mhz / 1000.0

    @property
    def hz(self) -> float:
        return self.mhz * 1e6

    @property
    def wavelength_m(self) -> float:
        return SPEED_OF_LIGHT / self.hz


@dataclass(frozen=True, order=True)
class Distance:
    """Transmitter-receiver separation, stored in meters."""

    m: float

    def __post_init__(self):
        if not math.isfinite(self.m) or self.m <= 0:
            raise DomainError(f"distance must be positive, got {self.m} m", distance_m=self.m)

    @classmethod
    def from_km(cls, km: float) -> Distance:
        return cls(km * 1000.0)

    @property
    def km(self) -> float:
        return self.m / 1000.0

    def ratio(self, reference: Distance) -> float:
        return self.m / reference.m


class EnvironmentClass(str, Enum):
    URBAN_LARGE = "urban_large"
    URBAN_MEDIUM = "urban_medium"
    SUBURBAN = "suburban"
    OPEN = "open"

    @property
    def is_urban(self) -> bool:
        return self in (EnvironmentClass.URBAN_LARGE, EnvironmentClass.URBAN_MEDIUM)


class TerrainCategory(Enum):
    """SUI terrain classes with their (a, b [1/m], c [m]) constants."""

    A = (4.6, 0.0075, 12.6)
    B = (4.0, 0.0065, 17.1)
    C = (3.6, 0.005, 20.0)

    @property
    def a(self) -> float:
        return self.value[0]

    @property
    def b(self) -> float:
        return self.value[1]

    @property
    def c(self) -> float:
        return self.value[2]


DEFAULT_TERRAIN = {
    EnvironmentClass.URBAN_LARGE: TerrainCategory.A,
    EnvironmentClass.URBAN_MEDIUM: TerrainCategory.A,
    EnvironmentClass.SUBURBAN: TerrainCategory.B,
    EnvironmentClass.OPEN: TerrainCategory.C,
}

DEFAULT_SHADOWING_DB = {
    EnvironmentClass.URBAN_LARGE: 10.6,
    EnvironmentClass.URBAN_MEDIUM: 10.6,
    EnvironmentClass.SUBURBAN: 8.2,
    EnvironmentClass.OPEN: 8.2,
}

SHADOWING_RANGE_DB = (8.2, 10.6)


@dataclass(frozen=True)
class RadioContext:
    """Inputs shared by every propagation model.

    ``terrain`` and ``shadowing_db`` default from the environment class when
    left as ``None``.
    """

    f: Frequency
    hb: float
    hr: float = 1.5
    env: EnvironmentClass = EnvironmentClass.URBAN_LARGE
    terrain: TerrainCategory = field(default=None)  # type: ignore[assignment]
    shadowing_db: float = field(default=None)  # type: ignore[assignment]
    d0: Distance = Distance(50.0)

    def __post_init__(self):
        if not isinstance(self.f, Frequency):
            raise TypeError("RadioContext.f must be a Frequency")
        env = EnvironmentClass(self.env)
        object.__setattr__(self, "env", env)
        if self.terrain is None:
            object.__setattr__(self, "terrain", DEFAULT_TERRAIN[env])
        if self.shadowing_db is None:
            object.__setattr__(self, "shadowing_db", DEFAULT_SHADOWING_DB[env])
        if not (self.hr > 0 and self.hb > self.hr):
            raise DomainError(f"need hb > hr > 0, got hb={self.hb} m, hr={self.hr} m")
        lo, hi = SHADOWING_RANGE_DB
        if not lo <= self.shadowing_db <= hi:
            raise DomainError(f"shadowing {self.shadowing_db} dB outside [{lo}, {hi}] dB")
