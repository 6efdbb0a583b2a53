"""Empirical path-loss models: FSPL, Hata, COST-231, ECC-33, SUI and Ericsson.

Every model is a pure function of a :class:`RadioContext` and a
:class:`Distance`; logarithms are base 10 throughout. Unit conversions
(m -> km, MHz -> GHz, MHz -> wavelength) happen inside the models through
the quantity types, so callers never pre-scale anything.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Protocol, Union

from .errors import DomainError, ModelRangeWarning, UsageError
from .units import Distance, EnvironmentClass, Frequency, RadioContext, TerrainCategory

log10 = math.log10


class ModelId(str, Enum):
    FSPL = "fspl"
    HATA = "hata"
    COST231 = "cost231"
    ECC33 = "ecc33"
    SUI = "sui"
    ERICSSON = "ericsson"


# declaration order doubles as the tie-break order for model selection
MODEL_ORDER = tuple(ModelId)


@dataclass(frozen=True)
class EricssonParams:
    a0: float
    a1: float
    a2: float
    a3: float

    @classmethod
    def for_environment(cls, env: EnvironmentClass) -> EricssonParams:
        if EnvironmentClass(env).is_urban:
            return ERICSSON_URBAN
        return ERICSSON_SUBURBAN


ERICSSON_URBAN = EricssonParams(36.2, 30.2, 12.0, 0.1)
ERICSSON_SUBURBAN = EricssonParams(43.20, 68.93, 12.0, 0.1)

SUI_HB_RANGE_M = (10.0, 80.0)
SUI_MAX_FREQ_MHZ = 2000.0


def fspl(f: Frequency, d: Distance) -> float:
    """Free-space loss, 32.44 + 20 log d[km] + 20 log f[MHz]."""
    return 32.44 + 20.0 * log10(d.km) + 20.0 * log10(f.mhz)


def hata_mobile_correction(f: Frequency, hr: float, env: EnvironmentClass) -> float:
    """Mobile antenna height correction a(hr) shared by Hata and COST-231.

    Large cities use the 3.2/8.29 squared-log forms (split at 300 MHz, the
    boundary going to the low-frequency branch); every other environment uses
    the small/medium city linear form.
    """
    if hr <= 0:
        raise DomainError(f"receiver height must be positive, got {hr} m")
    lf = log10(f.mhz)
    if EnvironmentClass(env) is EnvironmentClass.URBAN_LARGE:
        if f.mhz > 300.0:
            return 3.2 * log10(11.75 * hr) ** 2 - 4.97
        return 8.29 * log10(1.54 * hr) ** 2 - 1.1
    return (1.1 * lf - 0.7) * hr - (1.56 * lf - 0.8)


def hata(ctx: RadioContext, d: Distance) -> float:
    """Okumura-Hata median loss; suburban and open areas take the suburban correction."""
    lf = log10(ctx.f.mhz)
    lhb = log10(ctx.hb)
    urban = (
        69.55
        + 26.16 * lf
        - 13.82 * lhb
        - hata_mobile_correction(ctx.f, ctx.hr, ctx.env)
        + (44.9 - 6.55 * lhb) * log10(d.km)
    )
    if ctx.env.is_urban:
        return urban
    return urban - 2.0 * log10(ctx.f.mhz / 28.0) ** 2 - 5.4


def cost231_clutter_db(env: EnvironmentClass) -> float:
    return 3.0 if EnvironmentClass(env).is_urban else 0.0


def cost231(ctx: RadioContext, d: Distance) -> float:
    lhb = log10(ctx.hb)
    return (
        46.3
        + 33.9 * log10(ctx.f.mhz)
        - 13.82 * lhb
        - hata_mobile_correction(ctx.f, ctx.hr, ctx.env)
        + (44.9 - 6.55 * lhb) * log10(d.km)
        + cost231_clutter_db(ctx.env)
    )


def ecc33_receiver_gain(f: Frequency, hr: float, env: EnvironmentClass) -> float:
    """Receiver height gain G_r; the large-city form ignores frequency."""
    if EnvironmentClass(env) is EnvironmentClass.URBAN_LARGE:
        return 0.759 * hr - 1.862
    return (42.57 + 13.7 * log10(f.ghz)) * (log10(hr) - 0.585)


def ecc33(ctx: RadioContext, d: Distance) -> float:
    """ECC-33: A_fs + A_bm - G_b - G_r with f in GHz and d in km."""
    lf = log10(ctx.f.ghz)
    ld = log10(d.km)
    free_space = 92.4 + 20.0 * ld + 20.0 * lf
    basic_median = 20.41 + 9.83 * ld + 7.894 * lf + 9.56 * lf**2
    tx_gain = log10(ctx.hb / 200.0) * (13.958 + 5.8 * ld**2)
    return free_space + basic_median - tx_gain - ecc33_receiver_gain(ctx.f, ctx.hr, ctx.env)


def sui_intercept(f: Frequency, d0: Distance) -> float:
    """Free-space loss at the reference distance, 20 log(4 pi d0 / lambda)."""
    return 20.0 * log10(4.0 * math.pi * d0.m / f.wavelength_m)


def sui_gamma(terrain: TerrainCategory, hb: float) -> float:
    return terrain.a - terrain.b * hb + terrain.c / hb


def sui(ctx: RadioContext, d: Distance) -> float:
    """SUI loss A + 10 gamma log(d/d0) + s.

    Distances inside the reference distance are rejected. Base station
    heights outside (10, 80) m and frequencies of 2 GHz or more only warn.
    """
    if d.m < ctx.d0.m:
        raise DomainError(
            f"SUI: distance {d.m} m below reference distance {ctx.d0.m} m", distance_m=d.m
        )
    lo, hi = SUI_HB_RANGE_M
    if not lo < ctx.hb < hi:
        warnings.warn(
            f"SUI: base station height {ctx.hb} m outside ({lo:g}, {hi:g}) m",
            ModelRangeWarning,
            stacklevel=2,
        )
    if ctx.f.mhz >= SUI_MAX_FREQ_MHZ:
        warnings.warn(
            f"SUI: {ctx.f.mhz:g} MHz is outside the f < 2 GHz validity range",
            ModelRangeWarning,
            stacklevel=2,
        )
    gamma = sui_gamma(ctx.terrain, ctx.hb)
    return sui_intercept(ctx.f, ctx.d0) + 10.0 * gamma * log10(d.ratio(ctx.d0)) + ctx.shadowing_db


def ericsson_frequency_term(f: Frequency) -> float:
    """g(f) = 44.49 log f - 4.78 (log f)^2, f in MHz."""
    lf = log10(f.mhz)
    return 44.49 * lf - 4.78 * lf**2


def ericsson(ctx: RadioContext, d: Distance, params: EricssonParams | None = None) -> float:
    """Ericsson 9999 model with d in km; ``params`` default from the environment."""
    p = params or EricssonParams.for_environment(ctx.env)
    ld = log10(d.km)
    lhb = log10(ctx.hb)
    return (
        p.a0
        + p.a1 * ld
        + p.a2 * lhb
        + p.a3 * lhb * ld
        - 3.2 * log10(11.75 * ctx.hr) ** 2
        + ericsson_frequency_term(ctx.f)
    )


class Predictor(Protocol):
    """Anything that predicts loss like a model, e.g. a calibrated model."""

    label: str

    def predict(self, ctx: RadioContext, d: Distance) -> float: ...


ModelLike = Union[ModelId, str, Predictor]


def model_id(name: str | ModelId) -> ModelId:
    try:
        return ModelId(name)
    except ValueError:
        known = ", ".join(m.value for m in ModelId)
        raise UsageError(f"unknown model {name!r} (known: {known})") from None


def path_loss(
    model: ModelLike,
    ctx: RadioContext,
    d: Distance,
    params: EricssonParams | None = None,
) -> float:
    """Evaluate ``model`` at one distance."""
    if hasattr(model, "predict"):
        return model.predict(ctx, d)
    mid = model_id(model)
    if mid is ModelId.FSPL:
        return fspl(ctx.f, d)
    if mid is ModelId.HATA:
        return hata(ctx, d)
    if mid is ModelId.COST231:
        return cost231(ctx, d)
    if mid is ModelId.ECC33:
        return ecc33(ctx, d)
    if mid is ModelId.SUI:
        return sui(ctx, d)
    return ericsson(ctx, d, params)


def model_label(model: ModelLike) -> str:
    if hasattr(model, "predict"):
        return model.label
    return model_id(model).value


@dataclass(frozen=True)
class PathLossCurve:
    model: str
    points: tuple[tuple[Distance, float], ...]

    def __post_init__(self):
        for (d1, _), (d2, _) in zip(self.points, self.points[1:]):
            if not d2.m > d1.m:
                raise ValueError("curve distances must be strictly increasing")
        for d, loss in self.points:
            if not math.isfinite(loss):
                raise DomainError(f"non-finite loss at {d.m} m", distance_m=d.m)

    @property
    def distances_m(self) -> list[float]:
        return [d.m for d, _ in self.points]

    @property
    def losses_db(self) -> list[float]:
        return [loss for _, loss in self.points]


def sweep_distances(d_min: Distance, d_max: Distance, step: Distance) -> list[Distance]:
    """d_min, d_min + step, ... up to and including d_max (within 1e-9 steps)."""
    if d_min.m > d_max.m:
        raise UsageError(f"d_min {d_min.m} m exceeds d_max {d_max.m} m")
    count = math.floor((d_max.m - d_min.m) / step.m + 1e-9) + 1
    return [Distance(d_min.m + k * step.m) for k in range(count)]


def sweep(
    model: ModelLike,
    ctx: RadioContext,
    d_min: Distance,
    d_max: Distance,
    step: Distance,
    params: EricssonParams | None = None,
) -> PathLossCurve:
    points = []
    for d in sweep_distances(d_min, d_max, step):
        try:
            loss = path_loss(model, ctx, d, params)
        except DomainError as exc:
            raise DomainError(f"{exc} (at d={d.m:g} m)", distance_m=d.m) from exc
        points.append((d, loss))
    return PathLossCurve(model_label(model), tuple(points))
