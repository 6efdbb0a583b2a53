"""Scoring models against measurements and building offset-calibrated models."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Sequence

from .errors import DegenerateDataError, DomainError, ParseError, UsageError
from .models import (
    MODEL_ORDER,
    EricssonParams,
    ModelId,
    ModelLike,
    model_id,
    model_label,
    path_loss,
)
from .units import Distance, EnvironmentClass, RadioContext

CAL_FILE_VERSION = 1


@dataclass(frozen=True)
class MeasurementSet:
    """Distance-ordered measured path loss for one site."""

    site_id: str
    ctx: RadioContext
    samples: tuple[tuple[Distance, float], ...]

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(self.samples))
        if len(self.samples) < 2:
            raise DegenerateDataError(
                f"site {self.site_id!r}: need at least 2 samples, got {len(self.samples)}"
            )
        for (d1, _), (d2, _) in zip(self.samples, self.samples[1:]):
            if not d2.m > d1.m:
                raise UsageError(f"site {self.site_id!r}: distances must be strictly increasing")
        first = self.samples[0][0]
        if first.m < self.ctx.d0.m:
            raise DomainError(
                f"site {self.site_id!r}: first sample at {first.m} m is inside d0={self.ctx.d0.m} m",
                distance_m=first.m,
            )

    @classmethod
    def from_arrays(
        cls, site_id: str, ctx: RadioContext, distances_m: Iterable[float], losses_db: Iterable[float]
    ) -> MeasurementSet:
        return cls(site_id, ctx, tuple((Distance(d), float(pl)) for d, pl in zip(distances_m, losses_db)))

    @property
    def env(self) -> EnvironmentClass:
        return self.ctx.env

    @property
    def distances_m(self) -> list[float]:
        return [d.m for d, _ in self.samples]

    @property
    def losses_db(self) -> list[float]:
        return [pl for _, pl in self.samples]


@dataclass(frozen=True)
class EvaluationReport:
    """Fit of one model to one measurement set.

    ``residuals`` are measured minus predicted, so a positive ``bias`` means
    the model under-predicts. ``baseline_rmse``/``passed`` are only set by
    :func:`validate`.
    """

    model: str
    rmse: float
    bias: float
    residuals: tuple[float, ...]
    warnings: tuple[str, ...] = ()
    baseline_rmse: float | None = None
    passed: bool | None = None

    def to_dict(self) -> dict:
        out = {
            "model": self.model,
            "rmse_db": self.rmse,
            "bias_db": self.bias,
            "residuals_db": list(self.residuals),
            "warnings": list(self.warnings),
        }
        if self.passed is not None:
            out["baseline_rmse_db"] = self.baseline_rmse
            out["passed"] = self.passed
        return out


class CalibrationMethod(str, Enum):
    RMSE_OFFSET = "rmse"
    BIAS_OFFSET = "bias"


@dataclass(frozen=True)
class CalibratedModel:
    """A base model shifted by a constant dB offset."""

    base: ModelId
    offset: float
    method: CalibrationMethod
    source_site: str
    params: EricssonParams | None = None

    def __post_init__(self):
        object.__setattr__(self, "base", model_id(self.base))
        object.__setattr__(self, "method", CalibrationMethod(self.method))
        if not math.isfinite(self.offset):
            raise DomainError(f"calibration offset must be finite, got {self.offset}")

    @property
    def label(self) -> str:
        return f"calibrated:{self.base.value}"

    def predict(self, ctx: RadioContext, d: Distance) -> float:
        return path_loss(self.base, ctx, d, self.params) + self.offset

    def to_dict(self) -> dict:
        return {
            "version": CAL_FILE_VERSION,
            "base": self.base.value,
            "offset_db": self.offset,
            "method": self.method.value,
            "source_site": self.source_site,
            "ericsson_params": None if self.params is None else vars(self.params).copy(),
        }

    @classmethod
    def from_dict(cls, data: dict) -> CalibratedModel:
        if data.get("version") != CAL_FILE_VERSION:
            raise ParseError(f"unsupported calibration file version {data.get('version')!r}")
        try:
            params = data.get("ericsson_params")
            return cls(
                base=data["base"],
                offset=float(data["offset_db"]),
                method=data["method"],
                source_site=str(data["source_site"]),
                params=None if params is None else EricssonParams(**params),
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed calibration file: {exc}") from exc


def log_distance_slope(distances_m: Sequence[float], losses_db: Sequence[float]) -> float:
    """Zero-intercept least-squares exponent anchored at the first sample.

    n = sum((PL_i - PL_0) * x_i) / sum(x_i^2) with x_i = 10 log10(d_i / d_0),
    where d_0 and PL_0 are the first sample's distance and loss.
    """
    if len(distances_m) != len(losses_db):
        raise UsageError("distances and losses differ in length")
    if not distances_m:
        raise DegenerateDataError("no samples")
    d_ref, pl_ref = distances_m[0], losses_db[0]
    xs = [10.0 * math.log10(d / d_ref) for d in distances_m]
    denom = math.fsum(x * x for x in xs)
    if denom == 0.0:
        raise DegenerateDataError("all samples at the reference distance; exponent undefined")
    return math.fsum((pl - pl_ref) * x for pl, x in zip(losses_db, xs)) / denom


def path_loss_exponent(ms: MeasurementSet) -> float:
    return log_distance_slope(ms.distances_m, ms.losses_db)


def rmse(measured: Sequence[float], predicted: Sequence[float]) -> float:
    if len(measured) != len(predicted):
        raise UsageError(f"length mismatch: {len(measured)} measured vs {len(predicted)} predicted")
    if not measured:
        raise UsageError("rmse of an empty series")
    return math.sqrt(math.fsum((p - q) ** 2 for p, q in zip(measured, predicted)) / len(measured))


def _mean(values: Sequence[float]) -> float:
    return math.fsum(values) / len(values)


def evaluate(
    ms: MeasurementSet, model: ModelLike, params: EricssonParams | None = None
) -> EvaluationReport:
    """Predict at every sample distance and score against the measurements.

    Range warnings raised by the model are recorded on the report rather than
    propagated.
    """
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        predicted = [path_loss(model, ms.ctx, d, params) for d, _ in ms.samples]
    measured = ms.losses_db
    residuals = tuple(m - p for m, p in zip(measured, predicted))
    notes = tuple(dict.fromkeys(str(w.message) for w in caught))
    return EvaluationReport(
        model=model_label(model),
        rmse=rmse(measured, predicted),
        bias=_mean(residuals),
        residuals=residuals,
        warnings=notes,
    )


def _order_key(label: str) -> int:
    try:
        return MODEL_ORDER.index(ModelId(label))
    except ValueError:
        return len(MODEL_ORDER)


def select_best(reports: Sequence[EvaluationReport]) -> str:
    """Lowest-RMSE model; ties go to the earlier model in declaration order."""
    if not reports:
        raise UsageError("select_best needs at least one report")
    return min(reports, key=lambda r: (r.rmse, _order_key(r.model))).model


def calibrate_rmse_offset(
    ms: MeasurementSet,
    model: ModelId | str,
    params: EricssonParams | None = None,
    report: EvaluationReport | None = None,
) -> CalibratedModel:
    """Shift the base model by its RMSE, signed by the mean residual.

    A model that under-predicts on average (bias >= 0) gets +RMSE.
    """
    report = report or evaluate(ms, model, params)
    offset = report.rmse if report.bias >= 0 else -report.rmse
    return CalibratedModel(model_id(model), offset, CalibrationMethod.RMSE_OFFSET, ms.site_id, params)


def calibrate_bias_offset(
    ms: MeasurementSet,
    model: ModelId | str,
    params: EricssonParams | None = None,
    report: EvaluationReport | None = None,
) -> CalibratedModel:
    """Shift the base model by its mean residual, the RMSE-optimal constant."""
    report = report or evaluate(ms, model, params)
    return CalibratedModel(model_id(model), report.bias, CalibrationMethod.BIAS_OFFSET, ms.site_id, params)


def calibrate(
    ms: MeasurementSet,
    model: ModelId | str,
    method: CalibrationMethod | str,
    params: EricssonParams | None = None,
    report: EvaluationReport | None = None,
) -> CalibratedModel:
    if CalibrationMethod(method) is CalibrationMethod.RMSE_OFFSET:
        return calibrate_rmse_offset(ms, model, params, report)
    return calibrate_bias_offset(ms, model, params, report)


def validate(
    ms: MeasurementSet, cal: CalibratedModel, baseline: EvaluationReport | None = None
) -> EvaluationReport:
    """Score ``cal`` on ``ms``; passes when it beats the uncalibrated base model."""
    report = evaluate(ms, cal)
    baseline = baseline or evaluate(ms, cal.base, cal.params)
    return EvaluationReport(
        model=report.model,
        rmse=report.rmse,
        bias=report.bias,
        residuals=report.residuals,
        warnings=report.warnings,
        baseline_rmse=baseline.rmse,
        passed=report.rmse < baseline.rmse,
    )
