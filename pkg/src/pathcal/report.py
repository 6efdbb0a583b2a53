"""JSON/CSV rendering of evaluation and calibration results."""

from __future__ import annotations

import io
import csv
import json
from dataclasses import dataclass, field

from .calibration import CalibratedModel, EvaluationReport
from .config import SiteConfig
from .linkbudget import eirp
from .models import PathLossCurve

REPORT_VERSION = 1


@dataclass
class SiteResult:
    config: SiteConfig
    samples: int
    reports: list[EvaluationReport] = field(default_factory=list)
    best_model: str | None = None
    calibrated: list[CalibratedModel] = field(default_factory=list)
    validation: list[EvaluationReport] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        cfg = self.config
        ctx = cfg.context()
        return {
            "site_id": cfg.site_id,
            "frequency_mhz": cfg.frequency_mhz,
            "hb_m": cfg.hb_m,
            "hr_m": cfg.hr_m,
            "environment": ctx.env.value,
            "terrain": ctx.terrain.name,
            "shadowing_db": ctx.shadowing_db,
            "eirp_dbm": eirp(cfg.budget),
            "samples": self.samples,
            "reports": [r.to_dict() for r in self.reports],
            "best_model": self.best_model,
            "calibrated_models": [c.to_dict() for c in self.calibrated],
            "validation": [v.to_dict() for v in self.validation],
            "warnings": list(self.warnings),
        }


@dataclass
class ReportDocument:
    command: str
    sites: list[SiteResult] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "command": self.command,
            "sites": [s.to_dict() for s in self.sites],
            "warnings": list(self.warnings),
        }

    def to_json(self) -> str:
        return dumps(self.to_dict())

    def to_csv(self) -> str:
        """One row per (site, model): the RMSE table."""
        out = io.StringIO()
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["site_id", "model", "rmse_db", "bias_db", "best"])
        for site in self.sites:
            for r in site.reports + site.validation:
                best = "1" if r.model == site.best_model else "0"
                writer.writerow([site.config.site_id, r.model, f"{r.rmse:.4f}", f"{r.bias:.4f}", best])
        return out.getvalue()


def dumps(data) -> str:
    return json.dumps(data, sort_keys=True, indent=2, allow_nan=False) + "\n"


def curve_to_csv(curve: PathLossCurve) -> str:
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["distance_m", "path_loss_db"])
    for d, loss in curve.points:
        writer.writerow([f"{d.m:.4f}", f"{loss:.4f}"])
    return out.getvalue()


def curve_to_json(curve: PathLossCurve) -> str:
    return dumps(
        {
            "version": REPORT_VERSION,
            "model": curve.model,
            "points": [{"distance_m": d.m, "path_loss_db": loss} for d, loss in curve.points],
        }
    )
