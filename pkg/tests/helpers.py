"""Synthetic drive-test data shared by the test modules."""

from __future__ import annotations

import math
from pathlib import Path

from pathcal.config import SiteConfig, render_config
from pathcal.linkbudget import eirp
from pathcal.models import path_loss

CENTERS_M = [50.0 * k for k in range(1, 11)]


def rsrp_rows(site_id, losses, sectors=(1, 2, 3), eirp_dbm=53.45):
    """(site_id, sector, distance, rsrp) rows for losses {distance_m: dB}."""
    return [
        (site_id, s, d, eirp_dbm - pl)
        for d, pl in losses.items()
        for s in sectors
    ]


def csv_text(rows) -> str:
    lines = ["site_id,sector,distance_m,rsrp_dbm"]
    lines += [f"{site},{sector},{d!r},{rsrp!r}" for site, sector, d, rsrp in rows]
    return "\n".join(lines) + "\n"


def model_losses(model, cfg: SiteConfig, distances=CENTERS_M, params=None):
    from pathcal.units import Distance

    ctx = cfg.context()
    return {d: path_loss(model, ctx, Distance(d), params or cfg.ericsson) for d in distances}


def log_linear_losses(n, pl0=100.0, d0=50.0, distances=CENTERS_M):
    return {d: pl0 + 10.0 * n * math.log10(d / d0) for d in distances}


def write_site(tmp_path: Path, cfg: SiteConfig, losses, name=None):
    """Write config + measurement CSV for ``cfg``; return (csv_path, cfg_path)."""
    stem = name or cfg.site_id.replace(" ", "_") or "site"
    csv_path = tmp_path / f"{stem}.csv"
    cfg_path = tmp_path / f"{stem}.toml"
    csv_path.write_text(csv_text(rsrp_rows(cfg.site_id, losses, eirp_dbm=eirp(cfg.budget))))
    cfg_path.write_text(render_config(cfg))
    return csv_path, cfg_path
