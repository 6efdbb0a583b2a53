"""EIRP link budget and the RSRP -> measured path loss conversion."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal

from .errors import DataQualityWarning, DomainError

RSRP_PLAUSIBLE_DBM = (-140.0, -40.0)


@dataclass(frozen=True)
class LinkBudget:
    """Transmit chain for EIRP. Defaults are typical LTE macro-site values
    (40 W transmitter, 18.15 dBi sector antenna, 0 dBi handset)."""

    pt_dbm: float = 46.0
    gt_dbi: float = 18.15
    gr_dbi: float = 0.0
    l_con_db: float = 4.7
    l_bo_db: float = 3.0
    l_co_db: float = 3.0

    def __post_init__(self):
        for name in ("pt_dbm", "gt_dbi", "gr_dbi", "l_con_db", "l_bo_db", "l_co_db"):
            if not math.isfinite(getattr(self, name)):
                raise DomainError(f"{name} must be finite")
        for name in ("l_con_db", "l_bo_db", "l_co_db"):
            if getattr(self, name) < 0:
                raise DomainError(f"{name} must be non-negative, got {getattr(self, name)}")

    @property
    def eirp_dbm(self) -> float:
        return eirp(self)


def eirp(budget: LinkBudget) -> float:
    """Pt + Gt + Gr - L_con - L_bo - L_co, in dBm."""
    return (
        budget.pt_dbm
        + budget.gt_dbi
        + budget.gr_dbi
        - budget.l_con_db
        - budget.l_bo_db
        - budget.l_co_db
    )


def measured_path_loss(eirp_dbm: float, rsrp_dbm: float) -> float:
    return eirp_dbm - rsrp_dbm


def check_rsrp(rsrp_dbm: float, where: str = "") -> None:
    lo, hi = RSRP_PLAUSIBLE_DBM
    if not lo <= rsrp_dbm <= hi:
        suffix = f" ({where})" if where else ""
        warnings.warn(
            f"RSRP {rsrp_dbm} dBm outside plausible range [{lo:g}, {hi:g}] dBm{suffix}",
            DataQualityWarning,
            stacklevel=3,
        )


def render_eirp(budget: LinkBudget) -> str:
    """One-decimal human rendering, e.g. ``EIRP = 53.5 dBm``."""
    return f"EIRP = {round_half_up(eirp(budget), 1)} dBm"


def round_half_up(value: float, places: int) -> str:
    """Round the shortest decimal repr of ``value``, halves away from zero."""
    quantum = Decimal(1).scaleb(-places)
    return str(Decimal(repr(value)).quantize(quantum, rounding=ROUND_HALF_UP))
