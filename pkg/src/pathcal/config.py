"""Per-site configuration files.

A site config is a flat TOML document (no tables, no arrays)::

    site_id = "Adum"
    frequency_mhz = 800
    hb_m = 24
    hr_m = 1.5
    environment = "urban_large"   # urban_large | urban_medium | suburban | open
    terrain = "A"                 # optional, A | B | C
    shadowing_db = 10.6           # optional, 8.2 - 10.6
    d0_m = 50

    # link budget overrides, all optional
    pt_dbm = 46
    gt_dbi = 18.15
    gr_dbi = 0
    l_con_db = 4.7
    l_bo_db = 3
    l_co_db = 3

    # Ericsson constants, optional; all four or none
    ericsson_a0 = 36.2
    ericsson_a1 = 30.2
    ericsson_a2 = 12.0
    ericsson_a3 = 0.1

Absent keys fall back to the defaults of :class:`SiteConfig`.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .errors import DomainError, ParseError
from .linkbudget import LinkBudget
from .models import EricssonParams
from .units import Distance, EnvironmentClass, Frequency, RadioContext, TerrainCategory

BUDGET_KEYS = ("pt_dbm", "gt_dbi", "gr_dbi", "l_con_db", "l_bo_db", "l_co_db")
ERICSSON_KEYS = ("ericsson_a0", "ericsson_a1", "ericsson_a2", "ericsson_a3")


@dataclass(frozen=True)
class SiteConfig:
    site_id: str = ""
    frequency_mhz: float = 800.0
    hb_m: float = 30.0
    hr_m: float = 1.5
    environment: EnvironmentClass = EnvironmentClass.URBAN_LARGE
    terrain: TerrainCategory | None = None
    shadowing_db: float | None = None
    d0_m: float = 50.0
    budget: LinkBudget = field(default_factory=LinkBudget)
    ericsson: EricssonParams | None = None

    def context(self) -> RadioContext:
        return RadioContext(
            f=Frequency(self.frequency_mhz),
            hb=self.hb_m,
            hr=self.hr_m,
            env=self.environment,
            terrain=self.terrain,
            shadowing_db=self.shadowing_db,
            d0=Distance(self.d0_m),
        )


def _number(key: str, value) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"config key {key!r} must be a number, got {value!r}")
    return float(value)


def parse_config(text: str, source: str = "<config>") -> SiteConfig:
    try:
        raw = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"{source}: {exc}") from None

    scalar_keys = {f.name for f in fields(SiteConfig)} - {"budget", "ericsson"}
    known = scalar_keys | set(BUDGET_KEYS) | set(ERICSSON_KEYS)
    for key, value in raw.items():
        if isinstance(value, (dict, list)):
            raise ParseError(f"{source}: key {key!r} must be a scalar (flat keys only)")
        if key not in known:
            raise ParseError(f"{source}: unknown key {key!r}")

    kwargs: dict = {}
    try:
        if "site_id" in raw:
            kwargs["site_id"] = str(raw["site_id"])
        for key in ("frequency_mhz", "hb_m", "hr_m", "shadowing_db", "d0_m"):
            if key in raw:
                kwargs[key] = _number(key, raw[key])
        if "environment" in raw:
            kwargs["environment"] = EnvironmentClass(raw["environment"])
        if "terrain" in raw:
            kwargs["terrain"] = TerrainCategory[str(raw["terrain"]).upper()]
        budget = {k: _number(k, raw[k]) for k in BUDGET_KEYS if k in raw}
        kwargs["budget"] = LinkBudget(**budget)
        given = [k for k in ERICSSON_KEYS if k in raw]
        if given and len(given) != len(ERICSSON_KEYS):
            raise ParseError(f"{source}: give all of {', '.join(ERICSSON_KEYS)} or none")
        if given:
            kwargs["ericsson"] = EricssonParams(*(_number(k, raw[k]) for k in ERICSSON_KEYS))
    except (KeyError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"{source}: {exc}") from None

    cfg = SiteConfig(**kwargs)
    try:
        cfg.context()
    except DomainError as exc:
        raise ParseError(f"{source}: {exc}") from None
    return cfg


def load_config(path: str | Path) -> SiteConfig:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ParseError(f"cannot read config {path}: {exc.strerror}") from None
    return parse_config(text, str(path))


def render_config(cfg: SiteConfig) -> str:
    """Write ``cfg`` back out in the flat TOML format."""
    lines = [
        f'site_id = "{cfg.site_id}"',
        f"frequency_mhz = {cfg.frequency_mhz!r}",
        f"hb_m = {cfg.hb_m!r}",
        f"hr_m = {cfg.hr_m!r}",
        f'environment = "{cfg.environment.value}"',
    ]
    if cfg.terrain is not None:
        lines.append(f'terrain = "{cfg.terrain.name}"')
    if cfg.shadowing_db is not None:
        lines.append(f"shadowing_db = {cfg.shadowing_db!r}")
    lines.append(f"d0_m = {cfg.d0_m!r}")
    lines += [f"{k} = {getattr(cfg.budget, k)!r}" for k in BUDGET_KEYS]
    if cfg.ericsson is not None:
        lines += [f"{k} = {v!r}" for k, v in zip(ERICSSON_KEYS, vars(cfg.ericsson).values())]
    return "\n".join(lines) + "\n"


def with_overrides(cfg: SiteConfig, **overrides) -> SiteConfig:
    """Copy of ``cfg`` with the non-``None`` overrides applied."""
    return replace(cfg, **{k: v for k, v in overrides.items() if v is not None})
