"""Example measurement sites (Ghana LTE drive-test campaign).

Base station heights are the published ones; environment classes follow the
site descriptions (Adum's high-rise centre counts as a large city).
"""

from __future__ import annotations

from .config import SiteConfig
from .units import EnvironmentClass

URBAN_LARGE = EnvironmentClass.URBAN_LARGE
URBAN_MEDIUM = EnvironmentClass.URBAN_MEDIUM
SUBURBAN = EnvironmentClass.SUBURBAN

# site_id -> (base station height [m], environment)
CAMPAIGN_SITES = {
    "Techiman": (35.0, URBAN_MEDIUM),
    "Adum": (24.0, URBAN_LARGE),
    "Agogo": (25.0, SUBURBAN),
    "Afrancho": (32.0, SUBURBAN),
    "New Dorma": (32.0, SUBURBAN),
    "Berekum": (32.0, SUBURBAN),
    "Sunyani": (25.0, URBAN_MEDIUM),
}

CAMPAIGN_FREQUENCIES_MHZ = (800.0, 2600.0)


def campaign_config(site_id: str, frequency_mhz: float = 800.0) -> SiteConfig:
    hb, env = CAMPAIGN_SITES[site_id]
    return SiteConfig(site_id=site_id, frequency_mhz=frequency_mhz, hb_m=hb, environment=env)
