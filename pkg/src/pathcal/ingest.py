"""Drive-test CSV ingestion: parse, average sectors, bin by distance.

Expected CSV header (extra columns are ignored)::

    site_id,sector,distance_m,rsrp_dbm[,lat,lon]

``lat``/``lon`` are carried through verbatim and never interpreted.
"""

from __future__ import annotations

import csv
import io
import math
import warnings
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable

from .calibration import MeasurementSet
from .errors import DataQualityWarning, DegenerateDataError, EmptyLogError, ParseError
from .linkbudget import LinkBudget, check_rsrp, eirp, measured_path_loss
from .units import Distance, EnvironmentClass, Frequency, RadioContext

REQUIRED_COLUMNS = ("site_id", "sector", "distance_m", "rsrp_dbm")
OPTIONAL_COLUMNS = ("lat", "lon")
SECTORS = (1, 2, 3)
EXPECTED_FREQUENCIES_MHZ = (800.0, 2600.0)


@dataclass(frozen=True)
class RsrpSample:
    distance: Distance
    rsrp_dbm: float
    site_id: str
    sector: int
    lat: str | None = None
    lon: str | None = None

    def __post_init__(self):
        if self.sector not in SECTORS:
            raise ParseError(f"sector out of range: {self.sector} (expected 1-3)")
        if not math.isfinite(self.rsrp_dbm):
            raise ParseError(f"non-finite RSRP {self.rsrp_dbm}")


@dataclass(frozen=True)
class DriveTestLog:
    """Rows of one site's drive test plus optional site metadata."""

    rows: tuple[RsrpSample, ...]
    site_id: str
    frequency: Frequency | None = None
    hb: float | None = None
    env: EnvironmentClass | None = None

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        if not self.rows:
            raise EmptyLogError("no samples")
        others = {r.site_id for r in self.rows} - {self.site_id}
        if others:
            raise ParseError(f"log for site {self.site_id!r} contains rows for {sorted(others)}")
        if self.frequency is not None and self.frequency.mhz not in EXPECTED_FREQUENCIES_MHZ:
            warnings.warn(
                f"site {self.site_id!r}: unexpected frequency {self.frequency.mhz:g} MHz",
                DataQualityWarning,
                stacklevel=3,
            )


@dataclass(frozen=True)
class DistanceBin:
    center: Distance
    mean_rsrp_dbm: float
    count: int


def _cell(row: dict, column: str, line: int, convert):
    raw = row[column]
    try:
        return convert(raw.strip())
    except (TypeError, ValueError, AttributeError):
        raise ParseError(f"row {line}: cannot parse {column} {raw!r}") from None


def parse_csv(data: bytes | str) -> DriveTestLog:
    """Parse a drive-test CSV into a typed log.

    Row numbers in error messages are 1-based file line numbers, so the first
    data row is row 2.
    """
    text = data.decode("utf-8-sig") if isinstance(data, bytes) else data
    if not text.strip():
        raise EmptyLogError("empty file")
    reader = csv.DictReader(io.StringIO(text))
    header = [h.strip() for h in reader.fieldnames or []]
    reader.fieldnames = header
    for column in REQUIRED_COLUMNS:
        if column not in header:
            raise ParseError(f"missing required column {column!r}")

    rows = []
    for row in reader:
        line = reader.line_num
        distance_m = _cell(row, "distance_m", line, float)
        if not (math.isfinite(distance_m) and distance_m > 0):
            raise ParseError(f"row {line}: distance_m must be positive, got {distance_m}")
        rsrp = _cell(row, "rsrp_dbm", line, float)
        sector = _cell(row, "sector", line, int)
        if sector not in SECTORS:
            raise ParseError(f"row {line}: sector out of range: {sector} (expected 1-3)")
        try:
            sample = RsrpSample(
                distance=Distance(distance_m),
                rsrp_dbm=rsrp,
                site_id=(row["site_id"] or "").strip(),
                sector=sector,
                lat=row.get("lat") or None,
                lon=row.get("lon") or None,
            )
        except ParseError as exc:
            raise ParseError(f"row {line}: {exc}") from None
        check_rsrp(rsrp, f"row {line}")
        rows.append(sample)

    if not rows:
        raise EmptyLogError("no samples")
    sites = {r.site_id for r in rows}
    if len(sites) > 1:
        raise ParseError(f"mixed site_id values {sorted(sites)}; one site per file")
    return DriveTestLog(tuple(rows), rows[0].site_id)


def serialize_csv(log: DriveTestLog) -> str:
    """Inverse of :func:`parse_csv`; floats are written at full repr precision."""
    columns = list(REQUIRED_COLUMNS)
    if any(r.lat is not None or r.lon is not None for r in log.rows):
        columns += OPTIONAL_COLUMNS
    out = io.StringIO()
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(columns)
    for r in log.rows:
        line = [r.site_id, r.sector, repr(r.distance.m), repr(r.rsrp_dbm)]
        if len(columns) > len(REQUIRED_COLUMNS):
            line += ["" if r.lat is None else r.lat, "" if r.lon is None else r.lon]
        writer.writerow(line)
    return out.getvalue()


def _mean(values: list[float]) -> float:
    return math.fsum(values) / len(values)


def average_sectors(log: DriveTestLog | Iterable[RsrpSample]) -> list[tuple[Distance, float]]:
    """Mean RSRP per distance across the sectors that reported there.

    Repeated readings of one sector at one distance are averaged first so
    each sector weighs equally. Means are taken on dBm values directly.
    """
    rows = log.rows if isinstance(log, DriveTestLog) else tuple(log)
    per_sector: dict[float, dict[int, list[float]]] = defaultdict(lambda: defaultdict(list))
    for r in rows:
        per_sector[r.distance.m][r.sector].append(r.rsrp_dbm)
    return [
        (Distance(d), _mean([_mean(v) for v in sectors.values()]))
        for d, sectors in sorted(per_sector.items())
    ]


def bin_index(distance_m: float, width_m: float) -> int:
    """Nearest center k*width with k >= 1; [k*w - w/2, k*w + w/2) maps to k."""
    return max(1, math.floor((distance_m + width_m / 2.0) / width_m))


def bin_by_distance(
    samples: Iterable[tuple[Distance, float]],
    width: Distance = Distance(50.0),
    max_distance: Distance = Distance(500.0),
) -> tuple[list[DistanceBin], int]:
    """Group (distance, rsrp) pairs into bins centred on multiples of ``width``.

    Returns the non-empty bins in distance order and the number of samples
    dropped for landing beyond the last center, ``max_distance``.
    """
    last = round(max_distance.m / width.m)
    grouped: dict[int, list[float]] = defaultdict(list)
    dropped = 0
    for d, rsrp in samples:
        k = bin_index(d.m, width.m)
        if k > last:
            dropped += 1
            continue
        grouped[k].append(rsrp)
    if dropped:
        warnings.warn(
            f"dropped {dropped} sample(s) beyond {max_distance.m:g} m",
            DataQualityWarning,
            stacklevel=2,
        )
    bins = [
        DistanceBin(Distance(k * width.m), _mean(values), len(values))
        for k, values in sorted(grouped.items())
    ]
    return bins, dropped


def to_measurement_set(
    log: DriveTestLog,
    budget: LinkBudget,
    ctx: RadioContext,
    width: Distance = Distance(50.0),
    max_distance: Distance = Distance(500.0),
) -> MeasurementSet:
    """Sector-average, bin, and convert each bin to path loss = EIRP - RSRP."""
    bins, _ = bin_by_distance(average_sectors(log), width, max_distance)
    if len(bins) < 2:
        raise DegenerateDataError(
            f"site {log.site_id!r}: {len(bins)} distance bin(s) after binning, need at least 2"
        )
    e = eirp(budget)
    samples = tuple((b.center, measured_path_loss(e, b.mean_rsrp_dbm)) for b in bins)
    return MeasurementSet(log.site_id, ctx, samples)
