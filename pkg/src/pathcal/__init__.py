"""Empirical LTE path-loss models, drive-test ingestion and offset calibration."""

from .calibration import (
    CalibratedModel,
    CalibrationMethod,
    EvaluationReport,
    MeasurementSet,
    calibrate,
    calibrate_bias_offset,
    calibrate_rmse_offset,
    evaluate,
    log_distance_slope,
    path_loss_exponent,
    rmse,
    select_best,
    validate,
)
from .config import SiteConfig, load_config, parse_config
from .errors import (
    DataQualityWarning,
    DegenerateDataError,
    DomainError,
    EmptyLogError,
    ModelRangeWarning,
    ParseError,
    PathCalError,
    UsageError,
)
from .ingest import (
    DistanceBin,
    DriveTestLog,
    RsrpSample,
    average_sectors,
    bin_by_distance,
    parse_csv,
    serialize_csv,
    to_measurement_set,
)
from .linkbudget import LinkBudget, eirp, measured_path_loss, render_eirp
from .models import (
    EricssonParams,
    ModelId,
    PathLossCurve,
    cost231,
    ecc33,
    ericsson,
    fspl,
    hata,
    hata_mobile_correction,
    path_loss,
    sui,
    sweep,
)
from .units import Distance, EnvironmentClass, Frequency, RadioContext, TerrainCategory

__version__ = "0.1.0"
