"""Command-line interface: ``pathcal predict|evaluate|calibrate|exponent``.

Exit codes: 0 success, 2 usage, 3 model domain, 4 parse, 5 degenerate data.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings
from dataclasses import replace
from pathlib import Path

from .calibration import (
    CalibratedModel,
    CalibrationMethod,
    MeasurementSet,
    calibrate,
    evaluate,
    path_loss_exponent,
    select_best,
    validate,
)
from .config import SiteConfig, load_config, with_overrides
from .errors import DegenerateDataError, DomainError, ParseError, UsageError
from .ingest import DriveTestLog, parse_csv, to_measurement_set
from .models import ModelId, model_id, sweep
from .report import ReportDocument, SiteResult, curve_to_csv, curve_to_json, dumps
from .units import Distance, EnvironmentClass, TerrainCategory

CONFIG_ENV_VAR = "PATHCAL_CONFIG"

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DOMAIN = 3
EXIT_PARSE = 4
EXIT_DEGENERATE = 5

CALIBRATED = "calibrated"
MODEL_CHOICES = [m.value for m in ModelId] + [CALIBRATED]


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _configs(paths: list[str] | None) -> list[SiteConfig]:
    if paths:
        return [load_config(p) for p in paths]
    fallback = os.environ.get(CONFIG_ENV_VAR)
    if fallback:
        return [load_config(fallback)]
    return [SiteConfig()]


def _config_for(site_id: str, configs: list[SiteConfig]) -> SiteConfig:
    if len(configs) == 1:
        cfg = configs[0]
        return cfg if cfg.site_id else replace(cfg, site_id=site_id)
    for cfg in configs:
        if cfg.site_id == site_id:
            return cfg
    raise UsageError(f"no site config for site_id {site_id!r}")


def _load_cal(path: str) -> CalibratedModel:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise ParseError(f"cannot read calibration file {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from None
    return CalibratedModel.from_dict(data)


def _measurements(path: str, configs: list[SiteConfig]) -> tuple[MeasurementSet, SiteConfig]:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read measurements {path}: {exc.strerror}") from None
    drive_log = parse_csv(data)
    cfg = _config_for(drive_log.site_id, configs)
    ctx = cfg.context()
    drive_log = DriveTestLog(drive_log.rows, drive_log.site_id, ctx.f, ctx.hb, ctx.env)
    return to_measurement_set(drive_log, cfg.budget, ctx), cfg


def _model_list(spec: str) -> list[ModelId]:
    if spec.strip().lower() == "all":
        return list(ModelId)
    return [model_id(name.strip()) for name in spec.split(",") if name.strip()]


def cmd_predict(args: argparse.Namespace) -> int:
    cfg = _configs([args.config] if args.config else None)[0]
    cfg = with_overrides(
        cfg,
        frequency_mhz=args.freq_mhz,
        hb_m=args.hb,
        hr_m=args.hr,
        environment=EnvironmentClass(args.env) if args.env else None,
        terrain=TerrainCategory[args.terrain] if args.terrain else None,
        shadowing_db=args.shadowing,
        d0_m=args.d0,
    )
    ctx = cfg.context()
    if args.model == CALIBRATED:
        if not args.cal_file:
            raise UsageError("--model calibrated requires --cal-file")
        model = _load_cal(args.cal_file)
    else:
        model = model_id(args.model)
    curve = sweep(model, ctx, Distance(args.dmin), Distance(args.dmax), Distance(args.step), cfg.ericsson)
    _emit(curve_to_json(curve) if args.format == "json" else curve_to_csv(curve), args.out)
    return EXIT_OK


def cmd_evaluate(args: argparse.Namespace) -> int:
    configs = _configs(args.config)
    models = _model_list(args.models)
    cal = _load_cal(args.cal_file) if args.cal_file else None
    doc = ReportDocument("evaluate")
    for path in args.measurements:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always")
            ms, cfg = _measurements(path, configs)
        site = SiteResult(cfg, len(ms.samples), warnings=[str(w.message) for w in caught])
        for m in models:
            site.reports.append(evaluate(ms, m, cfg.ericsson))
        if cal is not None:
            site.reports.append(evaluate(ms, cal))
        site.best_model = select_best(site.reports)
        for r in site.reports:
            site.warnings.extend(f"{r.model}: {w}" for w in r.warnings)
        doc.sites.append(site)
    _emit(doc.to_csv() if args.format == "csv" else doc.to_json(), args.out)
    return EXIT_OK


def cmd_calibrate(args: argparse.Namespace) -> int:
    configs = _configs([args.config] if args.config else None)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        ms, cfg = _measurements(args.measurements, configs)
    base = model_id(args.model)
    report = evaluate(ms, base, cfg.ericsson)
    cal = calibrate(ms, base, args.method, cfg.ericsson, report)
    check = validate(ms, cal, report)
    site = SiteResult(
        cfg,
        len(ms.samples),
        reports=[report],
        best_model=select_best([report, check]),
        calibrated=[cal],
        validation=[check],
        warnings=[str(w.message) for w in caught] + [f"{report.model}: {w}" for w in report.warnings],
    )
    doc = ReportDocument("calibrate", [site])
    if args.cal_out:
        Path(args.cal_out).write_text(dumps(cal.to_dict()), encoding="utf-8")
    _emit(doc.to_csv() if args.format == "csv" else doc.to_json(), args.out)
    return EXIT_OK


def cmd_exponent(args: argparse.Namespace) -> int:
    configs = _configs([args.config] if args.config else None)
    ms, cfg = _measurements(args.measurements, configs)
    n = path_loss_exponent(ms)
    payload = dumps(
        {
            "version": 1,
            "command": "exponent",
            "site_id": ms.site_id,
            "path_loss_exponent": n,
            "reference_distance_m": ms.samples[0][0].m,
            "samples": len(ms.samples),
        }
    )
    if args.out:
        Path(args.out).write_text(payload, encoding="utf-8")
    sys.stdout.write(payload if args.format == "json" else f"n = {n:.3f}\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pathcal", description="Empirical path-loss prediction and drive-test calibration"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="sweep one model over distance")
    p.add_argument("--model", required=True, choices=MODEL_CHOICES, metavar="MODEL",
                   help="one of: " + ", ".join(MODEL_CHOICES))
    p.add_argument("--config")
    p.add_argument("--cal-file")
    p.add_argument("--freq-mhz", type=float)
    p.add_argument("--hb", type=float, help="base station height [m]")
    p.add_argument("--hr", type=float, help="receiver height [m]")
    p.add_argument("--env", choices=[e.value for e in EnvironmentClass])
    p.add_argument("--terrain", choices=[t.name for t in TerrainCategory])
    p.add_argument("--shadowing", type=float, help="SUI shadowing term [dB]")
    p.add_argument("--d0", type=float, help="reference distance [m]")
    p.add_argument("--dmin", type=float, default=50.0)
    p.add_argument("--dmax", type=float, default=500.0)
    p.add_argument("--step", type=float, default=50.0)
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.set_defaults(func=cmd_predict)

    p = sub.add_parser("evaluate", help="score models against drive-test CSVs")
    p.add_argument("measurements", nargs="+")
    p.add_argument("--config", action="append", help="site config; repeat for several sites")
    p.add_argument("--models", default="all", help='"all" or comma-separated model ids')
    p.add_argument("--cal-file", help="also score this calibrated model")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("calibrate", help="offset-calibrate one model on a site")
    p.add_argument("measurements")
    p.add_argument("--config")
    p.add_argument("--model", required=True, choices=[m.value for m in ModelId])
    p.add_argument("--method", choices=[m.value for m in CalibrationMethod], default="rmse")
    p.add_argument("--cal-out", help="write the calibrated model JSON here")
    p.add_argument("--out")
    p.add_argument("--format", choices=["csv", "json"], default="json")
    p.set_defaults(func=cmd_calibrate)

    p = sub.add_parser("exponent", help="path-loss exponent of a site")
    p.add_argument("measurements")
    p.add_argument("--config")
    p.add_argument("--out", help="write full-precision JSON here")
    p.add_argument("--format", choices=["text", "json"], default="text")
    p.set_defaults(func=cmd_exponent)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        code, err = EXIT_USAGE, exc
    except DomainError as exc:
        code, err = EXIT_DOMAIN, exc
    except ParseError as exc:
        code, err = EXIT_PARSE, exc
    except DegenerateDataError as exc:
        code, err = EXIT_DEGENERATE, exc
    print(f"pathcal {args.command}: error: {err}", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
