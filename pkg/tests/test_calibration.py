import math
import random
import statistics

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from pathcal.calibration import (
    CalibratedModel,
    CalibrationMethod,
    EvaluationReport,
    MeasurementSet,
    calibrate_bias_offset,
    calibrate_rmse_offset,
    evaluate,
    log_distance_slope,
    path_loss_exponent,
    rmse,
    select_best,
    validate,
)
from pathcal.errors import DegenerateDataError, DomainError, ParseError, UsageError
from pathcal.models import ModelId, fspl, path_loss
from pathcal.units import Distance, EnvironmentClass, Frequency, RadioContext

CTX = RadioContext(Frequency(800), hb=25, env=EnvironmentClass.SUBURBAN)
DISTANCES = [50.0 * k for k in range(1, 11)]


def model_set(model=ModelId.FSPL, residuals=None, ctx=CTX, distances=DISTANCES):
    residuals = residuals or [0.0] * len(distances)
    losses = [path_loss(model, ctx, Distance(d)) + e for d, e in zip(distances, residuals)]
    return MeasurementSet.from_arrays("synthetic", ctx, distances, losses)


def report(model, value):
    return EvaluationReport(model, value, 0.0, ())


def lstsq_exponent(distances, losses):
    """Generic least-squares oracle: fit PL - PL0 = n * x without intercept."""
    x = 10 * np.log10(np.asarray(distances) / distances[0])
    y = np.asarray(losses) - losses[0]
    coef, *_ = np.linalg.lstsq(x[:, None], y, rcond=None)
    return float(coef[0])


class TestMeasurementSet:
    def test_needs_two_samples(self):
        with pytest.raises(DegenerateDataError):
            MeasurementSet.from_arrays("s", CTX, [50.0], [70.0])

    def test_increasing_distances(self):
        with pytest.raises(UsageError):
            MeasurementSet.from_arrays("s", CTX, [100.0, 50.0], [70.0, 71.0])

    def test_first_sample_outside_d0(self):
        with pytest.raises(DomainError):
            MeasurementSet.from_arrays("s", CTX, [40.0, 100.0], [70.0, 71.0])


class TestPathLossExponent:
    def test_free_space(self):
        assert path_loss_exponent(model_set(ModelId.FSPL)) == pytest.approx(2.0, abs=1e-9)

    @given(n=st.floats(2.0, 6.0), pl0=st.floats(40.0, 120.0))
    def test_recovers_slope(self, n, pl0):
        losses = [pl0 + 10 * n * math.log10(d / 50.0) for d in DISTANCES]
        got = log_distance_slope(DISTANCES, losses)
        assert got == pytest.approx(n, abs=1e-9)
        assert got == pytest.approx(lstsq_exponent(DISTANCES, losses), abs=1e-9)

    def test_matches_lstsq_on_noisy_data(self):
        rng = random.Random(7)
        losses = [70 + 35 * math.log10(d / 50) + rng.gauss(0, 4) for d in DISTANCES]
        assert log_distance_slope(DISTANCES, losses) == pytest.approx(
            lstsq_exponent(DISTANCES, losses), abs=1e-9
        )

    def test_orthogonal_noise_leaves_slope(self):
        x = np.array([10 * math.log10(d / 50) for d in DISTANCES])
        rng = np.random.default_rng(3)
        noise = rng.normal(0, 3, len(x))
        noise[0] = 0.0  # the anchor sample carries no noise
        noise -= x * (noise @ x) / (x @ x)
        losses = [70 + 3 * xi + e for xi, e in zip(x, noise)]
        assert log_distance_slope(DISTANCES, losses) == pytest.approx(3.0, abs=1e-9)

    def test_all_at_reference(self):
        with pytest.raises(DegenerateDataError):
            log_distance_slope([50.0, 50.0], [70.0, 71.0])

    @pytest.mark.filterwarnings("ignore::pathcal.errors.ModelRangeWarning")
    @pytest.mark.parametrize("hb", [16.0, 25.0, 35.0])
    def test_sui_generator_recovers_gamma(self, hb):
        ctx = RadioContext(Frequency(800), hb=hb, env=EnvironmentClass.SUBURBAN)
        ms = model_set(ModelId.SUI, ctx=ctx)
        gamma = ctx.terrain.a - ctx.terrain.b * hb + ctx.terrain.c / hb
        assert path_loss_exponent(ms) == pytest.approx(gamma, abs=1e-6)


class TestRmse:
    def test_identical(self):
        assert rmse([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 0.0

    @given(c=st.floats(-50, 50))
    def test_constant_offset(self, c):
        xs = [100.0, 110.0, 120.0]
        assert rmse(xs, [x + c for x in xs]) == pytest.approx(abs(c), abs=1e-9)

    def test_example(self):
        assert rmse([100, 110], [103, 105]) == pytest.approx(math.sqrt(17), abs=1e-12)
        assert rmse([100, 110], [103, 105]) == pytest.approx(4.1231, abs=1e-4)

    @pytest.mark.parametrize("a, b", [([], []), ([1.0], [1.0, 2.0])])
    def test_usage(self, a, b):
        with pytest.raises(UsageError):
            rmse(a, b)

    @given(
        e=st.lists(st.floats(-100, 100), min_size=1, max_size=30),
        alpha=st.floats(-10, 10),
        seed=st.integers(0, 1000),
    )
    def test_scale_and_permutation(self, e, alpha, seed):
        zeros = [0.0] * len(e)
        base = rmse(e, zeros)
        assert rmse([alpha * x for x in e], zeros) == pytest.approx(abs(alpha) * base, rel=1e-9, abs=1e-9)
        shuffled = e[:]
        random.Random(seed).shuffle(shuffled)
        assert rmse(shuffled, zeros) == pytest.approx(base, rel=1e-12, abs=1e-12)


class TestEvaluate:
    def test_exact_model(self):
        r = evaluate(model_set(ModelId.HATA), ModelId.HATA)
        assert r.rmse < 1e-9 and abs(r.bias) < 1e-9
        assert r.model == "hata"

    def test_residual_sign(self):
        r = evaluate(model_set(ModelId.FSPL, [2.0] * 10), ModelId.FSPL)
        assert r.bias == pytest.approx(2.0)
        assert all(x == pytest.approx(2.0) for x in r.residuals)

    @given(res=st.lists(st.floats(-30, 30), min_size=10, max_size=10))
    def test_rmse_bounds_bias(self, res):
        r = evaluate(model_set(ModelId.FSPL, res), ModelId.FSPL)
        assert r.rmse + 1e-9 >= abs(r.bias)
        assert len(r.residuals) == 10

    def test_collects_range_warnings(self):
        ctx = RadioContext(Frequency(2600), hb=25, env=EnvironmentClass.SUBURBAN)
        r = evaluate(model_set(ModelId.FSPL, ctx=ctx), ModelId.SUI)
        assert len(r.warnings) == 1 and "2 GHz" in r.warnings[0]


class TestSelectBest:
    def test_lowest_rmse_wins(self):
        reports = [report("hata", 30.5), report("sui", 33.0), report("ericsson", 18.0)]
        assert select_best(reports) == "ericsson"

    def test_single(self):
        assert select_best([report("ecc33", 4.0)]) == "ecc33"

    def test_tie_goes_to_declaration_order(self):
        assert select_best([report("ericsson", 1.0), report("cost231", 1.0), report("sui", 1.0)]) == "cost231"
        assert select_best([report("calibrated:sui", 1.0), report("sui", 1.0)]) == "sui"

    def test_empty(self):
        with pytest.raises(UsageError):
            select_best([])

    @given(cents=st.lists(st.integers(0, 10_000), min_size=1, max_size=6))
    def test_argmin_invariant_under_monotone_map(self, cents):
        names = [m.value for m in ModelId][: len(cents)]
        raw = [report(n, c / 100) for n, c in zip(names, cents)]
        mapped = [report(n, math.sqrt(c / 100) + 3) for n, c in zip(names, cents)]
        assert select_best(raw) == select_best(mapped)


class TestCalibration:
    def test_rmse_offset_constant_under_prediction(self):
        ms = model_set(ModelId.FSPL, [4.5] * 10)
        cal = calibrate_rmse_offset(ms, ModelId.FSPL)
        assert cal.offset == pytest.approx(4.5)
        assert cal.method is CalibrationMethod.RMSE_OFFSET
        assert validate(ms, cal).rmse < 1e-9

    def test_rmse_offset_sign_follows_bias(self):
        ms = model_set(ModelId.FSPL, [-3.0, -1.0] * 5)
        cal = calibrate_rmse_offset(ms, ModelId.FSPL)
        assert cal.offset == pytest.approx(-math.sqrt(5))

    def test_bias_offset(self):
        res = [1.0, 3.0, -2.0, 6.0, 0.5, 2.5, 3.0, -1.0, 4.0, 2.0]
        ms = model_set(ModelId.FSPL, res)
        cal = calibrate_bias_offset(ms, ModelId.FSPL)
        assert cal.offset == pytest.approx(statistics.fmean(res), abs=1e-12)
        after = validate(ms, cal)
        assert after.rmse == pytest.approx(statistics.pstdev(res), abs=1e-9)
        assert abs(after.bias) < 1e-9

    def test_rmse_offset_improves_when_bias_dominates(self):
        # rmse_new^2 = 2 rmse^2 - 2 |bias| rmse, so improvement iff |bias| >= rmse / 2
        rng = random.Random(11)
        for _ in range(200):
            shift = rng.uniform(-10, 10)
            res = [shift + rng.gauss(0, rng.uniform(0.1, 8)) for _ in DISTANCES]
            ms = model_set(ModelId.FSPL, res)
            base = evaluate(ms, ModelId.FSPL)
            cal = calibrate_rmse_offset(ms, ModelId.FSPL, report=base)
            oracle = rmse([e - cal.offset for e in res], [0.0] * len(res))
            after = validate(ms, cal, base)
            assert after.rmse == pytest.approx(oracle, abs=1e-9)
            if abs(base.bias) >= base.rmse / 2:
                assert after.rmse <= base.rmse + 1e-9

    def test_bias_offset_is_optimal_constant(self):
        rng = random.Random(5)
        for _ in range(20):
            res = [rng.gauss(rng.uniform(-5, 5), 3) for _ in DISTANCES]
            ms = model_set(ModelId.FSPL, res)
            best = validate(ms, calibrate_bias_offset(ms, ModelId.FSPL)).rmse
            scan = min(rmse([e - c for e in res], [0.0] * 10) for c in np.linspace(-15, 15, 3001))
            assert best <= scan + 1e-12

    def test_zero_offset_matches_evaluate(self):
        ms = model_set(ModelId.FSPL, [1.0, -2.0] * 5)
        cal = CalibratedModel(ModelId.ECC33, 0.0, CalibrationMethod.BIAS_OFFSET, "synthetic")
        got, plain = validate(ms, cal), evaluate(ms, ModelId.ECC33)
        assert (got.rmse, got.bias, got.residuals) == (plain.rmse, plain.bias, plain.residuals)
        assert got.passed is False

    def test_validate_flags_improvement(self):
        ms = model_set(ModelId.FSPL, [5.0] * 10)
        cal = calibrate_bias_offset(ms, ModelId.FSPL)
        v = validate(ms, cal)
        assert v.passed is True
        assert v.baseline_rmse == pytest.approx(5.0)

    def test_prediction_is_base_plus_offset(self):
        cal = CalibratedModel("ericsson", 17.98, "rmse", "Adum")
        d = Distance(300)
        assert cal.predict(CTX, d) == path_loss(ModelId.ERICSSON, CTX, d) + 17.98
        assert cal.label == "calibrated:ericsson"

    def test_dict_round_trip(self):
        from pathcal.models import ERICSSON_URBAN

        cal = CalibratedModel(ModelId.ERICSSON, 17.98, CalibrationMethod.RMSE_OFFSET, "Adum", ERICSSON_URBAN)
        assert CalibratedModel.from_dict(cal.to_dict()) == cal

    @pytest.mark.parametrize(
        "data",
        [{"version": 2}, {"version": 1, "base": "fspl"}, {"version": 1, "base": "nosuch", "offset_db": 1,
                                                          "method": "rmse", "source_site": "x"}],
    )
    def test_bad_dict(self, data):
        with pytest.raises(ParseError):
            CalibratedModel.from_dict(data)

    def test_non_finite_offset(self):
        with pytest.raises(DomainError):
            CalibratedModel(ModelId.FSPL, float("nan"), "bias", "x")


def test_fspl_helper_consistency():
    # guards the synthetic generator used throughout this module
    ms = model_set(ModelId.FSPL)
    assert ms.losses_db[0] == fspl(CTX.f, Distance(50))
