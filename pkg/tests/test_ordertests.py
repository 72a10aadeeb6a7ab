import json
import math

import numpy as np
import pytest
from sklearn.base import clone

from tttorder import (
    ExcessWealthOrderTest,
    NBUETest,
    SchemeMismatchError,
    TTTOrderTest,
    Weibull,
    ZeroMeanError,
    curve_difference,
    excess_wealth_empirical,
    ingest,
    ingest_paired,
    phi,
    resample_transform,
    scaled_ttt,
    ttt_empirical,
)

# aliased so pytest does not collect the library entry points as test items
from tttorder import test_ew_order as run_ew_order
from tttorder import test_nbue as run_nbue
from tttorder import test_ttt_order as run_ttt_order
from tttorder.resampling import draw_weights, replicate_rng

INF = math.inf


@pytest.fixture(scope="module")
def xy():
    rng = np.random.default_rng(123)
    return Weibull(2).sample(80, rng), Weibull(1).sample(60, rng)


def test_identical_samples_do_not_reject():
    s = ingest([0.7, 1.1, 2.3, 4.0, 4.0, 9.2])
    for fn in (run_ttt_order, run_ew_order):
        for r in (1, INF):
            rep = fn(s, s, r=r, n_boot=50, seed=1)
            assert rep.statistic == 0.0
            assert rep.reject is False


def test_reject_matches_pvalue_threshold(xy):
    x, y = xy
    for fn in (run_ttt_order, run_ew_order):
        rep = fn(x, y, r=1, alpha=0.1, n_boot=100, seed=4)
        assert 0.0 <= rep.p_value <= 1.0
        assert rep.reject == (rep.p_value < rep.alpha)


def test_statistic_matches_curve_route(xy):
    x, y = xy
    for kind in ("step", "linear"):
        rep = run_ttt_order(x, y, r=1, n_boot=1, seed=0, kind=kind)
        delta = curve_difference(ttt_empirical(y, kind), ttt_empirical(x, kind))
        assert rep.statistic == pytest.approx(phi(delta, 1), rel=1e-12, abs=1e-15)
        rep = run_ew_order(x, y, r=INF, n_boot=1, seed=0, kind=kind)
        delta = curve_difference(
            excess_wealth_empirical(y, kind), excess_wealth_empirical(x, kind)
        )
        assert rep.statistic == pytest.approx(phi(delta, INF), rel=1e-12, abs=1e-15)


def test_replicate_statistic_matches_object_route(xy):
    # with a single replicate the report's summary pins the replicate value,
    # which must agree with the curve-object computation from the same weights
    x, y = xy
    seed = 77
    rep = run_ttt_order(x, y, r=1, n_boot=1, seed=seed)
    wx = draw_weights(x.n, replicate_rng(seed, 0, stream=0))
    wy = draw_weights(y.n, replicate_rng(seed, 0, stream=1))
    delta = curve_difference(ttt_empirical(y, "step"), ttt_empirical(x, "step"))
    delta_star = curve_difference(
        resample_transform(y, wy, "ttt", "step"), resample_transform(x, wx, "ttt", "step")
    )
    pivot = curve_difference(delta_star, delta)
    assert rep.replicate_min == pytest.approx(phi(pivot, 1), rel=1e-12, abs=1e-15)


def test_nbue_replicate_matches_object_route():
    x = Weibull(1.5).sample(40, np.random.default_rng(8))
    seed = 31
    rep = run_nbue(x, r=INF, n_boot=1, seed=seed)
    w = draw_weights(x.n, replicate_rng(seed, 0, stream=0))
    pivot = curve_difference(
        scaled_ttt(x, "step"), resample_transform(x, w, "scaled_ttt", "step")
    )
    assert rep.replicate_min == pytest.approx(phi(pivot, INF), rel=1e-12, abs=1e-15)


def test_excess_wealth_duality_of_differences(xy):
    x, y = xy
    d_ttt = curve_difference(ttt_empirical(y, "step"), ttt_empirical(x, "step"))
    d_ew = curve_difference(
        excess_wealth_empirical(y, "step"), excess_wealth_empirical(x, "step")
    )
    assert np.allclose(d_ew.values, (y.mean - x.mean) - d_ttt.values, atol=1e-12)


def test_sup_statistic_dominates_l1(xy):
    x, y = xy
    s1 = run_ttt_order(x, y, r=1, n_boot=1, seed=0).statistic
    s_inf = run_ttt_order(x, y, r=INF, n_boot=1, seed=0).statistic
    assert s1 <= s_inf


def test_sign_flip_consistency():
    # y dominates x everywhere here, so the (x, y) difference is nonpositive
    x = ingest([1.0, 2.0, 3.0])
    y = ingest([2.0, 4.0, 6.0])
    d_xy = curve_difference(ttt_empirical(x, "step"), ttt_empirical(y, "step"))
    assert np.max(d_xy.values) <= 0.0
    # statistic of (x, y) measures how far the second transform exceeds the first
    rep = run_ttt_order(x, y, r=INF, n_boot=1, seed=0)
    assert rep.statistic == pytest.approx(phi(d_xy.scale(-1.0), INF))
    assert run_ttt_order(y, x, r=INF, n_boot=1, seed=0).statistic == 0.0


def test_scaled_statistic_factors(xy):
    x, y = xy
    rep = run_ttt_order(x, y, r=1, n_boot=1, seed=0)
    assert rep.scaled_statistic == pytest.approx(
        math.sqrt(x.n * y.n / (x.n + y.n)) * rep.statistic
    )
    nb = run_nbue(x, r=1, n_boot=1, seed=0)
    assert nb.scaled_statistic == pytest.approx(math.sqrt(x.n) * nb.statistic)


def test_determinism_bit_exact(xy):
    x, y = xy
    a = run_ttt_order(x, y, r=INF, n_boot=40, seed=9)
    b = run_ttt_order(x, y, r=INF, n_boot=40, seed=9)
    assert a == b
    c = run_ttt_order(x, y, r=INF, n_boot=40, seed=10)
    assert c.p_value != a.p_value or c.replicate_median != a.replicate_median


def test_nbue_scale_invariance_exact():
    x = Weibull(0.9).sample(60, np.random.default_rng(2))
    base = run_nbue(x, r=1, n_boot=60, seed=5)
    doubled = run_nbue(x.scaled(2.0), r=1, n_boot=60, seed=5)
    assert doubled.statistic == base.statistic
    assert doubled.p_value == base.p_value
    tripled = run_nbue(x.scaled(3.0), r=1, n_boot=60, seed=5)
    assert tripled.statistic == pytest.approx(base.statistic, rel=1e-12)
    assert tripled.p_value == base.p_value


def test_nbue_rejects_zero_mean():
    with pytest.raises(ZeroMeanError):
        run_nbue(ingest([0.0, 0.0, 0.0]), n_boot=5)


def test_nbue_on_exponential_data_behaves():
    x = Weibull(1.0).sample(400, np.random.default_rng(3))
    rep = run_nbue(x, r=INF, n_boot=100, seed=6)
    assert 0.0 <= rep.p_value <= 1.0
    assert rep.m is None


def test_paired_scheme():
    rng = np.random.default_rng(11)
    base = rng.exponential(size=50)
    ps = ingest_paired(base, base * rng.uniform(0.8, 1.2, size=50))
    rep = run_ttt_order(ps, scheme="paired", r=1, n_boot=50, seed=2)
    assert rep.scheme == "paired"
    assert rep.n == rep.m == 50
    # equivalent call with two raw arrays
    rep2 = run_ttt_order(ps.x, ps.y, scheme="paired", r=1, n_boot=50, seed=2)
    assert rep2 == rep


def test_scheme_mismatch_errors():
    x = ingest([1.0, 2.0, 3.0])
    with pytest.raises(SchemeMismatchError):
        run_ttt_order(x, None, scheme="independent", n_boot=5)
    with pytest.raises(SchemeMismatchError):
        run_ttt_order(x, scheme="paired", n_boot=5)
    with pytest.raises(ValueError):
        run_ttt_order(x, x, scheme="stratified", n_boot=5)


def test_alpha_validation(xy):
    x, y = xy
    for bad in (0.0, 0.5, 0.9, -0.1):
        with pytest.raises(ValueError):
            run_ttt_order(x, y, alpha=bad, n_boot=5)


def test_report_json_schema(xy):
    x, y = xy
    rep = run_ttt_order(x, y, r=INF, alpha=0.1, n_boot=20, seed=8)
    obj = json.loads(rep.to_json())
    expected = {
        "test", "r", "alpha", "n", "m", "statistic", "scaled_statistic",
        "p_value", "reject", "n_boot", "seed", "scheme", "kind",
        "replicate_min", "replicate_median", "replicate_max",
    }
    assert set(obj) == expected
    assert obj["r"] == "inf"
    assert obj["test"] == "ttt"
    assert obj["kind"] == "step"


def test_estimator_api(xy):
    x, y = xy
    est = TTTOrderTest(r=1, alpha=0.1, n_boot=30, seed=3)
    assert est.get_params()["r"] == 1
    fitted = clone(est).fit(x, y)
    assert fitted.p_value_ == est.fit(x, y).p_value_
    assert fitted.reject_ == (fitted.p_value_ < 0.1)
    assert fitted.statistic_ >= 0.0
    assert fitted.report_.n == x.n

    ew = ExcessWealthOrderTest(r=INF, n_boot=10).fit(x, y)
    assert ew.report_.test == "ew"

    nb = NBUETest(r=1, n_boot=10).fit(x)
    assert nb.report_.test == "nbue"
    assert nb.m_ is None


def test_power_in_clear_violation_scenario():
    # exponential vs Weibull(2,1): the TTT difference is positive over most
    # of the unit interval, so moderate samples already reject often
    rng_master = np.random.default_rng(42)
    rejections = {1: 0, INF: 0}
    reps = 40
    for i in range(reps):
        x = Weibull(1.0).sample(200, np.random.default_rng(1000 + i))
        y = Weibull(2.0).sample(200, np.random.default_rng(2000 + i))
        for r in rejections:
            if run_ttt_order(x, y, r=r, n_boot=200, seed=i).reject:
                rejections[r] += 1
    assert rejections[1] / reps >= 0.7
    assert rejections[INF] / reps >= 0.7
