import csv
import math
import os
from unittest import mock

import numpy as np
import pytest

from tttorder import (
    ExperimentSpec,
    SinghMaddala,
    UnitExponential,
    Weibull,
    emit_transform_plot,
    ingest,
    run_experiment,
)
from tttorder.harness import WORKER_ENV_VAR, _effective_jobs

INF = math.inf


def small_spec(**over):
    base = dict(
        test="ttt",
        dist_x=Weibull(1.0),
        dist_y=Weibull(2.0),
        r_values=(1.0, INF),
        sizes=(20, 40),
        reps=5,
        n_boot=30,
        alpha=0.1,
        seed=4,
    )
    base.update(over)
    return ExperimentSpec(**base)


def test_spec_validation():
    with pytest.raises(ValueError):
        small_spec(test="ks")
    with pytest.raises(ValueError):
        small_spec(test="nbue")  # one-sample scenario must drop dist_y
    with pytest.raises(ValueError):
        small_spec(test="ttt", dist_y=None)
    with pytest.raises(ValueError):
        small_spec(reps=0)
    with pytest.raises(ValueError):
        small_spec(sizes=(1, 20))


def test_scenario_label():
    assert small_spec().scenario_label() == "weibull:a=1,b=1|weibull:a=2,b=1"
    nbue = ExperimentSpec(test="nbue", dist_x=UnitExponential(), reps=1, sizes=(10,))
    assert nbue.scenario_label() == "exp"


def test_single_repetition_rate_is_zero_or_one():
    table = run_experiment(small_spec(reps=1, sizes=(30,)))
    for row in table.rows:
        assert row.rejection_rate in (0.0, 1.0)
        assert row.mc_std_err == 0.0
        assert row.reps == 1


def test_rate_and_std_err_formula():
    table = run_experiment(small_spec(reps=8, sizes=(25,)))
    for row in table.rows:
        k = round(row.rejection_rate * 8)
        assert row.rejection_rate == k / 8
        assert row.mc_std_err == pytest.approx(
            math.sqrt(row.rejection_rate * (1 - row.rejection_rate) / 8)
        )


def test_rows_cover_all_cells():
    spec = small_spec()
    table = run_experiment(spec)
    assert len(table.rows) == len(spec.sizes) * len(spec.r_values)
    assert {(row.n, row.r) for row in table.rows} == {
        (n, r) for n in spec.sizes for r in spec.r_values
    }
    assert 0.0 <= table.rate(r=1.0, n=20) <= 1.0
    with pytest.raises(KeyError):
        table.rate(r=3.0, n=20)


def test_deterministic_and_independent_of_other_sizes():
    a = run_experiment(small_spec())
    b = run_experiment(small_spec())
    assert a == b
    # dropping one size leaves the other rows untouched
    only_forty = run_experiment(small_spec(sizes=(40,)))
    for row in only_forty.rows:
        assert row.rejection_rate == a.rate(r=row.r, n=40)


def test_worker_count_does_not_change_output():
    spec = small_spec(reps=3)
    serial = run_experiment(spec, n_jobs=1)
    parallel = run_experiment(spec, n_jobs=4)
    assert serial.to_csv_string() == parallel.to_csv_string()


def test_nbue_experiment_runs():
    spec = ExperimentSpec(
        test="nbue", dist_x=Weibull(0.8), r_values=(INF,), sizes=(30,), reps=4, n_boot=40
    )
    table = run_experiment(spec)
    assert len(table.rows) == 1
    assert table.rows[0].m is None


def test_csv_format(tmp_path):
    spec = small_spec(reps=2, sizes=(15,))
    table = run_experiment(spec)
    text = table.to_csv_string()
    lines = text.strip().splitlines()
    assert lines[0] == "scenario,test,r,n,m,rejection_rate,mc_std_err,reps"
    assert len(lines) == 3
    rows = list(csv.reader(lines[1:]))
    assert rows[0][0] == spec.scenario_label()
    assert rows[0][2] == "1"
    assert rows[1][2] == "inf"
    out = tmp_path / "table.csv"
    table.to_csv(out)
    assert out.read_text() == text


def test_effective_jobs_env_cap():
    with mock.patch.dict(os.environ, {WORKER_ENV_VAR: "2"}):
        assert _effective_jobs(8) == 2
        assert _effective_jobs(1) == 1
        assert _effective_jobs(-1) == min(os.cpu_count() or 1, 2)
    with mock.patch.dict(os.environ, {}, clear=False):
        os.environ.pop(WORKER_ENV_VAR, None)
        assert _effective_jobs(None) == 1
        assert _effective_jobs(-1) >= 1


def read_plot(path):
    lines = path.read_text().strip().splitlines()
    assert lines[0] == "p,value,identity"
    rows = [tuple(map(float, line.split(","))) for line in lines[1:]]
    return rows


def test_transform_plot_exponential_is_identity(tmp_path):
    out = tmp_path / "exp.csv"
    emit_transform_plot(UnitExponential(), out, points=64)
    rows = read_plot(out)
    assert len(rows) == 64
    for p, v, ident in rows:
        assert ident == p
        assert v == pytest.approx(p, abs=1e-9)


def test_transform_plot_sample_includes_knots(tmp_path):
    out = tmp_path / "sample.csv"
    emit_transform_plot(ingest([1.0, 2.0, 3.0]), out, points=10)
    rows = read_plot(out)
    by_p = {p: v for p, v, _ in rows}
    for knot, value in [(0.0, 0.0), (1 / 3, 0.5), (2 / 3, 5 / 6), (1.0, 1.0)]:
        key = min(by_p, key=lambda q: abs(q - knot))
        assert key == pytest.approx(knot, abs=1e-9)
        assert by_p[key] == pytest.approx(value, abs=1e-9)


def test_transform_plot_heavy_tail_crosses_identity(tmp_path):
    out = tmp_path / "sm.csv"
    emit_transform_plot(SinghMaddala(1.2, 1.5, 1.0), out, points=256)
    rows = read_plot(out)
    gaps = [v - p for p, v, _ in rows[1:-1]]
    signs = [g > 0 for g in gaps]
    assert signs[0] is True and signs[-1] is False
    # exactly one sign change along the curve
    assert sum(a != b for a, b in zip(signs[:-1], signs[1:])) == 1
