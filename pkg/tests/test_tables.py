"""CSV table builders and the aggregated analysis report."""

import json

import numpy as np
import pytest

from tlscontrol import T1Record
from tlscontrol.analysis import cumulative_hmean, fit_sigma_vs_mu, harmonic_mean
from tlscontrol.tables import (
    REPORT_SCHEMA_VERSION,
    build_report,
    fig1_series_rows,
    fig3b_cumulative_rows,
    fig4c_sigma_mu_rows,
    fig5b_collapse_rows,
    temperature_fit_from_records,
    write_analysis,
    write_csv,
)


def _rec(kind, t1, qubit_id="q0", wall=0.0, converged=True, temperature_mk=10.0, **extra):
    return T1Record(
        wall_time_s=wall,
        qubit_id=qubit_id,
        kind=kind,
        temperature_mk=temperature_mk,
        t1_us=t1 if converged else None,
        t1_stderr_us=1.0 if converged else None,
        converged=converged,
        seed=0,
        **extra,
    )


def test_write_csv_format(tmp_path):
    path = tmp_path / "t.csv"
    write_csv(path, ("a", "b", "c"), [(1, 0.1, None), ("x", 2.5, True)], {"bb", "aa", None})
    lines = path.read_text().splitlines()
    assert lines[0] == "# config_hash: aa,bb"
    assert lines[1] == "a,b,c"
    # floats keep full precision via repr, None becomes an empty cell
    assert lines[2] == "1,0.1,"
    assert lines[3] == "x,2.5,True"
    assert path.read_text().endswith("\n")


def test_series_rows_pass_through():
    records = [
        _rec("ac", 1000.0, wall=0.0),
        _rec("no_control", None, wall=600.0, converged=False),
    ]
    header, rows = fig1_series_rows(records)
    assert header == ("wall_time_s", "qubit_id", "kind", "t1_us", "converged")
    assert rows[0] == (0.0, "q0", "ac", 1000.0, True)
    assert rows[1] == (600.0, "q0", "no_control", None, False)


def test_cumulative_rows_match_running_hmean():
    t1s = [1000.0, 1500.0, 800.0]
    records = [_rec("ac", t, wall=600.0 * i) for i, t in enumerate(t1s)]
    records.append(_rec("ac", None, wall=1800.0, converged=False))
    _, rows = fig3b_cumulative_rows(records)
    assert [r[2] for r in rows] == [1, 2, 3]  # non-converged record excluded
    expected = cumulative_hmean(t1s)
    assert [r[4] for r in rows] == pytest.approx(list(expected), rel=1e-12)


def test_collapse_rows_need_two_cells_and_sort_by_product():
    one_cell = [_rec("ac", 1000.0, vpp_v=16.0, f_ac_hz=0.1) for _ in range(3)]
    _, rows = fig5b_collapse_rows(one_cell)
    assert rows == []

    records = [
        _rec("ac", 1000.0, vpp_v=16.0, f_ac_hz=1.0),
        _rec("ac", 1200.0, vpp_v=16.0, f_ac_hz=1.0),
        _rec("ac", 1400.0, vpp_v=8.0, f_ac_hz=0.1),
        _rec("fast_random", 900.0, voltage_v=1.0),  # ignored: not a periodic drive
    ]
    _, rows = fig5b_collapse_rows(records)
    assert [r[:2] for r in rows] == [(8.0, 0.1), (16.0, 1.0)]
    vpp, f_ac, product, rate, n, mean, hmean = rows[1]
    assert product == pytest.approx(16.0)
    assert rate == pytest.approx(32.0)  # one ramp covers vpp twice per period
    assert n == 2
    assert mean == pytest.approx(1100.0)
    assert hmean == pytest.approx(harmonic_mean([1000.0, 1200.0]), rel=1e-12)


def test_sigma_mu_rows_skip_qubits_without_slow_sweeps():
    records = [
        _rec("ac", 1000.0, qubit_id="qA"),
        _rec("ac", 1200.0, qubit_id="qA"),
        _rec("fast_random", 700.0, qubit_id="qA"),
        _rec("fast_random", 1500.0, qubit_id="qA"),
        _rec("fast_random", 900.0, qubit_id="qB"),
        _rec("fast_random", 1100.0, qubit_id="qB"),
    ]
    doc, reports = build_report(
        {"qA": [r for r in records if r.qubit_id == "qA"],
         "qB": [r for r in records if r.qubit_id == "qB"]},
        {"qA": 4.7, "qB": 4.7},
        {"h"},
    )
    _, rows = fig4c_sigma_mu_rows(reports)
    assert [r[0] for r in rows] == ["qA"]
    assert rows[0][1] == pytest.approx(1100.0)
    assert rows[0][4] == pytest.approx(np.std([700.0, 1500.0], ddof=1), rel=1e-12)


def test_build_report_single_qubit_has_no_cross_fits():
    records = [_rec("ac", 1000.0), _rec("ac", 1100.0), _rec("fast_random", 500.0), _rec("fast_random", 800.0)]
    doc, _ = build_report({"q0": records}, {"q0": 4.7}, {"h2", "h1"})
    assert doc["schema_version"] == REPORT_SCHEMA_VERSION
    assert doc["config_hashes"] == ["h1", "h2"]
    assert doc["sigma_mu_slope"] is None
    assert doc["q_vs_f"] is None
    q0 = doc["qubits"]["q0"]
    assert q0["f_q_ghz"] == 4.7
    assert q0["kinds"]["ac"]["count"] == 2
    assert q0["kinds"]["ac"]["mean_us"] == pytest.approx(1050.0)
    assert q0["n_eff"] is not None


def test_build_report_cross_qubit_slope():
    def qubit(qid, mu, sigma_fr):
        return [
            _rec("ac", mu - 10.0, qubit_id=qid),
            _rec("ac", mu + 10.0, qubit_id=qid),
            _rec("fast_random", mu - sigma_fr, qubit_id=qid),
            _rec("fast_random", mu + sigma_fr, qubit_id=qid),
        ]

    by_qubit = {"qA": qubit("qA", 1000.0, 200.0), "qB": qubit("qB", 2000.0, 500.0)}
    doc, _ = build_report(by_qubit, {"qA": 4.5, "qB": 5.0}, {"h"})
    mus = [1000.0, 2000.0]
    sigmas = [np.std([800.0, 1200.0], ddof=1), np.std([1500.0, 2500.0], ddof=1)]
    assert doc["sigma_mu_slope"] == pytest.approx(fit_sigma_vs_mu(mus, sigmas), rel=1e-12)
    assert doc["q_vs_f"] is not None
    assert doc["q_vs_f"]["series"] == "ac_hmean"


def test_temperature_fit_requires_both_bands():
    cold_only = [_rec("ac", 1000.0, temperature_mk=T) for T in (10.0, 20.0, 30.0)]
    assert temperature_fit_from_records(cold_only, 4.5) is None
    no_f_q = [_rec("ac", 1000.0, temperature_mk=T) for T in (10.0, 150.0)]
    assert temperature_fit_from_records(no_f_q, None) is None


def test_write_analysis_emits_report_and_tables(tmp_path, capsys):
    records = [
        _rec("ac", 1000.0, wall=0.0),
        _rec("ac", 1100.0, wall=600.0),
        _rec("no_control", 400.0, wall=1200.0),
        _rec("no_control", 600.0, wall=1800.0),
        _rec("fast_random", 500.0, wall=2400.0),
        _rec("fast_random", 900.0, wall=3000.0),
    ]
    doc = write_analysis(tmp_path, records, {"q0": 4.7}, {"h"}, quiet=False)
    out = capsys.readouterr().out
    assert "report.json" in out
    report = json.loads((tmp_path / "report.json").read_text())
    assert report == json.loads(json.dumps(doc))
    assert (tmp_path / "fig1_series.csv").exists()
    assert (tmp_path / "fig3b_cumulative.csv").exists()
    assert (tmp_path / "fig4c_sigma_mu.csv").exists()
    assert (tmp_path / "fig4d_neff.csv").exists()
    # no sweep cells or temperature bands, so those tables are skipped
    assert not (tmp_path / "fig5b_collapse.csv").exists()
    assert not (tmp_path / "fig5d_fit.csv").exists()
    assert report["temperature_fit"] is None

    quiet_dir = tmp_path / "quiet"
    write_analysis(quiet_dir, records, {"q0": 4.7}, {"h"}, quiet=True)
    assert capsys.readouterr().out == ""
