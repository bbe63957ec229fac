"""Flat CSV tables and the JSON report emitted by ``analyze``.

Each table mirrors one figure-style view of a campaign: the raw time
series, cumulative harmonic means, quality factor versus frequency,
scatter versus mean, averaging gain, sweep-rate collapse, and the
temperature fit.  Tables that need data the records do not contain
(multiple qubits, sweep cells, temperature bands) are skipped silently.
"""

import json
from pathlib import Path

import numpy as np

from .analysis import (
    cumulative_hmean,
    fit_sigma_vs_mu,
    fit_q_vs_frequency,
    fit_temperature_model,
    report_from_records,
)

REPORT_SCHEMA_VERSION = 1


def _converged(records):
    return [r for r in records if r.converged and r.t1_us]


def write_csv(path, header, rows, cfg_hashes):
    lines = ["# config_hash: " + ",".join(sorted(h for h in cfg_hashes if h))]
    lines.append(",".join(header))
    for row in rows:
        lines.append(",".join("" if v is None else repr(v) if isinstance(v, float) else str(v) for v in row))
    Path(path).write_text("\n".join(lines) + "\n")


def fig1_series_rows(records):
    header = ("wall_time_s", "qubit_id", "kind", "t1_us", "converged")
    rows = [
        (r.wall_time_s, r.qubit_id, r.kind, r.t1_us, r.converged)
        for r in records
    ]
    return header, rows


def fig3b_cumulative_rows(records):
    header = ("qubit_id", "kind", "n", "wall_time_s", "cum_hmean_us")
    rows = []
    qubits = sorted({r.qubit_id for r in records})
    for qid in qubits:
        for kind in ("ac", "no_control", "fast_random"):
            series = [r for r in _converged(records) if r.qubit_id == qid and r.kind == kind]
            if not series:
                continue
            cum = cumulative_hmean([r.t1_us for r in series])
            rows.extend(
                (qid, kind, i + 1, r.wall_time_s, float(c))
                for i, (r, c) in enumerate(zip(series, cum))
            )
    return header, rows


def fig3c_qf_rows(reports):
    from .analysis import quality_factor

    header = ("qubit_id", "f_q_ghz", "series", "q")
    rows = []
    for qid, (report, records) in sorted(reports.items()):
        if report.f_q_ghz is None:
            continue
        fr = [r.t1_us for r in _converged(records) if r.kind == "fast_random"]
        if fr:
            rows.append((qid, report.f_q_ghz, "fr_min", quality_factor(report.f_q_ghz, min(fr))))
            rows.append((qid, report.f_q_ghz, "fr_max", quality_factor(report.f_q_ghz, max(fr))))
        for kind, label in (("no_control", "nc_hmean"), ("ac", "ac_hmean")):
            q = report.q_per_kind.get(kind)
            if q is not None:
                rows.append((qid, report.f_q_ghz, label, q))
    return header, rows


def fig4c_sigma_mu_rows(reports):
    header = ("qubit_id", "mu_ac_us", "sigma_ac_us", "sigma_nc_us", "sigma_fr_us")
    rows = []
    for qid, (report, _) in sorted(reports.items()):
        ac = report.kinds.get("ac")
        nc = report.kinds.get("no_control")
        fr = report.kinds.get("fast_random")
        if ac is None or ac.mean_us is None:
            continue
        rows.append(
            (
                qid,
                ac.mean_us,
                ac.std_us,
                nc.std_us if nc else None,
                fr.std_us if fr else None,
            )
        )
    return header, rows


def fig4d_neff_rows(reports):
    header = ("qubit_id", "n_eff")
    rows = [
        (qid, report.n_eff)
        for qid, (report, _) in sorted(reports.items())
        if report.n_eff is not None
    ]
    return header, rows


def fig5b_collapse_rows(records):
    header = (
        "vpp_v",
        "f_ac_hz",
        "fac_vpp_v_hz",
        "sweep_rate_v_per_s",
        "n",
        "mean_t1_us",
        "hmean_t1_us",
    )
    cells = {}
    for r in _converged(records):
        if r.kind == "ac" and r.vpp_v is not None and r.f_ac_hz is not None:
            cells.setdefault((r.vpp_v, r.f_ac_hz), []).append(r.t1_us)
    if len(cells) < 2:
        return header, []
    from .analysis import harmonic_mean

    rows = []
    for (vpp, f_ac), t1 in sorted(cells.items(), key=lambda kv: kv[0][1] * kv[0][0]):
        arr = np.asarray(t1)
        rows.append(
            (vpp, f_ac, vpp * f_ac, 2.0 * vpp * f_ac, arr.size, float(arr.mean()), harmonic_mean(arr))
        )
    return header, rows


def temperature_fit_from_records(records, f_q_ghz):
    """Per-temperature means and the gap fit, or None if bands are missing."""
    groups = {}
    for r in _converged(records):
        groups.setdefault(r.temperature_mk, []).append(r.t1_us)
    if len(groups) < 2 or f_q_ghz is None:
        return None
    temps = np.array(sorted(groups))
    means = np.array([np.mean(groups[T]) for T in temps])
    from .analysis import T_BASE_MK, T_FIT_MK

    if not (temps < T_BASE_MK).any() or not (temps >= T_FIT_MK).any():
        return None
    fit = fit_temperature_model(temps, means, f_q_ghz)
    return temps, means, fit


def fig5d_fit_rows(records, f_q_ghz):
    header = ("temperature_mk", "mean_t1_us", "model_t1_us", "residual_rate_per_us")
    out = temperature_fit_from_records(records, f_q_ghz)
    if out is None:
        return header, [], None
    temps, means, fit = out
    model_rates = 1.0 / means - fit.residuals_per_us
    rows = [
        (float(T), float(m), float(1.0 / mr), float(res))
        for T, m, mr, res in zip(temps, means, model_rates, fit.residuals_per_us)
    ]
    return header, rows, fit


def build_report(records_by_qubit, f_q_by_qubit, cfg_hashes) -> dict:
    """Aggregate per-qubit statistics and cross-qubit fits into one document."""
    reports = {}
    for qid, records in records_by_qubit.items():
        reports[qid] = (report_from_records(records, f_q_by_qubit.get(qid)), records)

    doc = {
        "schema_version": REPORT_SCHEMA_VERSION,
        "config_hashes": sorted(h for h in cfg_hashes if h),
        "qubits": {},
    }
    for qid, (report, _) in sorted(reports.items()):
        doc["qubits"][qid] = {
            "f_q_ghz": report.f_q_ghz,
            "n_eff": report.n_eff,
            "q_per_kind": dict(sorted(report.q_per_kind.items())),
            "kinds": {
                kind: {
                    "count": st.count,
                    "excluded": st.excluded,
                    "mean_us": st.mean_us,
                    "hmean_us": st.hmean_us,
                    "std_us": st.std_us,
                }
                for kind, st in sorted(report.kinds.items())
            },
        }

    # cross-qubit fits need at least two qubits with slow-sweep statistics
    mus, sigmas_fr, fs, qs = [], [], [], []
    for qid, (report, _) in sorted(reports.items()):
        ac = report.kinds.get("ac")
        fr = report.kinds.get("fast_random")
        if ac and ac.mean_us and fr and fr.std_us is not None:
            mus.append(ac.mean_us)
            sigmas_fr.append(fr.std_us)
        if report.f_q_ghz is not None and "ac" in report.q_per_kind:
            fs.append(report.f_q_ghz)
            qs.append(report.q_per_kind["ac"])
    doc["sigma_mu_slope"] = fit_sigma_vs_mu(mus, sigmas_fr) if len(mus) >= 2 else None
    if len(fs) >= 2 and len(set(fs)) >= 2:
        slope, intercept = fit_q_vs_frequency(fs, qs)
        doc["q_vs_f"] = {"series": "ac_hmean", "slope_per_ghz": slope, "intercept": intercept}
    else:
        doc["q_vs_f"] = None
    return doc, reports


def write_analysis(out_dir, records, f_q_by_qubit, cfg_hashes, quiet=False):
    """Write report.json and every computable table into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    records_by_qubit = {}
    for r in records:
        records_by_qubit.setdefault(r.qubit_id, []).append(r)

    doc, reports = build_report(records_by_qubit, f_q_by_qubit, cfg_hashes)

    written = []

    def emit(name, header, rows):
        if rows:
            write_csv(out / name, header, rows, cfg_hashes)
            written.append(name)

    emit("fig1_series.csv", *fig1_series_rows(records))
    emit("fig3b_cumulative.csv", *fig3b_cumulative_rows(records))
    emit("fig3c_qf.csv", *fig3c_qf_rows(reports))
    emit("fig4c_sigma_mu.csv", *fig4c_sigma_mu_rows(reports))
    emit("fig4d_neff.csv", *fig4d_neff_rows(reports))
    emit("fig5b_collapse.csv", *fig5b_collapse_rows(records))

    doc["temperature_fit"] = None
    if len(records_by_qubit) == 1:
        qid = next(iter(records_by_qubit))
        header, rows, fit = fig5d_fit_rows(records, f_q_by_qubit.get(qid))
        if fit is not None:
            emit("fig5d_fit.csv", header, rows)
            doc["temperature_fit"] = {
                "gamma0_per_us": fit.gamma0_per_us,
                "gap_ghz": fit.gap_ghz,
                "converged": fit.converged,
                "n_base": fit.n_base,
                "n_fit": fit.n_fit,
            }

    report_path = out / "report.json"
    report_path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    written.insert(0, "report.json")
    if not quiet:
        for name in written:
            print(f"wrote {out / name}")
    return doc
