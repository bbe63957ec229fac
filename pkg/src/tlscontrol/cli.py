"""Command-line interface.

Subcommands fall into three groups: campaign runners that simulate a
qubit against a sampled defect bath and write JSON-lines records plus a
manifest (``run-interleave``, ``run-optimize``, ``run-champion``,
``sweep-ac``, ``sweep-temperature``), utilities that operate on files
(``analyze``, ``fit-decay``, ``fit-temperature``), and ``simulate-bath``
which just samples and serializes a bath.

Exit codes: 0 on success, 2 for configuration problems, 3 for runtime
failures.  All outputs land under ``--out`` (default from the config).
"""

import argparse
import csv
import json
import sys
from pathlib import Path

import numpy as np

from .bath import bath_to_dict, sample_bath
from .config import ConfigError, RunConfig, load_config, resolve
from .measurement import P1Curve, fit_exponential
from .protocols import (
    run_ac_sweep,
    run_champion,
    run_interleave,
    run_optimizer,
    run_temperature_sweep,
)
from .records import config_hash, read_manifest, read_records, write_manifest, write_records
from .tables import write_analysis


def _load_run_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig(resolve({}))
    if getattr(args, "seed", None) is not None:
        cfg.resolved["run"]["seed"] = args.seed
    if getattr(args, "out", None) is not None:
        cfg.resolved["run"]["out_dir"] = str(args.out)
    return cfg


def _out_dir(cfg: RunConfig) -> Path:
    out = Path(cfg.resolved["run"]["out_dir"])
    out.mkdir(parents=True, exist_ok=True)
    return out


def _write_campaign(cfg: RunConfig, records, quiet: bool) -> None:
    out = _out_dir(cfg)
    records_path = out / "records.jsonl"
    write_records(records_path, records, config_hash(cfg.resolved))
    write_manifest(out / "manifest.json", cfg.resolved, "records.jsonl", len(records))
    if not quiet:
        print(f"wrote {records_path} ({len(records)} records)")
        print(f"wrote {out / 'manifest.json'}")


def _flatten(groups) -> list:
    records = [r for group in groups.values() for r in group]
    records.sort(key=lambda r: r.wall_time_s)
    return records


def cmd_simulate_bath(args) -> int:
    cfg = _load_run_config(args)
    bath = sample_bath(cfg.bath_config(), cfg.seed)
    doc = {"config_hash": config_hash(cfg.resolved), **bath_to_dict(bath)}
    out = _out_dir(cfg)
    path = out / "bath.json"
    path.write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")
    if not args.quiet:
        print(f"wrote {path} ({len(bath.defects)} defects)")
    return 0


def cmd_run_interleave(args) -> int:
    cfg = _load_run_config(args)
    world = cfg.build_world()
    records = run_interleave(world, cfg.schedule())
    _write_campaign(cfg, records, args.quiet)
    return 0


def cmd_run_optimize(args) -> int:
    cfg = _load_run_config(args)
    world = cfg.build_world()
    opt = cfg.resolved["protocol"]["optimize"]
    records = run_optimizer(
        world,
        threshold_us=opt["threshold_us"],
        max_measurements=opt["max_measurements"],
        settings=cfg.measurement_settings("optimizer"),
    )
    _write_campaign(cfg, records, args.quiet)
    return 0


def cmd_run_champion(args) -> int:
    cfg = _load_run_config(args)
    world = cfg.build_world()
    champ = cfg.resolved["protocol"]["champion"]
    records = run_champion(
        world,
        coarse_threshold_us=champ["coarse_threshold_us"],
        n_rounds=champ["n_rounds"],
        coarse_settings=cfg.measurement_settings("fast_random"),
        fine_n_points=champ["fine_n_points"],
        fine_shots=champ["fine_shots"],
        fine_duration_s=champ["fine_duration_s"],
    )
    _write_campaign(cfg, records, args.quiet)
    return 0


def cmd_sweep_ac(args) -> int:
    cfg = _load_run_config(args)
    world = cfg.build_world()
    sweep = cfg.resolved["protocol"]["ac_sweep"]
    groups = run_ac_sweep(
        world,
        vpp_list=sweep["vpp_v"],
        f_ac_list=sweep["f_ac_hz"],
        rounds=sweep["rounds"],
        settings=cfg.measurement_settings("ac"),
    )
    _write_campaign(cfg, _flatten(groups), args.quiet)
    return 0


def cmd_sweep_temperature(args) -> int:
    cfg = _load_run_config(args)
    world = cfg.build_world()
    sweep = cfg.resolved["protocol"]["temperature_sweep"]
    groups = run_temperature_sweep(
        world,
        temperatures_mk=sweep["temperatures_mk"],
        kinds=tuple(sweep["kinds"]),
        rounds=sweep["rounds"],
        settings=None,
        ac=cfg.ac_waveform(),
    )
    _write_campaign(cfg, _flatten(groups), args.quiet)
    return 0


def cmd_analyze(args) -> int:
    all_records = []
    hashes = set()
    f_q_by_qubit = {}
    for path in args.records:
        records, file_hashes = read_records(path)
        all_records.extend(records)
        hashes.update(file_hashes)
        manifest_path = Path(path).parent / "manifest.json"
        if manifest_path.exists():
            manifest = read_manifest(manifest_path)
            f_q = manifest["resolved_config"]["qubit"]["f_q_ghz"]
            qid = manifest["resolved_config"]["run"]["qubit_id"]
            f_q_by_qubit[qid] = f_q
    if not all_records:
        raise RuntimeError("no records found in input files")
    qubit_ids = {r.qubit_id for r in all_records}
    if len(qubit_ids) > 1 and not args.allow_mixed:
        raise ConfigError(
            "records span multiple qubit ids "
            f"({', '.join(sorted(qubit_ids))}); pass --allow-mixed to combine them"
        )
    all_records.sort(key=lambda r: (r.qubit_id, r.wall_time_s))
    write_analysis(args.out, all_records, f_q_by_qubit, hashes, quiet=args.quiet)
    return 0


def _read_csv_columns(path, n_min, n_max, what):
    rows = []
    with open(path, newline="") as fh:
        for i, row in enumerate(csv.reader(fh)):
            row = [c.strip() for c in row if c.strip() != ""]
            if not row or row[0].startswith("#"):
                continue
            try:
                values = [float(c) for c in row]
            except ValueError:
                if i == 0:
                    continue  # header row
                raise ConfigError(f"{path}:{i + 1}: expected numeric {what} columns")
            if not n_min <= len(values) <= n_max:
                raise ConfigError(
                    f"{path}:{i + 1}: expected {n_min}-{n_max} columns, got {len(values)}"
                )
            rows.append(values)
    if not rows:
        raise ConfigError(f"{path}: no data rows")
    return rows


def cmd_fit_decay(args) -> int:
    rows = _read_csv_columns(args.csv, 2, 3, "delay_us,p1[,shots]")
    curve = P1Curve(
        delays=np.array([r[0] for r in rows]),
        p1=np.array([r[1] for r in rows]),
        shots=np.array([r[2] if len(r) == 3 else 400.0 for r in rows]),
    )
    fit = fit_exponential(curve)
    print(
        f"t1_us={fit.t1} t1_stderr_us={fit.t1_stderr} "
        f"amplitude={fit.amplitude} offset={fit.offset} converged={fit.converged}"
    )
    return 0 if fit.converged else 3


def cmd_fit_temperature(args) -> int:
    from .analysis import fit_temperature_model

    rows = _read_csv_columns(args.csv, 2, 2, "temperature_mk,t1_us")
    temps = np.array([r[0] for r in rows])
    t1 = np.array([r[1] for r in rows])
    f_q = args.f_q
    if f_q is None:
        cfg = _load_run_config(args)
        f_q = cfg.resolved["qubit"]["f_q_ghz"]
    fit = fit_temperature_model(temps, t1, f_q)
    print(
        f"gamma0_per_us={fit.gamma0_per_us} gap_ghz={fit.gap_ghz} "
        f"converged={fit.converged} n_base={fit.n_base} n_fit={fit.n_fit}"
    )
    return 0 if fit.converged else 3


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tlscontrol",
        description="Simulate and analyze qubit energy relaxation under defect-bath control.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text, *, config=True):
        p = sub.add_parser(name, help=help_text)
        p.set_defaults(func=func)
        p.add_argument("--quiet", action="store_true", help="suppress progress output")
        if config:
            p.add_argument("--config", type=Path, help="JSON config file (defaults used if omitted)")
            p.add_argument("--seed", type=int, help="override run.seed")
            p.add_argument("--out", type=Path, help="override run.out_dir")
        return p

    add("simulate-bath", cmd_simulate_bath, "sample a defect bath and write bath.json")
    add("run-interleave", cmd_run_interleave, "run the interleaved control-comparison campaign")
    add("run-optimize", cmd_run_optimize, "run the bias-voltage optimization loop")
    add("run-champion", cmd_run_champion, "hunt for a champion bias and refine it")
    add("sweep-ac", cmd_sweep_ac, "sweep periodic-drive amplitude and frequency")
    add("sweep-temperature", cmd_sweep_temperature, "sweep mixing-chamber temperature")

    p = add("analyze", cmd_analyze, "aggregate record files into report.json and CSV tables", config=False)
    p.add_argument("records", nargs="+", help="records.jsonl files to aggregate")
    p.add_argument("--out", type=Path, required=True, help="output directory")
    p.add_argument("--allow-mixed", action="store_true", help="permit records from multiple qubit ids")

    p = add("fit-decay", cmd_fit_decay, "fit a decay curve from a delay_us,p1[,shots] CSV", config=False)
    p.add_argument("csv", help="input CSV file")

    p = add("fit-temperature", cmd_fit_temperature, "fit the thermal model to temperature_mk,t1_us CSV")
    p.add_argument("csv", help="input CSV file")
    p.add_argument("--f-q", type=float, help="qubit frequency in GHz (else from config)")

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (OSError, RuntimeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
