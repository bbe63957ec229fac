"""Record and manifest files.

Campaign output is JSON lines: one record object per line, snake_case keys
with SI-suffixed names, in wall-clock order.  Every line carries the
resolved-config hash so a stray file can be traced to its campaign.  A
manifest JSON sits next to the records with the fully resolved
configuration.  Writing is deterministic: a re-run with the same config and
seed produces byte-identical files.
"""

import dataclasses
import hashlib
import json
from pathlib import Path

from .protocols import T1Record

SCHEMA_VERSION = 1


def config_hash(resolved_config: dict) -> str:
    """sha256 of the canonical JSON encoding of a resolved config."""
    canonical = json.dumps(resolved_config, sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode()).hexdigest()


def record_to_dict(record: T1Record, cfg_hash: str) -> dict:
    doc = dataclasses.asdict(record)
    doc["config_hash"] = cfg_hash
    return doc


def write_records(path, records, cfg_hash: str) -> None:
    lines = [json.dumps(record_to_dict(r, cfg_hash), sort_keys=True) for r in records]
    Path(path).write_text("".join(line + "\n" for line in lines))


def read_records(path) -> tuple:
    """Load records plus the set of config hashes seen in the file."""
    records = []
    hashes = set()
    for i, line in enumerate(Path(path).read_text().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            doc = json.loads(line)
        except json.JSONDecodeError as e:
            raise ValueError(f"{path}:{i}: not valid JSON: {e}") from None
        hashes.add(doc.pop("config_hash", None))
        records.append(T1Record(**doc))
    return records, hashes


def write_manifest(path, resolved_config: dict, records_file: str, n_records: int) -> None:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "config_hash": config_hash(resolved_config),
        "resolved_config": resolved_config,
        "records_file": records_file,
        "n_records": n_records,
    }
    Path(path).write_text(json.dumps(doc, indent=2, sort_keys=True) + "\n")


def read_manifest(path) -> dict:
    doc = json.loads(Path(path).read_text())
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported manifest schema_version: {doc.get('schema_version')!r}")
    return doc
