"""Byte-stable JSON and CSV output records."""
from __future__ import annotations

import csv
import io
import json
import math
from typing import Any, Iterable, Mapping, Sequence

from . import __version__

SCHEMA_VERSION = 1
TOOL = f"radiant {__version__}"
RECORD_KEYS = {"schema_version", "tool", "command", "inputs", "payload"}


class RecordError(ValueError):
    pass


def _clean(value):
    if isinstance(value, float):
        if not math.isfinite(value):
            raise RecordError(f"non-finite value {value!r} cannot be serialised")
        return value
    if isinstance(value, Mapping):
        return {str(k): _clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    if hasattr(value, "value") and isinstance(value.value, str):  # enums
        return value.value
    return value


def make_record(command: str, inputs: Mapping[str, Any], payload: Any) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "tool": TOOL,
        "command": command,
        "inputs": _clean(dict(inputs)),
        "payload": _clean(payload),
    }


def dumps_record(record: Mapping[str, Any]) -> str:
    # Python float repr is the shortest round-tripping decimal
    return json.dumps(record, sort_keys=True, indent=2, allow_nan=False) + "\n"


def validate_record(record: Any) -> dict:
    if not isinstance(record, dict):
        raise RecordError("record must be a JSON object")
    keys = set(record)
    if keys != RECORD_KEYS:
        raise RecordError(f"record keys {sorted(keys)} != {sorted(RECORD_KEYS)}")
    if record["schema_version"] != SCHEMA_VERSION:
        raise RecordError(f"unsupported schema_version {record['schema_version']!r}")
    if not isinstance(record["tool"], str) or not record["tool"].startswith("radiant "):
        raise RecordError("tool must name radiant and its version")
    if not isinstance(record["command"], str):
        raise RecordError("command must be a string")
    if not isinstance(record["inputs"], dict):
        raise RecordError("inputs must be an object")
    return record


def loads_record(text: str) -> dict:
    return validate_record(json.loads(text))


def fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    return str(value)


def dumps_csv(header: Mapping[str, Any], columns: Sequence[str], rows: Iterable[Sequence]) -> str:
    """Comma-separated, ``#`` comment header, LF line endings."""
    buf = io.StringIO()
    buf.write(f"# tool={TOOL}\n")
    buf.write(f"# schema_version={SCHEMA_VERSION}\n")
    for key, value in header.items():
        buf.write(f"# {key}={fmt(_clean(value))}\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([fmt(_clean(v)) for v in row])
    return buf.getvalue()


def read_csv(text: str):
    """Parse ``dumps_csv`` output into ``(header dict, column names, rows of str)``."""
    header = {}
    body = []
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, value = line[1:].strip().partition("=")
            header[key] = value
        else:
            body.append(line)
    reader = csv.reader(body)
    columns = next(reader)
    return header, columns, [row for row in reader]
