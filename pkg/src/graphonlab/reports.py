"""Run manifests and JSON/CSV emission."""

from __future__ import annotations

import csv
import io
import json
import os
import sys
from datetime import datetime, timezone

from . import __version__, _backend
from .rng import RNG_ALGORITHM

SCHEMA_VERSION = 1


def make_manifest(command, seed, parameters: dict) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": list(command),
        "seed": seed,
        "rng_algorithm": RNG_ALGORITHM,
        "toolkit_version": __version__,
        "kernel_backend": _backend.BACKEND,
        "timestamp": datetime.now(timezone.utc).isoformat(timespec="seconds"),
        "parameters": parameters,
    }


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, allow_nan=False) + "\n"


def to_document(manifest: dict, payload) -> dict:
    return {"manifest": manifest, "payload": payload}


def payload_bytes(document: dict) -> bytes:
    """Canonical bytes of everything except the timestamp."""
    doc = dict(document)
    doc["manifest"] = {k: v for k, v in document["manifest"].items() if k != "timestamp"}
    return dumps(doc).encode()


def to_csv(manifest: dict, columns, rows) -> str:
    buf = io.StringIO()
    buf.write("# manifest " + json.dumps(manifest, sort_keys=True) + "\n")
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_csv_cell(row.get(c)) for c in columns])
    return buf.getvalue()


def _csv_cell(x):
    if x is None:
        return "NA"
    if isinstance(x, float):
        return repr(x)
    return x


def emit(text: str, out=None) -> None:
    if out in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def thread_count() -> int:
    try:
        return max(1, int(os.environ.get("GRAPHONLAB_THREADS", "1")))
    except ValueError:
        return 1
