"""CSV result files with an embedded run manifest.

Layout of every file written here:

    # tool: tcopula 0.3.0
    # command: tail-table
    # config: {"method": "same-chi2", ...}
    # ... one "# key: <json>" line per manifest field
    col_a,col_b
    ...

Floats are written with repr precision, so reading a file back gives the
exact doubles that were written.
"""

import io
import json
import logging
import os
import sys
import tempfile
from dataclasses import dataclass, field
from datetime import datetime, timezone

import pandas as pd

from tcopula.config import TOOL_VERSION
from tcopula.errors import OutputError

logger = logging.getLogger(__name__)

COMMENT = "#"
STDOUT = "-"


def _timestamp():
    """UTC timestamp; honours SOURCE_DATE_EPOCH so reruns can be byte-identical."""
    epoch = os.getenv("SOURCE_DATE_EPOCH")
    if epoch:
        moment = datetime.fromtimestamp(int(epoch), tz=timezone.utc)
    else:
        moment = datetime.now(timezone.utc)
    return moment.replace(microsecond=0).isoformat()


@dataclass
class RunManifest:
    command: str
    config: dict
    threshold_std: str | None = None
    grid: dict | None = None
    statistics: dict = field(default_factory=dict)
    tool_version: str = TOOL_VERSION
    timestamp: str = field(default_factory=_timestamp)

    def lines(self):
        entries = {
            "tool": f"tcopula {self.tool_version}",
            "command": self.command,
            "timestamp": self.timestamp,
            "config": self.config,
        }
        if self.threshold_std is not None:
            entries["threshold_std"] = self.threshold_std
        if self.grid is not None:
            entries["grid"] = self.grid
        if self.statistics:
            entries["statistics"] = self.statistics
        out = []
        for key, value in entries.items():
            text = value if isinstance(value, str) else json.dumps(value, sort_keys=True)
            out.append(f"{COMMENT} {key}: {text}\n")
        return out


def render_csv(frame, manifest, index=False):
    buf = io.StringIO()
    buf.writelines(manifest.lines())
    # float_format=None keeps repr (round-trip) precision
    frame.to_csv(buf, index=index, lineterminator="\n")
    return buf.getvalue()


def write_csv(frame, path, manifest, index=False):
    """Write ``frame`` under its manifest; "-" writes to stdout.

    Files are written to a temporary sibling and renamed into place, so a
    failure never leaves a partial file behind.
    """
    text = render_csv(frame, manifest, index=index)
    if path == STDOUT or path is None:
        sys.stdout.write(text)
        return None

    directory = os.path.dirname(os.path.abspath(path))
    tmp_path = None
    try:
        with tempfile.NamedTemporaryFile(
            "w", dir=directory, prefix=".tcopula-", suffix=".tmp",
            delete=False, encoding="utf-8", newline="",
        ) as f:
            tmp_path = f.name
            f.write(text)
        os.replace(tmp_path, path)
    except OSError as e:
        if tmp_path is not None and os.path.exists(tmp_path):
            os.remove(tmp_path)
        raise OutputError(f"Failed to write {path}: {e}") from e

    logger.info("Wrote %d rows to %s", len(frame), path)
    return path


def read_csv(path, index_col=None):
    """Read a file written by write_csv; returns (manifest dict, DataFrame)."""
    manifest = {}
    skip = 0
    with open(path, "r", encoding="utf-8") as f:
        for line in f:
            if not line.startswith(COMMENT):
                break
            skip += 1
            key, _, text = line[1:].strip().partition(": ")
            try:
                manifest[key] = json.loads(text)
            except ValueError:
                manifest[key] = text
    frame = pd.read_csv(path, skiprows=skip, float_precision="round_trip", index_col=index_col)
    return manifest, frame
