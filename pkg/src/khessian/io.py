"""Deterministic file formats: CSV tables, JSON documents, run manifests.

Every number leaving the package goes through one of two exact channels:

* CSV cells and JSON values carry floats as decimal strings with 17
  significant digits, which round-trip binary64 exactly on every
  platform, so identical inputs produce byte-identical files.
* Integers stay integers (they are already exact).

A RunManifest records what produced a set of files: the command, its
parameters, the tool version, the tolerances in force, and a SHA-256
digest per output.  Two runs with identical inputs differ only in the
manifest's timestamp field.
"""

from __future__ import annotations

import hashlib
import json
import os
from dataclasses import dataclass, field
from datetime import datetime, timezone
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterable, Mapping, Sequence

import numpy as np

from .profiles import RadialProfile

try:  # single source of truth: the installed distribution metadata
    from importlib.metadata import version as _dist_version

    VERSION = _dist_version("khessian")
except Exception:  # pragma: no cover - source tree without installation
    VERSION = "0.1.0"

OUTPUT_DIR_ENV = "KHESSIAN_OUT_DIR"


def output_dir(override: str | os.PathLike | None = None) -> Path:
    """Resolve the output directory: explicit flag > environment > cwd."""
    if override is not None:
        path = Path(override)
    else:
        path = Path(os.environ.get(OUTPUT_DIR_ENV, "."))
    path.mkdir(parents=True, exist_ok=True)
    return path


# ---------------------------------------------------------------------------
# numbers
# ---------------------------------------------------------------------------


def format_float(x: float) -> str:
    """17-significant-digit decimal form; parses back to the same binary64."""
    return "%.17g" % float(x)


def _json_ready(value: Any) -> Any:
    """Convert a value tree into exactly-serializable JSON primitives."""
    if isinstance(value, Mapping):
        return {str(k): _json_ready(v) for k, v in value.items()}
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (bool, type(None))):  # before int: bool is an int
        return value
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return format_float(float(value))
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, np.ndarray):
        return [_json_ready(v) for v in value.tolist()]
    if isinstance(value, (list, tuple)):
        return [_json_ready(v) for v in value]
    if isinstance(value, (str, Path)):
        return str(value)
    # objects exposing a float view (PiRational and friends)
    if hasattr(value, "__float__"):
        return format_float(float(value))
    raise TypeError(f"cannot serialize {type(value).__name__} deterministically")


def write_json(path: str | os.PathLike, obj: Any) -> Path:
    """Write a JSON document with sorted keys, exact floats, one trailing \\n."""
    path = Path(path)
    text = json.dumps(_json_ready(obj), indent=2, sort_keys=True)
    path.write_text(text + "\n", encoding="ascii")
    return path


def read_json(path: str | os.PathLike) -> Any:
    return json.loads(Path(path).read_text(encoding="ascii"))


# ---------------------------------------------------------------------------
# CSV tables
# ---------------------------------------------------------------------------


def write_csv(
    path: str | os.PathLike,
    header: Sequence[str],
    columns: Sequence[Iterable[float]],
) -> Path:
    """Comma-separated table, '.' decimal, floats at 17 significant digits."""
    cols = [np.asarray(c, dtype=float) for c in columns]
    if len(cols) != len(header):
        raise ValueError("one header entry per column required")
    if any(c.shape != cols[0].shape for c in cols):
        raise ValueError("all columns must have equal length")
    lines = [",".join(header)]
    for row in zip(*cols):
        lines.append(",".join(format_float(x) for x in row))
    path = Path(path)
    path.write_text("\n".join(lines) + "\n", encoding="ascii")
    return path


class CsvFormatError(ValueError):
    """Malformed CSV input; the message always cites a 1-based line number."""


PROFILE_HEADER = ("s", "u", "u_s")


def profile_to_csv(path: str | os.PathLike, profile: RadialProfile) -> Path:
    return write_csv(path, PROFILE_HEADER, [profile.grid, profile.u, profile.us])


def profile_from_csv(path: str | os.PathLike) -> RadialProfile:
    """Load a profile table, rejecting malformed input with line numbers."""
    path = Path(path)
    text = path.read_text(encoding="ascii", errors="replace")
    lines = text.splitlines()
    if not lines:
        raise CsvFormatError(f"{path.name}: line 1: empty file, expected header "
                             f"{','.join(PROFILE_HEADER)}")
    header = tuple(cell.strip() for cell in lines[0].split(","))
    if header != PROFILE_HEADER:
        raise CsvFormatError(
            f"{path.name}: line 1: expected header {','.join(PROFILE_HEADER)!r}, "
            f"got {lines[0]!r}"
        )
    rows: list[tuple[float, float, float]] = []
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            raise CsvFormatError(f"{path.name}: line {lineno}: blank line inside table")
        cells = line.split(",")
        if len(cells) != 3:
            raise CsvFormatError(
                f"{path.name}: line {lineno}: expected 3 fields, got {len(cells)}"
            )
        values = []
        for col, cell in zip(PROFILE_HEADER, cells):
            try:
                values.append(float(cell))
            except ValueError:
                raise CsvFormatError(
                    f"{path.name}: line {lineno}: field {col!r} is not a number: "
                    f"{cell.strip()!r}"
                ) from None
        if not all(np.isfinite(values)):
            raise CsvFormatError(f"{path.name}: line {lineno}: non-finite value")
        rows.append(tuple(values))
    if len(rows) < 2:
        raise CsvFormatError(f"{path.name}: line {len(lines)}: need at least 2 data rows")
    data = np.asarray(rows, dtype=float)
    try:
        return RadialProfile(data[:, 0], data[:, 1], data[:, 2])
    except ValueError as exc:  # grid/boundary violations, cite the data block
        raise CsvFormatError(f"{path.name}: lines 2-{len(lines)}: {exc}") from None


# ---------------------------------------------------------------------------
# digests and manifests
# ---------------------------------------------------------------------------


def sha256_file(path: str | os.PathLike) -> str:
    digest = hashlib.sha256()
    digest.update(Path(path).read_bytes())
    return digest.hexdigest()


@dataclass(frozen=True)
class RunManifest:
    """Record of one command invocation and the files it produced."""

    command: str
    parameters: dict[str, Any]
    version: str
    tolerances: dict[str, float]
    outputs: dict[str, str]  # file name -> sha256
    timestamp: str = field(
        default_factory=lambda: datetime.now(timezone.utc).isoformat()
    )

    def to_dict(self) -> dict[str, Any]:
        return {
            "command": self.command,
            "parameters": self.parameters,
            "version": self.version,
            "tolerances": self.tolerances,
            "outputs": self.outputs,
            "timestamp": self.timestamp,
        }


def write_manifest(
    directory: str | os.PathLike,
    command: str,
    parameters: Mapping[str, Any],
    tolerances: Mapping[str, float],
    output_files: Sequence[str | os.PathLike],
) -> Path:
    """Digest the outputs and write <command>.manifest.json next to them."""
    directory = Path(directory)
    outputs = {Path(f).name: sha256_file(f) for f in output_files}
    manifest = RunManifest(
        command=command,
        parameters=dict(parameters),
        version=VERSION,
        tolerances=dict(tolerances),
        outputs=outputs,
    )
    return write_json(directory / f"{command}.manifest.json", manifest.to_dict())
