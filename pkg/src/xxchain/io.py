"""Result persistence: config hashing, CSV emission, run records.

Every run writes a CSV of plot-ready numbers plus a companion JSON run
record holding the fully resolved configuration, its content hash, the
master seed, and timing.  File names embed the first 12 hex digits of
the hash so outputs from different configurations never collide.  CSV
content depends only on the scientific configuration (never on worker
count or timing), is formatted to 12 significant digits, and uses UTF-8
with LF line endings, so identical runs emit byte-identical files.
"""

from __future__ import annotations

import hashlib
import json
import math
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .ensemble import SweepResult
from .scan import JmScanResult

__all__ = [
    "config_hash",
    "emit_sweep",
    "emit_scan",
    "emit_trace",
    "read_csv",
    "write_run_record",
]


def _fmt(x: float) -> str:
    """Decimal with 12 significant digits."""
    if isinstance(x, float) and not math.isfinite(x):
        raise ValueError(f"non-finite value in output: {x}")
    return f"{x:.12g}"


def canonical_json(config: dict) -> str:
    """Key-sorted, whitespace-free JSON; the hashing preimage."""
    return json.dumps(config, sort_keys=True, separators=(",", ":"))


def config_hash(config: dict) -> str:
    return hashlib.sha256(canonical_json(config).encode("utf-8")).hexdigest()


def _write_csv(path: Path, header: list[str], rows) -> Path:
    lines = [",".join(header)]
    lines += [",".join(_fmt(v) if isinstance(v, float) else str(v) for v in row)
              for row in rows]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8", newline="\n")
    return path


def emit_sweep(
    result: SweepResult,
    out_dir: Path,
    config: dict,
    overlays: dict[str, float] | None = None,
) -> Path:
    """Sweep statistics as CSV, one row per strength grid point.

    overlays maps extra column names to constant values (reference
    lines such as the clean optimum or the standard-chain baseline).
    """
    header = ["p", "mean_eof", "stddev", "stderr", "realizations"]
    extra = sorted(overlays) if overlays else []
    header += extra
    rows = []
    for k in range(len(result.p)):
        row = [result.p[k], result.mean_eof[k], result.stddev[k],
               result.stderr[k], result.realizations]
        row += [overlays[name] for name in extra]
        rows.append(row)
    path = out_dir / f"sweep_{config_hash(config)[:12]}.csv"
    return _write_csv(path, header, rows)


def emit_scan(result: JmScanResult, out_dir: Path, config: dict) -> Path:
    """Scan curve as CSV, one row per coupling grid point."""
    rows = list(zip(result.jm, result.t, result.eof))
    path = out_dir / f"scan_{config_hash(config)[:12]}.csv"
    return _write_csv(path, ["jm", "t_star", "eof_star"], rows)


def emit_trace(times, eofs, out_dir: Path, config: dict) -> Path:
    """Clean EoF-versus-time curve as CSV."""
    path = out_dir / f"trace_{config_hash(config)[:12]}.csv"
    return _write_csv(path, ["t", "eof"], zip(times, eofs))


def read_csv(path: Path) -> dict[str, list[float]]:
    """Re-parse an emitted CSV into columns of floats."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    header = lines[0].split(",")
    cols: dict[str, list[float]] = {name: [] for name in header}
    for line in lines[1:]:
        for name, cell in zip(header, line.split(",")):
            cols[name].append(float(cell))
    return cols


def write_run_record(
    out_dir: Path,
    mode: str,
    config: dict,
    stats: dict,
    execution: dict,
    started_at: datetime,
    wall_time_s: float,
    truncated: bool = False,
) -> Path:
    """Companion JSON with full provenance for one emitted result."""
    record = {
        "version": __version__,
        "mode": mode,
        "config": config,
        "config_hash": config_hash(config),
        "master_seed": config.get("master_seed"),
        "stats": stats,
        "execution": execution,
        "truncated": truncated,
        "started_at": started_at.astimezone(timezone.utc).isoformat(),
        "finished_at": datetime.now(timezone.utc).isoformat(),
        "wall_time_s": wall_time_s,
    }
    path = out_dir / f"{mode}_{config_hash(config)[:12]}.run.json"
    path.write_text(json.dumps(record, indent=2) + "\n", encoding="utf-8")
    return path
