"""Result containers and CSV/JSON serialization.

CSV output flattens only the rate rows (header mandatory, stable scheme
then SNR ordering), so repeat runs of a seeded experiment produce
byte-identical files.  JSON mirrors the full report including metadata
such as wall time, which naturally varies between runs.
"""

import json
import sys
from dataclasses import dataclass, field

from .schemes import SchemeRate

CSV_HEADER = "scheme,snr_db,rate,std_error"


@dataclass
class CapacityReport:
    """Everything one experiment run produced."""

    command: str
    params: dict
    rows: list[SchemeRate]
    breakdown: dict | None = None
    metadata: dict = field(default_factory=dict)


def _fmt(x: float) -> str:
    return f"{x:.10g}"


def rows_to_csv(rows: list[SchemeRate]) -> str:
    lines = [CSV_HEADER]
    for row in rows:
        err = _fmt(row.std_error) if row.std_error is not None else ""
        lines.append(f"{row.scheme.value},{_fmt(row.snr_db)},{_fmt(row.rate)},{err}")
    return "\n".join(lines) + "\n"


def report_to_csv(report: CapacityReport) -> str:
    """CSV flattens the rate rows only; breakdown and metadata are JSON-only."""
    return rows_to_csv(report.rows)


def report_to_json(report: CapacityReport) -> str:
    payload = {
        "command": report.command,
        "params": report.params,
        "rows": [
            {
                "scheme": row.scheme.value,
                "snr_db": row.snr_db,
                "rate": row.rate,
                "method": row.method,
                "std_error": row.std_error,
            }
            for row in report.rows
        ],
        "breakdown": report.breakdown,
        "metadata": report.metadata,
    }
    return json.dumps(payload, indent=2) + "\n"


def write_report(report: CapacityReport, path: str, fmt: str) -> None:
    """Write CSV or JSON to a path, with '-' meaning stdout."""
    text = report_to_json(report) if fmt == "json" else report_to_csv(report)
    if path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
