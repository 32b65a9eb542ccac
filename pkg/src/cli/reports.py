"""
Report writers for run results
运行结果的报告写入
"""

import csv
import io
import json
import math
import os
import tempfile
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from .commands import RunOutcome


CHECK_COLUMNS = ["label", "lhs", "rhs", "slack", "tolerance", "passed", "inputs"]

REPORT_COLUMNS: Dict[str, List[str]] = {
    "mean": ["quantity", "r", "center", "half_angle", "value", "error_bound", "method", "samples", "seed"],
    "chain": CHECK_COLUMNS,
    "prop1": CHECK_COLUMNS,
    "prop2": CHECK_COLUMNS,
    "harnack": CHECK_COLUMNS,
    "order": ["r", "profile", "window_slope"],
    "audit": [
        "k", "r_k", "r_next", "S_V", "S_V_next", "epsilon", "factor", "bound",
        "tolerance", "hypothesis", "passed", "monotone", "status",
    ],
    "slices": ["direction", "status", "constant", "order_proxy", "M"],
}

TIMESTAMP_PREFIX = "# generated: "


def clean_value(value: Any) -> Any:
    """Replace non-finite floats by strings so reports stay valid JSON"""
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    if isinstance(value, dict):
        return {str(k): clean_value(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [clean_value(v) for v in value]
    if hasattr(value, "item") and not isinstance(value, (str, bytes)):
        return clean_value(value.item())
    return value


def _cell(value: Any) -> str:
    value = clean_value(value)
    if value is None:
        return ""
    if isinstance(value, (list, dict)):
        return json.dumps(value, sort_keys=True)
    return str(value)


def render_csv(outcome: RunOutcome, generated_at: Optional[str] = None) -> str:
    """
    Render rows as CSV with the fixed column set of the command

    Args:
        outcome: Result of run_command
        generated_at: Timestamp written as a leading comment line; omitted when None

    Returns:
        str: CSV text with LF line endings
    """
    columns = REPORT_COLUMNS[outcome.command]
    buffer = io.StringIO()
    if generated_at is not None:
        buffer.write(f"{TIMESTAMP_PREFIX}{generated_at}\n")
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in outcome.rows:
        writer.writerow([_cell(row.get(column)) for column in columns])
    return buffer.getvalue()


def render_json(outcome: RunOutcome, name: Optional[str] = None, generated_at: Optional[str] = None) -> str:
    """Render the outcome as a JSON document; rows carry the CSV columns 1:1"""
    columns = REPORT_COLUMNS[outcome.command]
    document: Dict[str, Any] = {
        "command": outcome.command,
        "name": name,
        "passed": outcome.passed,
        "status": outcome.status,
        "columns": columns,
        "rows": [{column: clean_value(row.get(column)) for column in columns} for row in outcome.rows],
        "summary": clean_value(outcome.summary),
    }
    if generated_at is not None:
        document["generated_at"] = generated_at
    return json.dumps(document, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_atomic(path: str, text: str) -> Path:
    """Write text to path through a temporary file in the same directory and a rename"""
    target = Path(path)
    target.parent.mkdir(parents=True, exist_ok=True)
    fd, temp_name = tempfile.mkstemp(prefix=f".{target.name}.", suffix=".tmp", dir=str(target.parent))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
        os.replace(temp_name, target)
    except BaseException:
        if os.path.exists(temp_name):
            os.unlink(temp_name)
        raise
    return target


def write_report(
    outcome: RunOutcome,
    path: str,
    report_format: str = "csv",
    name: Optional[str] = None,
    timestamp: bool = True
) -> Path:
    """
    Serialize an outcome and write it atomically

    Args:
        outcome: Result of run_command
        path: Destination file
        report_format: csv or json
        name: Run name recorded in JSON reports
        timestamp: Include the generation time (header line or generated_at key)

    Returns:
        Path: The written file
    """
    generated_at = datetime.now(timezone.utc).isoformat(timespec="seconds") if timestamp else None
    if report_format == "csv":
        text = render_csv(outcome, generated_at)
    elif report_format == "json":
        text = render_json(outcome, name, generated_at)
    else:
        raise ValueError(f"unknown report format {report_format!r}")
    return write_atomic(path, text)
