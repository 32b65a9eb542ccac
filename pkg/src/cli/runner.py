"""
Run execution with exit codes
带退出码的运行执行
"""

import hashlib
import sys
from pathlib import Path
from typing import Optional

from ..audit.audit_logger import AuditLogger
from ..errors import PotentialLabError
from .commands import RunOutcome, run_command
from .config import RunConfig
from .reports import write_report


EXIT_OK = 0
EXIT_FAILED = 1
EXIT_ERROR = 2

DEFAULT_REPORT_DIR = "reports"


def config_digest(cfg: RunConfig) -> str:
    """First 16 hex digits of the SHA-256 of the canonical configuration"""
    return hashlib.sha256(cfg.model_dump_json().encode()).hexdigest()[:16]


def report_path(cfg: RunConfig, output: Optional[str] = None, report_dir: str = DEFAULT_REPORT_DIR) -> str:
    if output:
        return output
    if cfg.output_path:
        return cfg.output_path
    return str(Path(report_dir) / f"{cfg.name or cfg.command}.{cfg.format}")


def exit_code(outcome: RunOutcome) -> int:
    """0 when every check passes (or the run only computes), 1 otherwise"""
    return EXIT_OK if outcome.passed else EXIT_FAILED


def _print_summary(outcome: RunOutcome, path: Path) -> None:
    mark = "✓" if outcome.passed else "✗"
    if outcome.reports:
        failed = sum(1 for r in outcome.reports if not r.passed)
        detail = f"{len(outcome.reports) - failed}/{len(outcome.reports)} checks passed"
    elif outcome.status is not None:
        detail = f"verdict {outcome.status}"
    else:
        detail = f"{len(outcome.rows)} rows"
    print(f"{mark} {outcome.command}: {detail}")
    print(f"  Report: {path}")


def execute(
    cfg: RunConfig,
    output: Optional[str] = None,
    timestamp: bool = True,
    audit: Optional[AuditLogger] = None,
    report_dir: str = DEFAULT_REPORT_DIR
) -> int:
    """
    Run a configuration, write its report and map the outcome to an exit code

    Args:
        cfg: Validated run configuration
        output: Report path overriding output_path
        timestamp: Include the generation time in the report
        audit: Event trail for the run
        report_dir: Directory for reports when neither output nor output_path is set

    Returns:
        int: 0 if all checks pass or the command is computational, 1 if a check
             fails or an audit finds a recurrence violation, 2 on errors
    """
    if audit:
        audit.log_run_started(cfg.command, config_digest(cfg), cfg.effective_seed)
    try:
        outcome = run_command(cfg)
        for report in outcome.reports:
            if audit:
                audit.log_check_completed(report.label, report.passed, report.slack)
        if audit and outcome.status is not None:
            audit.log_verdict(outcome.status, {"command": cfg.command})
        path = write_report(outcome, report_path(cfg, output, report_dir), cfg.format, cfg.name, timestamp)
    except (PotentialLabError, ValueError, TypeError, ArithmeticError, OSError) as e:
        if audit:
            audit.log_run_failed(cfg.command, f"{type(e).__name__}: {e}")
        print(f"✗ Error: {type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_ERROR

    if audit:
        audit.log_report_written(str(path), len(outcome.rows), cfg.format)
    _print_summary(outcome, path)
    return exit_code(outcome)
