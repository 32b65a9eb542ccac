"""
CLI module: run configurations, dispatch and reports
命令行模块：运行配置、命令分发与报告
"""

from .commands import RunOutcome, build_scheme, radii_sequence, run_command
from .config import RunConfig, load_config_file, parse_config
from .reports import REPORT_COLUMNS, render_csv, render_json, write_atomic, write_report
from .runner import EXIT_ERROR, EXIT_FAILED, EXIT_OK, execute, report_path

__all__ = [
    "EXIT_ERROR",
    "EXIT_FAILED",
    "EXIT_OK",
    "REPORT_COLUMNS",
    "RunConfig",
    "RunOutcome",
    "build_scheme",
    "execute",
    "load_config_file",
    "parse_config",
    "radii_sequence",
    "render_csv",
    "render_json",
    "report_path",
    "run_command",
    "write_atomic",
    "write_report",
]
