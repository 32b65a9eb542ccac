"""
Main lab facade integrating settings, logging and runs
实验室主入口，集成设置、日志与运行
"""

from typing import Optional

from .audit import AuditLogger
from .cli.config import RunConfig, load_config_file
from .cli.runner import DEFAULT_REPORT_DIR, execute
from .growth.order import configure_growth
from .liouville.audit import configure_audit
from .quadrature.schemes import configure_defaults
from .utils import ConfigLoader


class PotentialLab:
    """Numerical potential-theory lab driven by settings and run configurations"""

    def __init__(self, config_path: str = "config/config.yaml", verbose: bool = False):
        """
        Initialize the lab

        Args:
            config_path: Path to the YAML settings; built-in defaults apply when it is absent
            verbose: Send DEBUG messages to the console
        """
        self.config = ConfigLoader(config_path, required=False)

        # Numerical defaults
        configure_defaults(self.config.get_section('quadrature'))
        configure_growth(self.config.get_section('growth'))
        configure_audit(self.config.get_section('audit'))

        log_config = self.config.get_section('logging')
        self.audit_logger = AuditLogger(
            log_dir=log_config.get('log_dir', 'logs'),
            log_level=log_config.get('level', 'INFO'),
            console_level='DEBUG' if verbose else log_config.get('console_level', 'WARNING'),
            rotation=log_config.get('rotation', '10 MB'),
            retention=log_config.get('retention', '30 days'),
            integrity_check=log_config.get('integrity_check', True)
        )

        self.report_dir = self.config.get('reports.report_dir', DEFAULT_REPORT_DIR)

        self.audit_logger.log_system_event(
            'lab_initialization',
            {'settings': str(self.config.config_path), 'settings_loaded': self.config.loaded}
        )

    def load_run(self, path: str) -> RunConfig:
        """
        Load and validate a JSON run configuration

        Args:
            path: Path to the run configuration

        Returns:
            RunConfig: Validated configuration
        """
        return load_config_file(path)

    def execute(self, cfg: RunConfig, output: Optional[str] = None, timestamp: bool = True) -> int:
        """
        Execute a run and write its report

        Args:
            cfg: Validated run configuration
            output: Report path overriding the configured one
            timestamp: Include the generation time in the report

        Returns:
            int: Exit code 0, 1 or 2
        """
        return execute(cfg, output, timestamp, self.audit_logger, self.report_dir)

    def close(self) -> None:
        self.audit_logger.close()
