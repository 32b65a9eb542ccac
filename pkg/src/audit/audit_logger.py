"""
Audit Logger for tracking lab runs
审计日志记录器，用于跟踪实验运行
"""

import json
import hashlib
import sys
from datetime import datetime
from pathlib import Path
from typing import Any, Dict, List, Optional

from loguru import logger


class AuditLogger:
    """Checksummed trail of run events (configuration, checks, verdicts, reports)"""

    def __init__(
        self,
        log_dir: str = "logs",
        log_level: str = "INFO",
        console_level: str = "WARNING",
        rotation: str = "10 MB",
        retention: str = "30 days",
        integrity_check: bool = True
    ):
        """
        Initialize the AuditLogger

        Args:
            log_dir: Directory to store log files
            log_level: Level of the file sink
            console_level: Level of the standard-error sink (DEBUG with --verbose)
            rotation: Rotation policy of the file sink
            retention: Retention policy of the file sink
            integrity_check: Whether to include integrity checksums
        """
        self.log_dir = Path(log_dir)
        self.log_dir.mkdir(parents=True, exist_ok=True)
        self.integrity_check = integrity_check

        self.log_file = self.log_dir / f"lab_{datetime.now().strftime('%Y%m%d')}.log"

        logger.remove()  # Remove default handler
        self._handlers: List[int] = [
            logger.add(
                self.log_file,
                rotation=rotation,
                retention=retention,
                level=log_level,
                format="{time:YYYY-MM-DD HH:mm:ss} | {level} | {message}",
                enqueue=True
            ),
            logger.add(
                lambda msg: print(msg, end="", file=sys.stderr),
                level=console_level,
                format="{time:YYYY-MM-DD HH:mm:ss} | {level} | {message}\n"
            ),
        ]

        self.logger = logger

    def log_run_started(self, command: str, config_digest: str, seed: Optional[int] = None) -> None:
        """
        Log the start of a run

        Args:
            command: Run command
            config_digest: Digest of the run configuration document
            seed: Seed of the run, if any
        """
        self._emit("run_started", {
            'command': command,
            'config_digest': config_digest,
            'seed': seed
        })

    def log_check_completed(self, label: str, passed: bool, slack: Optional[float] = None) -> None:
        """Log one inequality check"""
        event = {'label': label, 'passed': passed, 'slack': slack}
        self._emit("check_completed", event, level="INFO" if passed else "WARNING")

    def log_verdict(self, status: str, details: Optional[Dict[str, Any]] = None) -> None:
        """Log an audit verdict"""
        self._emit("verdict_recorded", {'status': status, **(details or {})})

    def log_report_written(self, path: str, rows: int, report_format: str) -> None:
        """Log a written report file"""
        self._emit("report_written", {'path': str(path), 'rows': rows, 'format': report_format})

    def log_run_failed(self, command: str, error: str) -> None:
        """Log a run aborted by an error"""
        self._emit("run_failed", {'command': command, 'error': error}, level="ERROR")

    def log_system_event(
        self,
        event_type: str,
        details: Dict[str, Any],
        level: str = "INFO"
    ) -> None:
        """
        Log generic lab event

        Args:
            event_type: Type of event
            details: Event details
            level: Log level (INFO, WARNING, ERROR)
        """
        self._emit(event_type, details, level)

    def _emit(self, event_type: str, details: Dict[str, Any], level: str = "INFO") -> Dict[str, Any]:
        event = {
            'event_type': event_type,
            'timestamp': datetime.now().isoformat(),
            **details
        }

        if self.integrity_check:
            event['checksum'] = self._calculate_checksum(event)

        self.logger.log(level, f"Lab event: {json.dumps(event, default=str)}")
        return event

    def _calculate_checksum(self, event: Dict[str, Any]) -> str:
        """
        Calculate checksum for log integrity

        Args:
            event: Event dictionary

        Returns:
            str: First 16 hex digits of the SHA-256 of the canonical event
        """
        event_copy = {k: v for k, v in event.items() if k != 'checksum'}
        event_str = json.dumps(event_copy, sort_keys=True, default=str)
        return hashlib.sha256(event_str.encode()).hexdigest()[:16]

    def verify_log_integrity(self, log_entry: str) -> bool:
        """
        Verify the integrity of a log entry

        Args:
            log_entry: JSON event, or a full log line containing one

        Returns:
            bool: True if integrity check passes
        """
        if not log_entry.lstrip().startswith('{') and '{' in log_entry:
            log_entry = log_entry[log_entry.index('{'):]
        try:
            event = json.loads(log_entry)
            if 'checksum' not in event:
                return False
            return event['checksum'] == self._calculate_checksum(event)
        except (json.JSONDecodeError, KeyError, TypeError):
            return False

    def close(self) -> None:
        """Flush queued messages and detach the sinks"""
        logger.complete()
        for handler in self._handlers:
            try:
                logger.remove(handler)
            except ValueError:
                pass
        self._handlers = []

    def read_events(self, event_type: Optional[str] = None) -> List[Dict[str, Any]]:
        """
        Parse run events back from the current log file

        Args:
            event_type: Keep only events of this type

        Returns:
            list: Events in file order, each with a `verified` flag
        """
        logger.complete()
        if not self.log_file.exists():
            return []
        events = []
        for line in self.log_file.read_text(encoding="utf-8").splitlines():
            if "Lab event: " not in line:
                continue
            payload = line.split("Lab event: ", 1)[1]
            try:
                event = json.loads(payload)
            except json.JSONDecodeError:
                continue
            if event_type is not None and event.get('event_type') != event_type:
                continue
            event['verified'] = self.verify_log_integrity(payload)
            events.append(event)
        return events
