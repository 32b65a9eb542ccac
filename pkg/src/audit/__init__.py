"""
Audit module for logging and monitoring
审计模块，用于日志记录和监控
"""

from .audit_logger import AuditLogger

__all__ = ["AuditLogger"]
