"""
Liouville module: ratio windows, exceptional caps and boundedness audits
Liouville 模块：比值窗口、例外球冠与有界性审计
"""

from .audit import (
    AUDIT_DEFAULTS,
    VERDICT_NOTE,
    AuditStatus,
    AuditVerdict,
    OffSetProbe,
    RecurrenceRow,
    SyntheticCheck,
    configure_audit,
    first_shell_sup,
    off_set_sup,
    recurrence_factor,
    run_liouville_audit,
    synthetic_sequence_check,
)
from .exceptional import (
    EpsilonSequence,
    ExceptionalSet,
    arc_normalization_check,
    epsilon_sequence,
    tends_to_zero,
)
from .sequences import RadiiSequence, thin_to_ratio_window
from .slices import SliceAudit, audit_complex_slices

__all__ = [
    "AUDIT_DEFAULTS",
    "VERDICT_NOTE",
    "AuditStatus",
    "AuditVerdict",
    "EpsilonSequence",
    "ExceptionalSet",
    "OffSetProbe",
    "RadiiSequence",
    "RecurrenceRow",
    "SliceAudit",
    "SyntheticCheck",
    "arc_normalization_check",
    "audit_complex_slices",
    "configure_audit",
    "epsilon_sequence",
    "first_shell_sup",
    "off_set_sup",
    "recurrence_factor",
    "run_liouville_audit",
    "synthetic_sequence_check",
    "tends_to_zero",
    "thin_to_ratio_window",
]
