from .metrics import (
    ATTEMPTED,
    SKIPPED,
    AttackResult,
    evaluate_attack,
    perturbation_pct,
    load_results,
)
from .report import ISR_INTERVALS, IsrBucket, MetricsReport, aggregate

__all__ = [
    "ATTEMPTED",
    "SKIPPED",
    "AttackResult",
    "evaluate_attack",
    "perturbation_pct",
    "load_results",
    "ISR_INTERVALS",
    "IsrBucket",
    "MetricsReport",
    "aggregate",
]
