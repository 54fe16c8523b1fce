from newsbench.evaluation.metrics import ConfusionMatrix, MetricsReport, confusion, metrics
from newsbench.evaluation.report import Leaderboard, leaderboard, render_report

__all__ = [
    "ConfusionMatrix",
    "MetricsReport",
    "confusion",
    "metrics",
    "Leaderboard",
    "leaderboard",
    "render_report",
]
