"""Pydantic schemas for run configuration and reports."""

from bjq.schemas.reports import CheckResult, DecayReport, GhostReport, RemainderReport
from bjq.schemas.run_config import Command, RunConfig

__all__ = [
    "Command",
    "RunConfig",
    "CheckResult",
    "DecayReport",
    "GhostReport",
    "RemainderReport",
]
