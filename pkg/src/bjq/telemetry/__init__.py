"""Telemetry module for OpenTelemetry instrumentation."""

from bjq.telemetry.instrumentation import COMMAND_DURATION, TelemetryManager, set_span_attributes

__all__ = ["COMMAND_DURATION", "TelemetryManager", "set_span_attributes"]
