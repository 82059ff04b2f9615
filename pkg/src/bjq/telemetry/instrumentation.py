"""OpenTelemetry instrumentation setup."""

import json
import logging
from typing import Any

from opentelemetry import metrics, trace
from opentelemetry.exporter.otlp.proto.http.metric_exporter import OTLPMetricExporter
from opentelemetry.exporter.otlp.proto.http.trace_exporter import OTLPSpanExporter
from opentelemetry.sdk.metrics import MeterProvider
from opentelemetry.sdk.metrics.export import (
    ConsoleMetricExporter,
    PeriodicExportingMetricReader,
)
from opentelemetry.sdk.resources import Resource
from opentelemetry.sdk.trace import TracerProvider
from opentelemetry.sdk.trace.export import BatchSpanProcessor, ConsoleSpanExporter
from opentelemetry.semconv.resource import ResourceAttributes

from bjq.config import Settings

logger = logging.getLogger(__name__)

COMMAND_DURATION = "bjq.command.duration"


def _signal_endpoint(base: str, suffix: str) -> str:
    return base if base.endswith(suffix) else f"{base.rstrip('/')}{suffix}"


class TelemetryManager:
    """Manages OpenTelemetry tracing and the command-duration histogram."""

    def __init__(self, settings: Settings):
        self.settings = settings
        self.tracer_provider: TracerProvider | None = None
        self.meter_provider: MeterProvider | None = None
        self._duration = None

    def setup(self) -> None:
        """Initialize OpenTelemetry providers when enabled."""
        if not self.settings.otel_enabled:
            logger.debug("OpenTelemetry is disabled")
            return

        resource = self._create_resource()
        self._setup_tracing(resource)
        self._setup_metrics(resource)
        logger.info("OpenTelemetry instrumentation initialized")

    def _create_resource(self) -> Resource:
        attributes = {
            ResourceAttributes.SERVICE_NAME: self.settings.otel_service_name,
            ResourceAttributes.DEPLOYMENT_ENVIRONMENT: self.settings.environment,
        }
        attributes.update(self.settings.get_resource_attributes())
        return Resource.create(attributes)

    def _setup_tracing(self, resource: Resource) -> None:
        self.tracer_provider = TracerProvider(resource=resource)

        if self.settings.otel_traces_exporter == "otlp":
            exporter = OTLPSpanExporter(
                endpoint=_signal_endpoint(self.settings.otel_exporter_otlp_endpoint, "/v1/traces"),
                headers=self.settings.get_otlp_headers(),
            )
            self.tracer_provider.add_span_processor(BatchSpanProcessor(exporter))
            logger.info(f"OTLP trace exporter configured: {self.settings.otel_exporter_otlp_endpoint}")
        elif self.settings.otel_traces_exporter == "console":
            self.tracer_provider.add_span_processor(BatchSpanProcessor(ConsoleSpanExporter()))
            logger.info("Console trace exporter configured")

        trace.set_tracer_provider(self.tracer_provider)

    def _setup_metrics(self, resource: Resource) -> None:
        if self.settings.otel_metrics_exporter == "otlp":
            exporter = OTLPMetricExporter(
                endpoint=_signal_endpoint(self.settings.otel_exporter_otlp_endpoint, "/v1/metrics"),
                headers=self.settings.get_otlp_headers(),
            )
            reader = PeriodicExportingMetricReader(exporter, export_interval_millis=60000)
            self.meter_provider = MeterProvider(resource=resource, metric_readers=[reader])
        elif self.settings.otel_metrics_exporter == "console":
            reader = PeriodicExportingMetricReader(
                ConsoleMetricExporter(), export_interval_millis=60000
            )
            self.meter_provider = MeterProvider(resource=resource, metric_readers=[reader])
        else:
            self.meter_provider = MeterProvider(resource=resource)

        metrics.set_meter_provider(self.meter_provider)

    def record_duration(self, command: str, seconds: float, exit_code: int) -> None:
        """Record one command run on the duration histogram."""
        if self._duration is None:
            meter = metrics.get_meter("bjq")
            self._duration = meter.create_histogram(
                COMMAND_DURATION, unit="s", description="Wall time of one bjq command"
            )
        self._duration.record(seconds, {"command": command, "exit_code": exit_code})

    def shutdown(self) -> None:
        """Flush and shut down providers."""
        if self.tracer_provider:
            self.tracer_provider.shutdown()
        if self.meter_provider:
            self.meter_provider.shutdown()


def set_span_attributes(span: Any, **attributes: Any) -> None:
    """Set multiple attributes on a span; containers are JSON-encoded, None is skipped."""
    for key, value in attributes.items():
        if value is None:
            continue
        if isinstance(value, (dict, list, tuple)):
            span.set_attribute(key, json.dumps(value))
        elif isinstance(value, (bool, int, float, str)):
            span.set_attribute(key, value)
        else:
            span.set_attribute(key, str(value))
