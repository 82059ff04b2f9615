"""Console entry point."""

import logging
import sys
import time
from collections.abc import Sequence
from typing import TextIO

from opentelemetry import trace
from pydantic import ValidationError

from bjq.cli import build_parser, dispatch
from bjq.config import Settings, get_settings
from bjq.core.errors import BJQError, InputError
from bjq.core.logging import setup_logging
from bjq.schemas.run_config import RunConfig
from bjq.telemetry import TelemetryManager, set_span_attributes

logger = logging.getLogger(__name__)
tracer = trace.get_tracer(__name__)


def _config_from_args(args, settings: Settings) -> RunConfig:
    """Settings supply the grid and quadrature defaults; flags given on the command line win."""
    values = {
        "n": settings.grid_points,
        "dx": settings.grid_spacing,
        "nodes": settings.quad_nodes,
        "cutoff": settings.cutoff_fraction,
    }
    values.update({key: value for key, value in vars(args).items() if value is not None})
    return RunConfig(**values)


def _first_error(error: ValidationError) -> str:
    first = error.errors()[0]
    location = ".".join(str(part) for part in first["loc"])
    return f"{location}: {first['msg']}" if location else first["msg"]


def run(
    argv: Sequence[str] | None = None,
    settings: Settings | None = None,
    stdout: TextIO | None = None,
) -> int:
    """
    Parse arguments, run one command and return its exit code.

    Returns:
        0 on success, 2 on usage or input errors, 3 on numeric failures
    """
    settings = settings or get_settings()
    stdout = stdout or sys.stdout
    setup_logging(settings)
    telemetry = TelemetryManager(settings)
    telemetry.setup()

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        # --help and --version exit 0, usage errors exit 2
        telemetry.shutdown()
        return int(e.code or 0)

    command = args.command
    started = time.perf_counter()
    exit_code = 0
    with tracer.start_as_current_span(f"bjq {command}") as span:
        try:
            config = _config_from_args(args, settings)
            set_span_attributes(span, **{"bjq.command": command, "bjq.grid.n_points": config.n})
            logger.info(f"{command}: started")
            exit_code = dispatch(config, settings, stdout)
            logger.info(f"{command}: finished in {time.perf_counter() - started:.3f}s")
        except ValidationError as e:
            exit_code = InputError.exit_code
            print(f"bjq {command}: {_first_error(e)}", file=sys.stderr)
        except BJQError as e:
            exit_code = e.exit_code
            print(f"bjq {command}: {e}", file=sys.stderr)
        except OSError as e:
            exit_code = InputError.exit_code
            print(f"bjq {command}: {e}", file=sys.stderr)
        except Exception:
            exit_code = BJQError.exit_code
            logger.exception(f"{command}: unexpected failure")
        span.set_attribute("bjq.exit_code", exit_code)

    telemetry.record_duration(command, time.perf_counter() - started, exit_code)
    telemetry.shutdown()
    return exit_code


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
