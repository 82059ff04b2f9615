"""Command handlers: read inputs, call the services, write outputs and a report."""

import logging
from collections.abc import Callable
from typing import TextIO

import numpy as np

from bjq import formats
from bjq.cli.selfcheck import run_selfcheck
from bjq.config import Settings
from bjq.core.errors import InputError, NumericError
from bjq.models.gabor import WeightSpec
from bjq.models.grid import Grid, PhaseGrid, PhaseSpaceArray
from bjq.models.kernels import QuadratureRule
from bjq.models.metric import MetricPreset
from bjq.models.operator import SchemeSpec
from bjq.schemas.run_config import Command, RunConfig
from bjq.services.gabor import GaborSystem, frame_report, gabor_analyze, mixed_norm
from bjq.services.ghost import ghost_demo
from bjq.services.phase_grid import gaussian, gaussian_cutoff, warn_on_tail
from bjq.services.quantize import bj_to_weyl, quantize
from bjq.services.spectral import schatten_norm, singular_decay_report, singular_values
from bjq.services.symclass import remainder_order, seminorm_k
from bjq.services.transforms import stft, wigner_bj, wigner_tau

logger = logging.getLogger(__name__)

# Default symbol for remainder-order: a unit Gaussian bump on a wide grid
BUMP_POINTS = 256
BUMP_SPACING = 0.5

Handler = Callable[[RunConfig, Settings, TextIO], int]


def _fmt(value: float) -> str:
    return format(float(value), ".17g")


def _emit(stream: TextIO, key: str, value) -> None:
    if isinstance(value, float | np.floating):
        value = _fmt(value)
    stream.write(f"{key} {value}\n")


def effective_oversample(config: RunConfig, settings: Settings) -> int:
    """Transforms default to the configured oversample, quantization to periodic interpolation."""
    if config.oversample is not None:
        return config.oversample
    return 1 if config.command == Command.QUANTIZE else settings.oversample


def input_grid(config: RunConfig) -> Grid:
    """Signal grid of the command's main input file, or the configured grid without one."""
    if config.symbol:
        return formats.read_psf_grid(config.symbol).x_grid
    if config.operator:
        return formats.read_opm_grid(config.operator)
    if config.input:
        return formats.read_signal_csv(config.input).grid
    return Grid(config.n, config.dx)


def write_header(config: RunConfig, settings: Settings, stream: TextIO) -> None:
    grid = input_grid(config)
    stream.write(
        f"# bjq {config.command.value} n={grid.n_points} dx={_fmt(grid.spacing)} "
        f"nodes={config.nodes} "
        f"oversample={effective_oversample(config, settings)} cutoff={_fmt(config.cutoff)}\n"
    )


def _cut(a: PhaseSpaceArray, fraction: float) -> PhaseSpaceArray:
    if fraction == 0:
        return a
    return a * gaussian_cutoff(a.grid, fraction)


def handle_transform(config: RunConfig, settings: Settings, stream: TextIO) -> int:
    f = formats.read_signal_csv(config.input)
    warn_on_tail(f, str(config.input))
    oversample = effective_oversample(config, settings)
    match config.kind:
        case "stft":
            window = formats.read_signal_csv(config.window) if config.window else gaussian(f.grid)
            result = stft(f, window)
        case "wigner":
            result = wigner_tau(f, f, config.tau, oversample)
        case _:
            result = wigner_bj(f, f, QuadratureRule.gauss_legendre(config.nodes), oversample)
    formats.write_psf(config.out, result)
    _emit(stream, "kind", config.kind)
    _emit(stream, "shape", f"{result.grid.shape[0]}x{result.grid.shape[1]}")
    _emit(stream, "max_abs", result.max_abs())
    return 0


def _scheme(config: RunConfig) -> SchemeSpec:
    match config.scheme:
        case "weyl":
            return SchemeSpec.weyl()
        case "kn":
            return SchemeSpec.kohn_nirenberg()
        case "shubin":
            return SchemeSpec.shubin(config.tau)
    return SchemeSpec.born_jordan(QuadratureRule.gauss_legendre(config.nodes))


def handle_quantize(config: RunConfig, settings: Settings, stream: TextIO) -> int:
    a = _cut(formats.read_psf(config.symbol), config.cutoff)
    scheme = _scheme(config)
    matrix = quantize(a, scheme, effective_oversample(config, settings))
    formats.write_opm(config.out, matrix)
    _emit(stream, "scheme", scheme.label)
    _emit(stream, "n", matrix.grid.n_points)
    _emit(stream, "operator_norm", matrix.operator_norm())
    return 0


def handle_apply(config: RunConfig, settings: Settings, stream: TextIO) -> int:
    matrix = formats.read_opm(config.operator)
    f = formats.read_signal_csv(config.input)
    result = matrix.apply(f)
    formats.write_signal_csv(config.out, result)
    _emit(stream, "norm_in", f.norm())
    _emit(stream, "norm_out", result.norm())
    return 0


def handle_convert(config: RunConfig, settings: Settings, stream: TextIO) -> int:
    a = _cut(formats.read_psf(config.symbol), config.cutoff)
    b = bj_to_weyl(
        a,
        config.method,
        order=config.order,
        quad=QuadratureRule.gauss_legendre(config.nodes),
    )
    formats.write_psf(config.out, b)
    _emit(stream, "method", config.method)
    _emit(stream, "max_abs_difference", (b - a).max_abs())
    return 0


def handle_schatten(config: RunConfig, settings: Settings, stream: TextIO) -> int:
    matrix = formats.read_opm(config.operator)
    s = singular_values(matrix)
    report = singular_decay_report(s)
    if config.out:
        formats.write_spectrum_csv(config.out, s)
    _emit(stream, f"schatten_p{config.p:g}", schatten_norm(s, config.p))
    _emit(stream, "leading", report.leading)
    for threshold, index, tail in zip(
        report.thresholds, report.indices, report.tail_fractions, strict=True
    ):
        _emit(stream, f"below_{threshold:g}", f"{index} tail={_fmt(tail)}")
    for k, ratio in report.doubling_ratios.items():
        _emit(stream, f"ratio_s{2 * k}_s{k}", ratio)
    return 0


def handle_gabor_norm(config: RunConfig, settings: Settings, stream: TextIO) -> int:
    a = formats.read_psf(config.symbol)
    system = GaborSystem(a.grid)
    coefficients = gabor_analyze(a, system)
    if config.dump:
        formats.write_coefficients_csv(config.dump, coefficients)
    frame = frame_report(system)
    _emit(stream, "frame_lower", frame.lower)
    _emit(stream, "frame_upper", frame.upper)
    _emit(stream, "redundancy", frame.redundancy)
    _emit(
        stream,
        f"norm_p{config.p:g}_q{config.q:g}_s{config.s:g}",
        mixed_norm(coefficients, config.p, config.q, WeightSpec(config.s)),
    )
    return 0


def handle_seminorm(config: RunConfig, settings: Settings, stream: TextIO) -> int:
    a = formats.read_psf(config.symbol)
    metric = MetricPreset(config.metric, config.rho, config.delta).metric()
    field, interior_max = seminorm_k(a, metric, config.k)
    if config.out:
        formats.write_psf(config.out, field)
    _emit(stream, "metric", metric.name)
    _emit(stream, f"seminorm_k{config.k}", interior_max)
    return 0


def _default_bump() -> PhaseSpaceArray:
    axis = Grid(BUMP_POINTS, BUMP_SPACING)
    return PhaseGrid(axis, axis).sample(lambda x, xi: np.exp(-0.5 * (x**2 + xi**2)))


def handle_remainder_order(config: RunConfig, settings: Settings, stream: TextIO) -> int:
    a = formats.read_psf(config.symbol) if config.symbol else _default_bump()
    report = remainder_order(a, config.lambdas, config.order)
    rows: list[tuple[str, object]] = [("order", report.order)]
    for lam, r in zip(report.lambdas, report.remainders, strict=True):
        rows.append((f"remainder_{lam:g}", r))
    rows.append(("slope", "degenerate" if report.slope is None else report.slope))
    rows.append(("expected_slope", report.expected_slope))
    if config.out:
        formats.write_report_csv(config.out, rows)
    for key, value in rows:
        _emit(stream, key, value)
    return 0


def handle_ghost_demo(config: RunConfig, settings: Settings, stream: TextIO) -> int:
    demo = ghost_demo(
        config.omega1,
        config.omega2,
        config.sigma,
        n_points=config.n,
        spacing=config.dx,
        quad=QuadratureRule.gauss_legendre(config.nodes),
        oversample=effective_oversample(config, settings),
    )
    out_dir = config.out_dir
    out_dir.mkdir(parents=True, exist_ok=True)
    formats.write_psf(out_dir / "spectrogram.psf", demo.spectrogram)
    formats.write_psf(out_dir / "wigner.psf", demo.wigner)
    formats.write_psf(out_dir / "born_jordan.psf", demo.born_jordan)
    formats.write_signal_csv(out_dir / "signal.csv", demo.signal)
    report = demo.report
    rows: list[tuple[str, object]] = [
        ("omega1", report.omega1),
        ("omega2", report.omega2),
        ("sigma", report.sigma),
        ("rho_wigner", report.rho_wigner),
        ("rho_born_jordan", report.rho_born_jordan),
        ("suppression", report.suppression),
    ]
    formats.write_report_csv(out_dir / "ghost_report.csv", rows)
    for key, value in rows:
        _emit(stream, key, value)
    return 0


def handle_selfcheck(config: RunConfig, settings: Settings, stream: TextIO) -> int:
    results = run_selfcheck()
    width = max(len(result.name) for result in results)
    for result in results:
        status = "PASS" if result.passed else "FAIL"
        stream.write(f"{result.name:<{width}} | {status} | {result.detail}\n")
    failed = [result.name for result in results if not result.passed]
    if failed:
        logger.error(f"selfcheck failed: {', '.join(failed)}")
        return NumericError.exit_code
    return 0


HANDLERS: dict[Command, Handler] = {
    Command.TRANSFORM: handle_transform,
    Command.QUANTIZE: handle_quantize,
    Command.APPLY: handle_apply,
    Command.CONVERT: handle_convert,
    Command.SCHATTEN: handle_schatten,
    Command.GABOR_NORM: handle_gabor_norm,
    Command.SEMINORM: handle_seminorm,
    Command.REMAINDER_ORDER: handle_remainder_order,
    Command.GHOST_DEMO: handle_ghost_demo,
    Command.SELFCHECK: handle_selfcheck,
}


def dispatch(config: RunConfig, settings: Settings, stream: TextIO) -> int:
    """Print the report header and route the command to its handler."""
    handler = HANDLERS.get(config.command)
    if handler is None:
        raise InputError(f"unknown command {config.command!r}")
    write_header(config, settings, stream)
    return handler(config, settings, stream)
