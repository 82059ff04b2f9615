"""Short-time Fourier transform, tau-Wigner and Born-Jordan distributions."""

import logging

import numpy as np
from opentelemetry import trace

from bjq.core.errors import InputError
from bjq.models.grid import PhaseGrid, PhaseSpaceArray, Signal
from bjq.models.kernels import BJMultiplier, QuadratureRule
from bjq.services.phase_grid import (
    centered_fft,
    fourier2,
    inverse_fourier2,
    shift_samples,
    sinc,
)

logger = logging.getLogger(__name__)
tracer = trace.get_tracer(__name__)

DEFAULT_OVERSAMPLE = 8


def stft(f: Signal, window: Signal) -> PhaseSpaceArray:
    """
    Short-time Fourier transform V_phi f on the phase grid of f.

    Row j holds the Fourier transform of f * conj(window(. - x_j)), the window
    being shifted circularly.

    Raises:
        InputError: If the window vanishes identically
        GridMismatchError: If f and window live on different grids
    """
    f.grid.require_match(window.grid, "signal and window")
    if not np.any(window.values):
        raise InputError("STFT window is identically zero")

    n = f.grid.n_points
    shifts = np.arange(n) - n // 2
    # rows[j, :] = conj(window) rolled so that its center sits on x_j
    index = (np.arange(n)[None, :] - shifts[:, None]) % n
    products = f.values[None, :] * np.conj(window.values)[index]
    values = centered_fft(products, f.grid.spacing, axis=1)
    return PhaseSpaceArray(PhaseGrid.from_grid(f.grid), values)


def wigner_tau(
    f: Signal, g: Signal, tau: float, oversample: int = DEFAULT_OVERSAMPLE
) -> PhaseSpaceArray:
    """
    Cross tau-Wigner distribution W_tau(f, g) on the phase grid of f.

    W_tau(x, xi) = (2 pi)^(-1/2) dy sum_m f(x + tau y_m) conj(g(x - (1 - tau) y_m)) exp(-i y_m xi),
    with y running over the signal grid. Off-grid samples come from the
    trigonometric interpolant of a zero-padded spectrum.

    Args:
        f: First signal
        g: Second signal, conjugated
        tau: Quantization parameter (0 Kohn-Nirenberg, 1/2 Wigner)
        oversample: Zero-padding factor, at least 2 so that |x + tau y| <= 2 * half-width
            never wraps

    Returns:
        Distribution with rows indexed by x and columns by xi
    """
    f.grid.require_match(g.grid, "Wigner operands")
    if oversample < 2:
        raise InputError(f"wigner_tau needs oversample >= 2, got {oversample}")
    if not np.isfinite(tau):
        raise InputError("tau must be finite")

    grid = f.grid
    y = grid.points
    forward = shift_samples(f.values, tau * y, grid.spacing, oversample)
    backward = shift_samples(g.values, -(1.0 - tau) * y, grid.spacing, oversample)
    values = centered_fft(forward * np.conj(backward), grid.spacing, axis=1)
    return PhaseSpaceArray(PhaseGrid.from_grid(grid), values)


def wigner_bj(
    f: Signal,
    g: Signal,
    quad: QuadratureRule | None = None,
    oversample: int = DEFAULT_OVERSAMPLE,
) -> PhaseSpaceArray:
    """Born-Jordan distribution: quadrature average of wigner_tau over tau in [0, 1]."""
    quad = quad or QuadratureRule.gauss_legendre()
    with tracer.start_as_current_span("wigner_bj") as span:
        span.set_attribute("bjq.grid.n_points", f.grid.n_points)
        span.set_attribute("bjq.quad.nodes", len(quad))
        logger.debug(f"wigner_bj: N={f.grid.n_points}, nodes={len(quad)}, oversample={oversample}")
        values = quad.average(lambda t: wigner_tau(f, g, t, oversample).values)
    return PhaseSpaceArray(PhaseGrid.from_grid(f.grid), values)


def bj_multiplier(grid: PhaseGrid) -> BJMultiplier:
    """sinc(eta * y / 2) on a Fourier-domain grid (rows eta, columns y)."""
    eta, y = grid.mesh()
    return BJMultiplier(grid, sinc(0.5 * eta * y))


def apply_multiplier(a: PhaseSpaceArray, values: np.ndarray) -> PhaseSpaceArray:
    """Multiply the two-dimensional Fourier transform of `a` by `values` and transform back."""
    a_hat = fourier2(a)
    return inverse_fourier2(a_hat.with_values(a_hat.values * values))


def apply_bj_multiplier(a: PhaseSpaceArray) -> PhaseSpaceArray:
    """Convolve `a` with the Born-Jordan kernel, realized spectrally."""
    multiplier = bj_multiplier(a.grid.dual())
    result = apply_multiplier(a, multiplier.values)
    if np.isrealobj(a.values) or not np.any(a.values.imag):
        # A real even multiplier maps real arrays to real arrays
        result = result.with_values(result.values.real)
    return result


def wigner_bj_by_multiplier(
    f: Signal, g: Signal, oversample: int = DEFAULT_OVERSAMPLE
) -> PhaseSpaceArray:
    """Born-Jordan distribution as the Born-Jordan kernel applied to the Wigner distribution."""
    return apply_bj_multiplier(wigner_tau(f, g, 0.5, oversample))


def marginals(w: PhaseSpaceArray) -> tuple[Signal, Signal]:
    """
    Position and frequency marginals of a phase-space distribution.

    Returns:
        (sum_k W[:, k] * dxi on the x grid, sum_j W[j, :] * dx on the xi grid)
    """
    grid = w.grid
    position = w.values.sum(axis=1) * grid.xi_grid.spacing
    frequency = w.values.sum(axis=0) * grid.x_grid.spacing
    return Signal(grid.x_grid, position), Signal(grid.xi_grid, frequency)
