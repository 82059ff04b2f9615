"""Fourier conventions, generators and interpolation on centered grids."""

import logging
from typing import Literal

import numpy as np
import scipy.fft as sfft
from scipy.special import erfc

from bjq.config import fft_workers
from bjq.core.errors import InputError, ResolutionError
from bjq.models.grid import Grid, PhaseGrid, PhaseSpaceArray, Signal

logger = logging.getLogger(__name__)

INV_SQRT_2PI = 1.0 / np.sqrt(2.0 * np.pi)
TAIL_TOLERANCE = 1e-10
MAX_HERMITE_ORDER = 20


def make_centered_grid(n_points: int, spacing: float) -> Grid:
    """
    Build the grid x_j = (j - N/2) * spacing.

    Args:
        n_points: Even number of samples, at least 8
        spacing: Sample spacing dx

    Returns:
        Centered grid whose dual spacing is 2*pi / (N * dx)

    Raises:
        InputError: If n_points is odd or below 8
    """
    return Grid(n_points, spacing)


def centered_fft(values: np.ndarray, spacing: float, axis: int = -1) -> np.ndarray:
    """(2*pi)^(-1/2) * dx * sum_n f_n exp(-i x_n xi_k) along `axis`, both grids centered."""
    shifted = sfft.ifftshift(values, axes=axis)
    spectrum = sfft.fft(shifted, axis=axis, workers=fft_workers())
    return sfft.fftshift(spectrum, axes=axis) * (spacing * INV_SQRT_2PI)


def centered_ifft(values: np.ndarray, spacing: float, axis: int = -1) -> np.ndarray:
    """Exact inverse of centered_fft; `spacing` is the frequency spacing of `values`."""
    n = values.shape[axis]
    shifted = sfft.ifftshift(values, axes=axis)
    samples = sfft.ifft(shifted, axis=axis, workers=fft_workers())
    return sfft.fftshift(samples, axes=axis) * (n * spacing * INV_SQRT_2PI)


def fourier(f: Signal, direction: Literal["forward", "inverse"] = "forward") -> Signal:
    """
    Unitary Fourier transform with angular frequency.

    Forward maps samples on the grid to samples on its dual grid; inverse maps
    back. Both directions are exact algebraic inverses of each other.
    """
    match direction:
        case "forward":
            return Signal(f.grid.dual(), centered_fft(f.values, f.grid.spacing))
        case "inverse":
            return Signal(f.grid.dual(), centered_ifft(f.values, f.grid.spacing))
    raise InputError(f"unknown Fourier direction {direction!r}")


def fourier2(a: PhaseSpaceArray) -> PhaseSpaceArray:
    """Forward transform on both axes: x -> eta, xi -> y."""
    grid = a.grid
    values = centered_fft(a.values, grid.x_grid.spacing, axis=0)
    values = centered_fft(values, grid.xi_grid.spacing, axis=1)
    return PhaseSpaceArray(grid.dual(), values)


def inverse_fourier2(a_hat: PhaseSpaceArray) -> PhaseSpaceArray:
    grid = a_hat.grid
    values = centered_ifft(a_hat.values, grid.x_grid.spacing, axis=0)
    values = centered_ifft(values, grid.xi_grid.spacing, axis=1)
    return PhaseSpaceArray(grid.dual(), values)


def parity_flip(values: np.ndarray) -> np.ndarray:
    """f(x) -> f(-x) on a centered even grid; x_0 = -N*dx/2 maps to itself by periodicity."""
    return np.roll(values[::-1], 1)


def _hermite_table(n: int, x: np.ndarray) -> np.ndarray:
    """Rows psi_0..psi_n at x from the normalized three-term recurrence."""
    table = np.empty((n + 1,) + np.shape(x))
    table[0] = np.pi**-0.25 * np.exp(-0.5 * x**2)
    if n >= 1:
        table[1] = np.sqrt(2.0) * x * table[0]
    for k in range(1, n):
        table[k + 1] = np.sqrt(2.0 / (k + 1)) * x * table[k] - np.sqrt(k / (k + 1)) * table[k - 1]
    return table


def hermite(n: int, grid: Grid) -> Signal:
    """
    L2-normalized Hermite function psi_n sampled on `grid`.

    Args:
        n: Order, 0 <= n <= 20
        grid: Sampling grid

    Returns:
        Samples of H_n(x) exp(-x^2/2) / sqrt(2^n n! sqrt(pi))

    Raises:
        InputError: If n is negative or above 20
        ResolutionError: If psi_n is not negligible at the edge of the grid
            or of its dual grid
    """
    if not 0 <= n <= MAX_HERMITE_ORDER:
        raise InputError(f"hermite order must be in [0, {MAX_HERMITE_ORDER}], got {n}")

    # psi_n is its own Fourier transform up to a phase, so the frequency edge
    # is checked with the same profile.
    edges = np.array([grid.half_width, np.pi / grid.spacing])
    tail = np.abs(_hermite_table(n, edges)[n]).max()
    if tail > TAIL_TOLERANCE:
        raise ResolutionError(
            f"hermite order {n} is not resolved on N={grid.n_points}, dx={grid.spacing} "
            f"(edge magnitude {tail:.3e})"
        )
    return Signal(grid, _hermite_table(n, grid.points)[n])


def gaussian(grid: Grid, center: float = 0.0, width: float = 1.0, frequency: float = 0.0) -> Signal:
    """Normalized Gaussian wave packet centered at `center` with carrier `frequency`."""
    x = grid.points
    values = (np.pi * width**2) ** -0.25 * np.exp(
        -0.5 * ((x - center) / width) ** 2 + 1j * frequency * x
    )
    return Signal(grid, values)


def tail_mass(f: Signal, edge_fraction: float = 0.05) -> float:
    """Largest magnitude within `edge_fraction` of the grid boundary, relative to the peak."""
    peak = np.abs(f.values).max()
    if peak == 0:
        return 0.0
    edge = ~f.grid.interior_mask(1.0 - 2.0 * edge_fraction)
    return float(np.abs(f.values[edge]).max() / peak)


def warn_on_tail(f: Signal, label: str) -> None:
    mass = tail_mass(f)
    if mass > TAIL_TOLERANCE:
        logger.warning(f"{label}: relative magnitude {mass:.2e} near the grid edge, expect wrap-around")


def sinc(t):
    """sin(t)/t with the value 1 at t = 0; a short series is used for |t| < 1e-4."""
    t = np.asarray(t, dtype=float)
    small = np.abs(t) < 1e-4
    safe = np.where(small, 1.0, t)
    t2 = t * t
    result = np.where(small, 1.0 - t2 / 6.0 + t2 * t2 / 120.0, np.sin(safe) / safe)
    return result if result.ndim else float(result)


def gaussian_cutoff(grid: PhaseGrid, fraction: float = 0.25) -> PhaseSpaceArray:
    """exp(-x^2/(2 sx^2) - xi^2/(2 sxi^2)) with s = fraction * half-width on each axis."""
    if fraction <= 0:
        raise InputError(f"cutoff fraction must be positive, got {fraction}")
    sx = fraction * grid.x_grid.half_width
    sxi = fraction * grid.xi_grid.half_width
    return grid.sample(lambda x, xi: np.exp(-0.5 * (x / sx) ** 2 - 0.5 * (xi / sxi) ** 2))


def plateau_profile(grid: Grid) -> np.ndarray:
    """1 on the inner 75% of the axis with erfc edges of width half-width/20."""
    half = grid.half_width
    center, width = 0.75 * half, half / 20.0
    return 0.5 * erfc((np.abs(grid.points) - center) / width)


def plateau_cutoff(
    grid: PhaseGrid, axes: Literal["both", "x", "xi"] = "both"
) -> PhaseSpaceArray:
    """
    Smooth cutoff equal to 1 (within 1e-12) on the inner half of each selected axis.

    Polynomial symbols multiplied by it keep their exact values on the grid
    interior while vanishing at the boundary.
    """
    nx, nxi = grid.shape
    px = plateau_profile(grid.x_grid) if axes in ("both", "x") else np.ones(nx)
    pxi = plateau_profile(grid.xi_grid) if axes in ("both", "xi") else np.ones(nxi)
    return PhaseSpaceArray(grid, np.outer(px, pxi))


def shift_samples(
    values: np.ndarray, shifts: np.ndarray, spacing: float, oversample: int = 1
) -> np.ndarray:
    """
    Evaluate sampled functions at shifted positions: out[j, m] = f_m(x_j + shifts[m]).

    `values` is either one vector shared by every shift or an (N, M) array with
    one column per shift. The band-limited trigonometric interpolant is used,
    on a spectrum zero-padded to oversample*N samples when oversample > 1
    (arguments beyond the grid then read the padding instead of the periodic
    image). Whole-sample shifts use index arithmetic instead.
    """
    values = np.asarray(values, dtype=np.complex128)
    columns = values[:, None] if values.ndim == 1 else values
    shifts = np.asarray(shifts, dtype=float)
    if oversample < 1:
        raise InputError(f"oversample must be a positive integer, got {oversample}")

    n = columns.shape[0]
    length = oversample * n
    pad = (length - n) // 2
    padded = np.zeros((length, columns.shape[1]), dtype=np.complex128)
    padded[pad : pad + n] = columns

    steps = shifts / spacing
    whole = np.rint(steps)
    if np.all(np.abs(steps - whole) < 1e-12):
        rows = (pad + np.arange(n)[:, None] + whole.astype(int)[None, :]) % length
        cols = np.zeros_like(rows) if columns.shape[1] == 1 else np.arange(shifts.size)[None, :]
        return padded[rows, cols]

    spectrum = sfft.fft(padded, axis=0, workers=fft_workers())
    freqs = 2.0 * np.pi * sfft.fftfreq(length, d=spacing)
    phase = np.exp(1j * np.outer(freqs, shifts))
    # Nyquist bin split evenly between +/- the Nyquist frequency
    nyquist = length // 2
    phase[nyquist] = np.cos(freqs[nyquist] * shifts)
    shifted = sfft.ifft(spectrum * phase, axis=0, workers=fft_workers())
    return shifted[pad : pad + n]


def interpolation_matrix(grid: Grid, targets: np.ndarray) -> np.ndarray:
    """Matrix E with (E f)_i = trigonometric interpolant of f at targets[i]."""
    n = grid.n_points
    freqs = 2.0 * np.pi * sfft.fftfreq(n, d=grid.spacing)
    phase = np.exp(1j * np.outer(targets - grid.origin, freqs))
    nyquist = n // 2
    phase[:, nyquist] = np.cos(freqs[nyquist] * (targets - grid.origin))
    dft = np.exp(-2j * np.pi * np.outer(np.arange(n), np.arange(n)) / n)
    return phase @ dft / n
