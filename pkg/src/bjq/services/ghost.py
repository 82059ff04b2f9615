"""Two-tone interference demo: Wigner cross terms against their Born-Jordan damping."""

import logging
from dataclasses import dataclass

import numpy as np

from bjq.core.errors import InputError
from bjq.models.grid import Grid, PhaseSpaceArray, Signal
from bjq.models.kernels import QuadratureRule
from bjq.schemas.reports import GhostReport
from bjq.services.phase_grid import gaussian, warn_on_tail
from bjq.services.transforms import DEFAULT_OVERSAMPLE, stft, wigner_bj, wigner_tau

logger = logging.getLogger(__name__)

MIN_SEPARATION = 4.0


@dataclass(frozen=True)
class GhostDemo:
    """Arrays and cross-term ratios of one demo run."""

    signal: Signal
    spectrogram: PhaseSpaceArray
    wigner: PhaseSpaceArray
    born_jordan: PhaseSpaceArray
    report: GhostReport


def two_tone(grid: Grid, omega1: float, omega2: float, sigma: float) -> Signal:
    """exp(-x^2 / (2 sigma^2)) (exp(i omega1 x) + exp(i omega2 x))."""
    x = grid.points
    envelope = np.exp(-(x**2) / (2.0 * sigma**2))
    return Signal(grid, envelope * (np.exp(1j * omega1 * x) + np.exp(1j * omega2 * x)))


def window_peak(w: PhaseSpaceArray, xi_center: float, half_width: float) -> float:
    """max |W| over |x| <= half_width, |xi - xi_center| <= half_width."""
    x = w.grid.x_grid.points
    xi = w.grid.xi_grid.points
    rows = np.abs(x) <= half_width
    cols = np.abs(xi - xi_center) <= half_width
    if not rows.any() or not cols.any():
        raise InputError("ratio window contains no grid points")
    return float(np.abs(w.values[np.ix_(rows, cols)]).max())


def cross_term_ratio(w: PhaseSpaceArray, omega1: float, omega2: float, sigma: float) -> float:
    """Peak near the midpoint frequency over the peak near omega1, both at x = 0."""
    half_width = 3.0 / sigma
    cross = window_peak(w, 0.5 * (omega1 + omega2), half_width)
    auto = window_peak(w, omega1, half_width)
    return cross / auto


def ghost_demo(
    omega1: float = -6.0,
    omega2: float = 6.0,
    sigma: float = 2.0,
    n_points: int = 512,
    spacing: float = 0.125,
    quad: QuadratureRule | None = None,
    oversample: int = DEFAULT_OVERSAMPLE,
) -> GhostDemo:
    """
    Build the two-tone signal and compare interference in its quadratic representations.

    Raises:
        InputError: If |omega2 - omega1| * sigma < 4 (tones not resolvable)
    """
    if abs(omega2 - omega1) * sigma < MIN_SEPARATION:
        raise InputError(
            f"tones are not resolvable: |omega2 - omega1| * sigma = {abs(omega2 - omega1) * sigma:g} < {MIN_SEPARATION:g}"
        )
    grid = Grid(n_points, spacing)
    f = two_tone(grid, omega1, omega2, sigma)
    warn_on_tail(f, "two-tone signal")

    logger.info(f"ghost demo: omega=({omega1:g}, {omega2:g}), sigma={sigma:g}, N={n_points}")
    window = gaussian(grid, width=sigma)
    spectrogram = stft(f, window)
    spectrogram = spectrogram.with_values(np.abs(spectrogram.values) ** 2)
    wigner = wigner_tau(f, f, 0.5, oversample)
    born_jordan = wigner_bj(f, f, quad, oversample)

    report = GhostReport(
        omega1=omega1,
        omega2=omega2,
        sigma=sigma,
        rho_wigner=cross_term_ratio(wigner, omega1, omega2, sigma),
        rho_born_jordan=cross_term_ratio(born_jordan, omega1, omega2, sigma),
    )
    logger.info(
        f"ghost demo: rho_W={report.rho_wigner:.4g}, rho_BJ={report.rho_born_jordan:.4g}, "
        f"ratio={report.suppression:.4g}"
    )
    return GhostDemo(f, spectrogram, wigner, born_jordan, report)
