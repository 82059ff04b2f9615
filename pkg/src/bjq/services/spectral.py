"""Singular values, Schatten norms, lower spectral bounds and decay diagnostics."""

import logging

import numpy as np
import scipy.linalg as sla
from opentelemetry import trace

from bjq.core.errors import InputError, NumericError
from bjq.models.grid import Grid, PhaseGrid, PhaseSpaceArray
from bjq.models.operator import MAX_OPERATOR_POINTS, OperatorMatrix, SchemeSpec, SingularSpectrum
from bjq.schemas.reports import DecayReport
from bjq.services.quantize import hermiticity_defect, quantize

logger = logging.getLogger(__name__)
tracer = trace.get_tracer(__name__)

HERMITICITY_TOLERANCE = 1e-8
DECAY_THRESHOLDS = (1e-1, 1e-2, 1e-3)
DOUBLING_INDICES = (8, 16, 32)
GARDING_WIDTH = 2.0
GARDING_SIZES = (128, 256)


def singular_values(matrix: OperatorMatrix) -> SingularSpectrum:
    """
    Singular values of M, largest first.

    The grid is uniform and dx is already folded into M, so the matrix SVD
    approximates the continuum singular values without reweighting.

    Raises:
        InputError: If N > 512
        NumericError: If M has non-finite entries
    """
    values = matrix.values
    if values.shape[0] > MAX_OPERATOR_POINTS:
        raise InputError(f"SVD is limited to N <= {MAX_OPERATOR_POINTS}")
    if not np.all(np.isfinite(values)):
        raise NumericError("operator has non-finite entries")
    with tracer.start_as_current_span("singular_values") as span:
        span.set_attribute("bjq.grid.n_points", values.shape[0])
        sigma = sla.svdvals(values)
    return SingularSpectrum(np.sort(sigma)[::-1])


def schatten_norm(s: SingularSpectrum, p: float) -> float:
    """l^p norm of the singular values; p = inf gives the operator norm."""
    if not p >= 1:
        raise InputError(f"Schatten norms need p >= 1, got {p}")
    if len(s) == 0:
        return 0.0
    if np.isinf(p):
        return float(s.values[0])
    return float(np.sum(s.values**p) ** (1.0 / p))


def min_eigenvalue_hermitian(matrix: OperatorMatrix) -> float:
    """
    Smallest eigenvalue of (M + M^H) / 2.

    Raises:
        InputError: If the relative Hermiticity defect of M exceeds 1e-8
    """
    defect = hermiticity_defect(matrix)
    if defect > HERMITICITY_TOLERANCE:
        raise InputError(
            f"operator is not self-adjoint (defect {defect:.3e}); refusing to symmetrize"
        )
    values = matrix.values
    hermitian = 0.5 * (values + values.conj().T)
    return float(sla.eigvalsh(hermitian, subset_by_index=[0, 0])[0])


def lowest_eigenvalues(matrix: OperatorMatrix, count: int) -> np.ndarray:
    """The `count` smallest eigenvalues of a self-adjoint operator, ascending."""
    defect = hermiticity_defect(matrix)
    if defect > HERMITICITY_TOLERANCE:
        raise InputError(f"operator is not self-adjoint (defect {defect:.3e})")
    values = matrix.values
    hermitian = 0.5 * (values + values.conj().T)
    return sla.eigvalsh(hermitian, subset_by_index=[0, count - 1])


def singular_decay_report(s: SingularSpectrum) -> DecayReport:
    """
    Where the singular values fall below 10%, 1% and 0.1% of the largest.

    Each threshold reports the first index below it (len(s) when never reached)
    and the share of sum(s) carried from that index on.
    """
    values = s.values
    total = float(values.sum())
    lead = float(values[0]) if values.size else 0.0
    indices: list[int] = []
    tails: list[float] = []
    for threshold in DECAY_THRESHOLDS:
        below = np.nonzero(values < threshold * lead)[0]
        index = int(below[0]) if below.size else int(values.size)
        indices.append(index)
        tails.append(float(values[index:].sum() / total) if total > 0 else 0.0)

    ratios: dict[int, float] = {}
    for k in DOUBLING_INDICES:
        if 2 * k < values.size and values[k] > 0:
            ratios[k] = float(values[2 * k] / values[k])
    return DecayReport(
        size=int(values.size),
        leading=lead,
        thresholds=list(DECAY_THRESHOLDS),
        indices=indices,
        tail_fractions=tails,
        doubling_ratios=ratios,
    )


def garding_symbol(grid: PhaseGrid, width: float = GARDING_WIDTH) -> PhaseSpaceArray:
    """
    x^2 xi^2 inside a Gaussian window of fixed width, held at 1 outside it.

    The window does not follow the grid, so every grid samples the same
    nonnegative symbol. Far from the window the operator is the identity and
    the bottom of the spectrum is an isolated eigenvalue.
    """
    if width <= 0:
        raise InputError(f"window width must be positive, got {width}")

    def symbol(x, xi):
        window = np.exp(-(x**2 + xi**2) / (2.0 * width**2))
        return window * x**2 * xi**2 + (1.0 - window)

    return grid.sample(symbol)


def garding_lower_bounds(
    sizes: tuple[int, ...] = GARDING_SIZES, width: float = GARDING_WIDTH
) -> list[float]:
    """
    Lowest eigenvalue of Op_BJ(garding_symbol) on grids of the given sizes.

    All grids share the spacing of the smallest self-dual one, so refining N
    only widens the x-axis and tightens the xi step.
    """
    spacing = float(np.sqrt(2.0 * np.pi / min(sizes)))
    lowest = []
    for n_points in sizes:
        grid = PhaseGrid.from_grid(Grid(n_points, spacing))
        matrix = quantize(garding_symbol(grid, width), SchemeSpec.born_jordan())
        lowest.append(min_eigenvalue_hermitian(matrix))
    logger.debug(f"garding lower bounds: {dict(zip(sizes, lowest, strict=True))}")
    return lowest
