"""Hormander-class seminorms for diagonal metrics and expansion-remainder scaling."""

import logging
from math import comb

import numpy as np
from scipy.optimize import minimize_scalar

from bjq.core.errors import InputError, ResolutionError
from bjq.models.grid import PhaseSpaceArray
from bjq.models.metric import Metric, WeightM
from bjq.schemas.reports import RemainderReport
from bjq.services.phase_grid import fourier2, interpolation_matrix, inverse_fourier2
from bjq.services.quantize import bj_to_weyl

logger = logging.getLogger(__name__)

MAX_SEMINORM_ORDER = 6
DEFAULT_DIRECTIONS = 64
REFINE_ITERATIONS = 40
GOLDEN = 0.5 * (np.sqrt(5.0) - 1.0)
INTERIOR_FRACTION = 0.5
DECAY_TOLERANCE = 1e-10
NOISE_FLOOR = 1e-10


def planck(metric: Metric, x: float, xi: float) -> float:
    """Planck function h_g(X) = 1 / (phi(X) psi(X)) of a diagonal metric."""
    phi, psi = metric.scales(np.asarray(x, float), np.asarray(xi, float))
    return float(1.0 / (phi * psi))


def dual_metric(metric: Metric, x, xi, z, zeta) -> np.ndarray:
    """Symplectic dual g^sigma_X(z, zeta) = psi(X)^2 z^2 + phi(X)^2 zeta^2."""
    phi, psi = metric.scales(np.asarray(x, float), np.asarray(xi, float))
    return (psi * z) ** 2 + (phi * zeta) ** 2


def _angular_sup(func, samples: int) -> float:
    """sup over theta in [0, 2 pi) of func(theta): grid scan refined by a bounded search."""
    thetas = np.linspace(0.0, 2.0 * np.pi, samples, endpoint=False)
    values = func(thetas)
    best = int(np.argmax(values))
    step = 2.0 * np.pi / samples
    center = thetas[best]
    refined = minimize_scalar(
        lambda t: -float(func(np.array([t]))[0]),
        bounds=(center - step, center + step),
        method="bounded",
        options={"xatol": 1e-12},
    )
    return max(float(values[best]), -float(refined.fun))


def planck_by_sampling(metric: Metric, x: float, xi: float, samples: int = 256) -> float:
    """
    Planck function from its defining suprema, without the diagonal closed form.

    g^sigma is recovered direction by direction as the sup of sigma(Y, Z)^2 over
    the g-unit circle, and h_g^2 as the sup of g(Z) / g^sigma(Z).
    """
    phi, psi = metric.scales(np.asarray(x, float), np.asarray(xi, float))
    phi, psi = float(phi), float(psi)

    def sigma_sup(direction: float) -> float:
        z, zeta = np.cos(direction), np.sin(direction)

        def symplectic(theta):
            # Y on the g-unit circle; sigma(Y, Z) = eta z - y zeta
            y, eta = phi * np.cos(theta), psi * np.sin(theta)
            return (eta * z - y * zeta) ** 2

        return _angular_sup(symplectic, samples)

    def ratio(directions):
        values = []
        for d in np.atleast_1d(directions):
            z, zeta = np.cos(d), np.sin(d)
            g_value = (z / phi) ** 2 + (zeta / psi) ** 2
            values.append(g_value / sigma_sup(float(d)))
        return np.array(values)

    return float(np.sqrt(_angular_sup(ratio, samples)))


def uncertainty_holds(metric: Metric, a: PhaseSpaceArray) -> bool:
    """h_g <= 1 at every grid point."""
    x, xi = a.grid.mesh()
    phi, psi = metric.scales(x, xi)
    return bool(np.all(1.0 / (phi * psi) <= 1.0 + 1e-12))


def slowly_varying_ratio(
    metric: Metric, rng: np.random.Generator, pairs: int = 200, c: float = 0.1, radius: float = 10.0
) -> tuple[float, float]:
    """
    Extreme ratios phi(X)/phi(Y) and psi(X)/psi(Y) over random pairs with g_X(X - Y) < c.

    Returns:
        (smallest ratio, largest ratio) across both scales
    """
    centers = rng.uniform(-radius, radius, size=(pairs, 2))
    phi, psi = metric.scales(centers[:, 0], centers[:, 1])
    angles = rng.uniform(0.0, 2.0 * np.pi, size=pairs)
    lengths = np.sqrt(c) * np.sqrt(rng.uniform(0.0, 1.0, size=pairs)) * 0.999
    # Points inside the g_X ball of radius sqrt(c)
    others_x = centers[:, 0] + lengths * phi * np.cos(angles)
    others_xi = centers[:, 1] + lengths * psi * np.sin(angles)
    phi_y, psi_y = metric.scales(others_x, others_xi)
    ratios = np.concatenate([phi / phi_y, psi / psi_y])
    return float(ratios.min()), float(ratios.max())


def _mixed_derivatives(a: PhaseSpaceArray, k: int) -> list[np.ndarray]:
    """d_x^i d_xi^(k-i) a for i = 0..k, computed spectrally."""
    a_hat = fourier2(a)
    eta, y = a_hat.grid.mesh()
    derivatives = []
    for i in range(k + 1):
        factor = (1j * eta) ** i * (1j * y) ** (k - i)
        derivatives.append(inverse_fourier2(a_hat.with_values(a_hat.values * factor)).values)
    return derivatives


def seminorm_k(
    a: PhaseSpaceArray, metric: Metric, k: int, directions: int = DEFAULT_DIRECTIONS
) -> tuple[PhaseSpaceArray, float]:
    """
    |a|_k^g(X) = sup over g_X-unit Y of |sum_i binom(k, i) y^i eta^(k-i) d_x^i d_xi^(k-i) a(X)|.

    The k directions are taken equal. Directions are sampled uniformly in angle
    on the g_X-unit ellipse and each point's best sample is refined by a
    golden-section search over the neighbouring samples.

    Returns:
        The field on the grid and its maximum over the inner half of each axis

    Raises:
        InputError: If k is negative or above 6
    """
    if not 0 <= k <= MAX_SEMINORM_ORDER:
        raise InputError(f"seminorm order must be in [0, {MAX_SEMINORM_ORDER}], got {k}")
    mask = a.grid.interior_mask(INTERIOR_FRACTION)
    if k == 0:
        field = np.abs(a.values)
    else:
        x, xi = a.grid.mesh()
        phi, psi = metric.scales(x, xi)
        derivatives = _mixed_derivatives(a, k)

        def directional(theta):
            dy, deta = phi * np.cos(theta), psi * np.sin(theta)
            return np.abs(
                sum(comb(k, i) * dy**i * deta ** (k - i) * derivatives[i] for i in range(k + 1))
            )

        step = 2.0 * np.pi / directions
        field = np.full(a.grid.shape, -1.0)
        best = np.zeros(a.grid.shape)
        for theta in np.arange(directions) * step:
            value = directional(theta)
            better = value > field
            field = np.where(better, value, field)
            best = np.where(better, theta, best)

        # golden-section search of every angular maximum inside its sampling bracket
        lo, hi = best - step, best + step
        for _ in range(REFINE_ITERATIONS):
            left, right = hi - GOLDEN * (hi - lo), lo + GOLDEN * (hi - lo)
            keep_left = directional(left) >= directional(right)
            hi = np.where(keep_left, right, hi)
            lo = np.where(keep_left, lo, left)
        field = np.maximum(field, directional(0.5 * (lo + hi)))
    result = PhaseSpaceArray(a.grid, field)
    return result, float(field[mask].max())


def class_norm(a: PhaseSpaceArray, metric: Metric, m: WeightM, order: int) -> float:
    """sum_{k=0}^{order} sup over the interior of |a|_k^g / m."""
    if not 0 <= order <= MAX_SEMINORM_ORDER:
        raise InputError(f"class norm order must be in [0, {MAX_SEMINORM_ORDER}], got {order}")
    x, xi = a.grid.mesh()
    weight = m(x, xi)
    mask = a.grid.interior_mask(INTERIOR_FRACTION)
    total = 0.0
    for k in range(order + 1):
        field, _ = seminorm_k(a, metric, k)
        total += float((field.values.real / weight)[mask].max())
    return total


def dilate(a: PhaseSpaceArray, lam: float) -> PhaseSpaceArray:
    """a(X / lam) by trigonometric interpolation along both axes."""
    grid = a.grid
    ex = interpolation_matrix(grid.x_grid, grid.x_grid.points / lam)
    exi = interpolation_matrix(grid.xi_grid, grid.xi_grid.points / lam)
    values = ex @ a.values @ exi.T
    if not np.any(a.values.imag):
        values = values.real
    return PhaseSpaceArray(grid, values)


def _check_resolved(a: PhaseSpaceArray, label: str) -> None:
    peak = a.max_abs()
    if peak == 0:
        return
    boundary = np.ones(a.grid.shape, dtype=bool)
    boundary[1:-1, 1:-1] = False
    edge = np.abs(a.values[boundary]).max()
    if edge > DECAY_TOLERANCE * peak:
        raise ResolutionError(
            f"{label} has not decayed at the grid boundary (relative {edge / peak:.2e})"
        )
    spectrum = fourier2(a)
    spectral_peak = spectrum.max_abs()
    spectral_edge = np.abs(spectrum.values[boundary]).max()
    if spectral_edge > DECAY_TOLERANCE * spectral_peak:
        raise ResolutionError(
            f"{label} is under-resolved by the grid (relative spectrum {spectral_edge / spectral_peak:.2e} at Nyquist)"
        )


def remainder_order(a: PhaseSpaceArray, lambdas, order: int) -> RemainderReport:
    """
    Decay rate of the truncated Born-Jordan expansion under dilation.

    For each lam the remainder r = sup over the interior of
    |bj_to_weyl(a_lam, multiplier) - bj_to_weyl(a_lam, expansion(order))| is
    computed for a_lam(X) = a(X / lam), and log r is fitted against log lam.
    The first omitted term scales as lam^(-2 * order).

    Raises:
        InputError: If order is not a positive even number or some lam < 2
        ResolutionError: If a dilated symbol is cut off by the grid or under-resolved
    """
    if order < 2 or order % 2:
        raise InputError(f"remainder order needs an even expansion order >= 2, got {order}")
    lambdas = [float(lam) for lam in lambdas]
    if len(lambdas) < 2 or min(lambdas) < 2.0:
        raise InputError("need at least two dilation factors, each >= 2")

    mask = a.grid.interior_mask(INTERIOR_FRACTION)
    dilated = [dilate(a, lam) for lam in lambdas]
    remainders = []
    for a_lam in dilated:
        exact = bj_to_weyl(a_lam, "multiplier")
        truncated = bj_to_weyl(a_lam, "expansion", order=order)
        remainders.append((exact - truncated).max_abs(mask))
    scale = max(a_lam.max_abs() for a_lam in dilated)
    logger.debug(f"remainder_order: lambdas={lambdas}, remainders={remainders}")

    if max(remainders) < NOISE_FLOOR * max(scale, np.finfo(float).tiny):
        logger.info("expansion is exact for this symbol; slope not fitted")
        return RemainderReport(
            order=order, lambdas=lambdas, remainders=remainders, slope=None, degenerate=True
        )

    _check_resolved(dilated[int(np.argmax(lambdas))], f"symbol dilated by {max(lambdas):g}")
    _check_resolved(dilated[int(np.argmin(lambdas))], f"symbol dilated by {min(lambdas):g}")
    slope = float(np.polyfit(np.log(lambdas), np.log(remainders), 1)[0])
    return RemainderReport(
        order=order, lambdas=lambdas, remainders=remainders, slope=slope, degenerate=False
    )
