"""Gabor frames on the discrete phase plane and weighted mixed norms of their coefficients."""

import logging
from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.fft as sfft
from opentelemetry import trace
from scipy.sparse.linalg import LinearOperator, cg

from bjq.config import fft_workers
from bjq.core.errors import InputError, NumericError
from bjq.models.gabor import GaborCoefficients, Lattice, WeightSpec
from bjq.models.grid import PhaseGrid, PhaseSpaceArray
from bjq.services.phase_grid import centered_fft

logger = logging.getLogger(__name__)
tracer = trace.get_tracer(__name__)

MAX_CONDITION = 1e6
CG_RTOL = 1e-12


def gaussian_window(base: PhaseGrid, sigma: float = 1.0) -> PhaseSpaceArray:
    """L2-normalized window (1 / (sqrt(pi) sigma)) exp(-|X|^2 / (2 sigma^2))."""
    return base.sample(
        lambda x, xi: np.exp(-(x**2 + xi**2) / (2.0 * sigma**2)) / (np.sqrt(np.pi) * sigma)
    )


def default_eps() -> float:
    """Half the critical step sqrt(2 pi): redundancy 4 per phase plane."""
    return 0.5 * np.sqrt(2.0 * np.pi)


def make_lattice(base: PhaseGrid, eps: float) -> Lattice:
    """
    Lattice eps * Z^2 on a self-dual base grid.

    Raises:
        InputError: If eps is not a whole number of grid cells dividing N into an
            even count of at least 4 lattice points
    """
    x_grid, xi_grid = base.x_grid, base.xi_grid
    n = x_grid.n_points
    if not (x_grid.matches(xi_grid) and x_grid.matches(x_grid.dual())):
        raise InputError("Gabor systems need the self-dual base grid dx = dxi = sqrt(2 pi / N)")
    ratio = eps / x_grid.spacing
    step = int(round(ratio))
    if step < 1 or abs(ratio - step) > 1e-9 or n % step:
        raise InputError(
            f"lattice step {eps} is incommensurate with the grid spacing {x_grid.spacing}"
        )
    size = n // step
    if size < 4 or size % 2:
        raise InputError(f"lattice needs an even number >= 4 of points per axis, got {size}")
    return Lattice(size=size, step=step, spacing=x_grid.spacing)


def _roll_to(window: np.ndarray, ix: int, ixi: int, center: int) -> np.ndarray:
    """window(X - j) for the lattice point j sitting at grid indices (ix, ixi)."""
    return np.roll(window, (ix - center, ixi - center), axis=(0, 1))


def _analysis(values: np.ndarray, window: np.ndarray, base: PhaseGrid, lattice: Lattice):
    """
    V[jx, jxi, w_eta, w_y] = (2pi)^-1 dx dxi sum_X values(X) conj(window(X - j)) exp(-i <X, w>).

    Both j and w run over lattice points.
    """
    center = base.x_grid.n_points // 2
    idx = lattice.grid_indices
    conj_window = np.conj(window)
    out = np.empty((lattice.size,) * 4, dtype=np.complex128)
    for a, ix in enumerate(idx):
        for b, ixi in enumerate(idx):
            product = values * _roll_to(conj_window, ix, ixi, center)
            spectrum = centered_fft(product, base.x_grid.spacing, axis=0)
            spectrum = centered_fft(spectrum, base.xi_grid.spacing, axis=1)
            out[a, b] = spectrum[np.ix_(idx, idx)]
    return out


def _synthesis(coeffs: np.ndarray, window: np.ndarray, base: PhaseGrid, lattice: Lattice):
    """sum_j sum_w C[j, w] window(X - j) exp(i <X, w>) with C laid out as in _analysis."""
    n = base.x_grid.n_points
    center = n // 2
    size = lattice.size
    # Over lattice frequencies exp(i <X, w>) is a K-point inverse DFT, K-periodic in the sample index
    waves = sfft.ifft2(sfft.ifftshift(coeffs, axes=(2, 3)), axes=(2, 3), workers=fft_workers())
    waves = waves * (size * size)
    residue = (np.arange(n) - center) % size
    waves = waves[:, :, residue][:, :, :, residue]

    result = np.zeros((n, n), dtype=np.complex128)
    for a, ix in enumerate(lattice.grid_indices):
        for b, ixi in enumerate(lattice.grid_indices):
            result += waves[a, b] * _roll_to(window, ix, ixi, center)
    return result


class FrameOperator:
    """
    Frame operator S of a Gaussian-type Gabor system in Walnut form.

    S couples samples whose indices differ by multiples of the lattice size K on
    each axis, so it splits into K^2 Hermitian blocks of size r^2 x r^2 with r
    the lattice step in cells.
    """

    def __init__(self, window: PhaseSpaceArray, lattice: Lattice):
        self.lattice = lattice
        self.n = window.grid.x_grid.n_points
        self.scale = window.grid.cell_area / (2.0 * np.pi) * lattice.size**2
        self.blocks = self._build_blocks(window.values)

    def _build_blocks(self, window: np.ndarray) -> np.ndarray:
        n, size, step = self.n, self.lattice.size, self.lattice.step
        # correlations[qx, qxi] = G_q(X) = sum_j window(X - j) conj(window(X + qK - j))
        correlations = np.empty((step, step, n, n), dtype=np.complex128)
        for qx in range(step):
            for qxi in range(step):
                product = window * np.conj(
                    np.roll(window, (-qx * size, -qxi * size), axis=(0, 1))
                )
                periodic = product.reshape(size, step, size, step).sum(axis=(0, 2))
                correlations[qx, qxi] = np.tile(periodic, (size, size))

        # (qx, qxi, nx, x0, nxi, xi0) -> (x0, xi0, qx, qxi, nx, nxi)
        by_orbit = correlations.reshape(step, step, step, size, step, size).transpose(
            3, 5, 0, 1, 2, 4
        )
        nx, nxi, mx, mxi = np.meshgrid(*(np.arange(step),) * 4, indexing="ij")
        blocks = by_orbit[:, :, (mx - nx) % step, (mxi - nxi) % step, nx, nxi]
        return self.scale * blocks.reshape(size, size, step * step, step * step)

    def _to_orbits(self, values: np.ndarray) -> np.ndarray:
        size, step = self.lattice.size, self.lattice.step
        return values.reshape(step, size, step, size).transpose(1, 3, 0, 2).reshape(
            size, size, step * step
        )

    def _from_orbits(self, orbits: np.ndarray) -> np.ndarray:
        size, step = self.lattice.size, self.lattice.step
        return orbits.reshape(size, size, step, step).transpose(2, 0, 3, 1).reshape(self.n, self.n)

    def apply(self, values: np.ndarray) -> np.ndarray:
        orbits = self._to_orbits(values)
        return self._from_orbits(np.einsum("abij,abj->abi", self.blocks, orbits))

    @cached_property
    def spectrum(self) -> tuple[np.ndarray, np.ndarray]:
        """Eigen-decomposition of every block."""
        return np.linalg.eigh(self.blocks)

    def bounds(self) -> tuple[float, float]:
        """Frame bounds A, B with A ||a||^2 <= sum |c|^2 <= B ||a||^2."""
        eigenvalues = self.spectrum[0]
        return float(eigenvalues.min() / (2.0 * np.pi)), float(eigenvalues.max() / (2.0 * np.pi))

    def condition(self) -> float:
        eigenvalues = self.spectrum[0]
        low = eigenvalues.min()
        return float(np.inf) if low <= 0 else float(eigenvalues.max() / low)

    def inverse_sqrt(self, values: np.ndarray) -> np.ndarray:
        eigenvalues, vectors = self.spectrum
        scaled = vectors * (eigenvalues ** -0.5)[..., None, :]
        root = scaled @ np.conj(np.swapaxes(vectors, -1, -2))
        return self._from_orbits(np.einsum("abij,abj->abi", root, self._to_orbits(values)))

    def solve(self, rhs: np.ndarray) -> np.ndarray:
        """S^-1 rhs by conjugate gradients on the Walnut matvec."""
        size = self.n * self.n
        operator = LinearOperator(
            (size, size),
            matvec=lambda v: self.apply(v.reshape(self.n, self.n)).ravel(),
            dtype=np.complex128,
        )
        solution, info = cg(operator, rhs.ravel().astype(np.complex128), rtol=CG_RTOL, maxiter=10 * size)
        if info != 0:
            raise NumericError(f"conjugate gradients did not converge (info={info})")
        return solution.reshape(self.n, self.n)


class GaborSystem:
    """
    Gabor frame on a self-dual phase grid: lattice eps*Z^2, analysis window, canonical dual.

    Args:
        base: Grid carrying symbols
        eps: Lattice step, a whole number of grid cells
        window: Analysis window, a normalized Gaussian of width 1 by default
    """

    def __init__(
        self,
        base: PhaseGrid,
        eps: float | None = None,
        window: PhaseSpaceArray | None = None,
    ):
        self.base = base
        self.eps = default_eps() if eps is None else float(eps)
        self.lattice = make_lattice(base, self.eps)
        self.window = window if window is not None else gaussian_window(base)
        base.require_match(self.window.grid, "window and base grid")
        if not np.any(self.window.values):
            raise InputError("Gabor window is identically zero")
        with tracer.start_as_current_span("gabor_system") as span:
            span.set_attribute("bjq.gabor.lattice_size", self.lattice.size)
            self.frame = FrameOperator(self.window, self.lattice)
            condition = self.frame.condition()
        if condition >= MAX_CONDITION:
            raise NumericError(f"Gabor frame is ill-conditioned (condition {condition:.3e})")
        logger.debug(
            f"Gabor system: N={base.x_grid.n_points}, K={self.lattice.size}, "
            f"eps={self.eps:.6g}, condition={condition:.4g}"
        )

    @classmethod
    def default(cls, n_points: int = 64, sigma: float = 1.0) -> "GaborSystem":
        base = PhaseGrid.symmetric(n_points)
        return cls(base, default_eps(), gaussian_window(base, sigma))

    @cached_property
    def dual_window(self) -> PhaseSpaceArray:
        return PhaseSpaceArray(self.base, self.frame.solve(self.window.values))

    def frame_bounds(self) -> tuple[float, float]:
        return self.frame.bounds()

    @property
    def redundancy(self) -> float:
        return self.lattice.redundancy

    def tight(self) -> "GaborSystem":
        """System with window S^(-1/2) window; its coefficients satisfy sum |c|^2 = ||a||^2 / (2 pi)."""
        window = PhaseSpaceArray(self.base, self.frame.inverse_sqrt(self.window.values))
        return GaborSystem(self.base, self.eps, window)


def gabor_analyze(a: PhaseSpaceArray, sys: GaborSystem) -> GaborCoefficients:
    """
    c(j, k) = (V_window a)(j, rho(k)) with rho(x, xi) = (xi, x).

    Returns:
        Coefficients indexed (jx, jxi, kx, kxi)
    """
    sys.base.require_match(a.grid, "symbol and Gabor base grid")
    raw = _analysis(a.values, sys.window.values, sys.base, sys.lattice)
    return GaborCoefficients(raw.transpose(0, 1, 3, 2), sys.lattice)


def gabor_synthesize(c: GaborCoefficients, sys: GaborSystem) -> PhaseSpaceArray:
    """sum_{j,k} c(j, k) dual(X - j) exp(i <X, rho(k)>)."""
    if c.lattice != sys.lattice:
        raise InputError("coefficients were computed on a different lattice")
    values = _synthesis(c.values.transpose(0, 1, 3, 2), sys.dual_window.values, sys.base, sys.lattice)
    return PhaseSpaceArray(sys.base, values)


def mixed_norm(c: GaborCoefficients, p: float, q: float, w: WeightSpec | None = None) -> float:
    """
    Weighted mixed norm: l^p over translations j inside, l^q over modulations k outside.

    Raises:
        InputError: If p < 1 or q <= 0
    """
    if not p >= 1:
        raise InputError(f"mixed norm needs p >= 1, got {p}")
    if not q > 0:
        raise InputError(f"mixed norm needs q > 0, got {q}")
    w = w or WeightSpec()
    points = c.lattice.points
    kx, kxi = np.meshgrid(points, points, indexing="ij")
    weights = w(kxi, kx)

    magnitudes = np.abs(c.values) * weights[None, None, :, :]
    inner = magnitudes.reshape(-1, *weights.shape)
    inner_norms = inner.max(axis=0) if np.isinf(p) else np.sum(inner**p, axis=0) ** (1.0 / p)
    if np.isinf(q):
        return float(inner_norms.max())
    return float(np.sum(inner_norms**q) ** (1.0 / q))


def modulation_norm(
    a: PhaseSpaceArray, p: float, q: float, w: WeightSpec | None, sys: GaborSystem
) -> float:
    """Modulation-space norm of a symbol through its Gabor coefficients."""
    return mixed_norm(gabor_analyze(a, sys), p, q, w)


@dataclass(frozen=True)
class FrameReport:
    """Frame diagnostics of a Gabor system."""

    lower: float
    upper: float
    redundancy: float
    lattice_size: int
    eps: float


def frame_report(sys: GaborSystem) -> FrameReport:
    lower, upper = sys.frame_bounds()
    return FrameReport(lower, upper, sys.redundancy, sys.lattice.size, sys.eps)
