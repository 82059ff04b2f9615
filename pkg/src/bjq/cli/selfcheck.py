"""Invariant suite behind `bjq selfcheck`."""

import logging
from collections.abc import Callable

import numpy as np
import sympy

from bjq.core.errors import BJQError
from bjq.models.grid import Grid, PhaseGrid, PhaseSpaceArray
from bjq.models.kernels import QuadratureRule
from bjq.models.metric import MetricPreset
from bjq.models.operator import SchemeSpec
from bjq.schemas.reports import CheckResult
from bjq.services.gabor import GaborSystem, gabor_analyze, gabor_synthesize
from bjq.services.phase_grid import fourier, hermite, sinc
from bjq.services.quantize import (
    bj_to_weyl,
    duality_residual,
    expansion_multiplier,
    hermiticity_defect,
    quantize,
)
from bjq.services.spectral import (
    garding_lower_bounds,
    lowest_eigenvalues,
    schatten_norm,
    singular_values,
)
from bjq.services.symclass import planck, planck_by_sampling, remainder_order
from bjq.services.transforms import (
    marginals,
    wigner_bj,
    wigner_bj_by_multiplier,
    wigner_tau,
)

logger = logging.getLogger(__name__)

Check = Callable[[], tuple[bool, str]]

SIGNAL_GRID = Grid(128, 0.25)
OPERATOR_GRID = Grid(64, 0.3)


def _bump(grid: PhaseGrid, x0: float = 0.0, xi0: float = 0.0, width: float = 1.0) -> PhaseSpaceArray:
    return grid.sample(lambda x, xi: np.exp(-((x - x0) ** 2 + (xi - xi0) ** 2) / (2.0 * width**2)))


def check_fourier() -> tuple[bool, str]:
    f = hermite(3, SIGNAL_GRID)
    spectrum = fourier(f)
    norm_error = abs(spectrum.norm() - f.norm())
    # psi_n is an eigenfunction with eigenvalue (-i)^n
    eigen_error = np.abs(spectrum.values - (-1j) ** 3 * hermite(3, spectrum.grid).values).max()
    return norm_error <= 1e-12 and eigen_error <= 1e-10, f"norm {norm_error:.1e}, eigen {eigen_error:.1e}"


def check_hermite() -> tuple[bool, str]:
    grid = Grid(256, 0.125)
    table = np.array([hermite(n, grid).values for n in range(21)])
    gram = grid.spacing * table.conj() @ table.T
    error = np.abs(gram - np.eye(21)).max()
    return error <= 1e-10, f"gram error {error:.1e}"


def check_sinc() -> tuple[bool, str]:
    t = np.array([0.0, 9.9e-5, 1.01e-4, 0.5, 3.0])
    reference = np.array([1.0] + [np.sin(v) / v for v in t[1:]])
    error = np.abs(sinc(t) - reference).max()
    return error <= 1e-15, f"max error {error:.1e}"


def check_multiplier_series() -> tuple[bool, str]:
    s = sympy.symbols("s")
    series = sympy.series(sympy.sin(s / 2) / (s / 2), s, 0, 12).removeO()
    grid = PhaseGrid(Grid(8, 1.0), Grid(8, 1.0))
    eta, y = grid.dual().mesh()
    partial = expansion_multiplier(grid, 11)
    expected = sympy.lambdify(s, series, "numpy")(eta * y)
    error = np.abs(partial - expected).max()
    return error <= 1e-12, f"series mismatch {error:.1e}"


def check_multiplier_quadrature() -> tuple[bool, str]:
    quad = QuadratureRule.gauss_legendre()
    s = np.linspace(-20.0, 20.0, 401)
    averaged = quad.average(lambda t: np.exp(1j * (t - 0.5) * s))
    error = np.abs(averaged - sinc(0.5 * s)).max()
    return error <= 1e-12, f"max error {error:.1e}"


def check_marginals() -> tuple[bool, str]:
    f = hermite(0, SIGNAL_GRID)
    position, _ = marginals(wigner_tau(f, f, 0.5))
    expected = np.sqrt(2.0 * np.pi) * np.abs(f.values) ** 2
    error = np.abs(position.values - expected).max() / expected.max()
    return error <= 1e-8, f"relative error {error:.1e}"


def check_bj_realness() -> tuple[bool, str]:
    f = hermite(2, SIGNAL_GRID).with_values(
        hermite(2, SIGNAL_GRID).values + 0.5j * hermite(1, SIGNAL_GRID).values
    )
    w = wigner_bj(f, f)
    ratio = np.abs(w.values.imag).max() / w.max_abs()
    return ratio <= 1e-10, f"imag/max {ratio:.1e}"


def check_bj_constructions() -> tuple[bool, str]:
    f, g = hermite(2, SIGNAL_GRID), hermite(3, SIGNAL_GRID)
    by_quadrature = wigner_bj(f, g)
    by_multiplier = wigner_bj_by_multiplier(f, g)
    error = (by_quadrature - by_multiplier).max_abs() / by_quadrature.max_abs()
    return error <= 1e-6, f"relative difference {error:.1e}"


def check_hermitian() -> tuple[bool, str]:
    grid = PhaseGrid.from_grid(OPERATOR_GRID)
    a = grid.sample(lambda x, xi: x * xi * np.exp(-(x**2 + xi**2) / 4.0))
    bj = hermiticity_defect(quantize(a, SchemeSpec.born_jordan()))
    kn = hermiticity_defect(quantize(a, SchemeSpec.kohn_nirenberg()))
    return bj <= 1e-10 and kn > 1e-3, f"born-jordan {bj:.1e}, kohn-nirenberg {kn:.1e}"


def check_oscillator() -> tuple[bool, str]:
    grid = PhaseGrid.symmetric(128)
    a = grid.sample(lambda x, xi: x**2 + xi**2)
    eigenvalues = lowest_eigenvalues(quantize(a, SchemeSpec.born_jordan()), 10)
    error = np.abs(eigenvalues - np.arange(1, 20, 2)).max()
    return error <= 1e-6, f"max error {error:.1e}"


def check_duality() -> tuple[bool, str]:
    grid = PhaseGrid.from_grid(SIGNAL_GRID)
    a = _bump(grid, 0.5, -0.3, 1.5)
    f, g = hermite(1, SIGNAL_GRID), hermite(2, SIGNAL_GRID)
    scale = a.norm() * f.norm() * g.norm()
    worst = max(duality_residual(a, tau, f, g) for tau in (0.0, 0.3, 0.5, 1.0)) / scale
    return worst <= 1e-8, f"relative residual {worst:.1e}"


def check_three_way() -> tuple[bool, str]:
    grid = PhaseGrid.from_grid(OPERATOR_GRID)
    a = _bump(grid, 0.4, -0.2, 1.2)
    direct = quantize(a, SchemeSpec.born_jordan())
    via_weyl = quantize(bj_to_weyl(a, "multiplier"), SchemeSpec.weyl())
    error = (direct - via_weyl).operator_norm() / direct.operator_norm()
    return error <= 1e-6, f"relative difference {error:.1e}"


def check_frame() -> tuple[bool, str]:
    system = GaborSystem.default(64)
    a = _bump(system.base, 1.0, -0.5, 1.2)
    restored = gabor_synthesize(gabor_analyze(a, system), system)
    error = (restored - a).norm() / a.norm()
    return error <= 1e-8, f"relative residual {error:.1e}"


def check_hilbert_schmidt() -> tuple[bool, str]:
    grid = PhaseGrid.from_grid(OPERATOR_GRID)
    b = _bump(grid, 0.0, 0.5, 1.5)
    hs = schatten_norm(singular_values(quantize(b, SchemeSpec.weyl())), 2.0)
    expected = b.norm() / np.sqrt(2.0 * np.pi)
    error = abs(hs - expected) / expected
    return error <= 1e-3, f"relative error {error:.1e}"


def check_planck() -> tuple[bool, str]:
    metric = MetricPreset("shubin", 0.5).metric()
    closed = planck(metric, 1.5, -0.7)
    sampled = planck_by_sampling(metric, 1.5, -0.7)
    error = abs(closed - sampled) / closed
    return error <= 1e-6, f"relative error {error:.1e}"


def check_remainder() -> tuple[bool, str]:
    axis = Grid(256, 0.5)
    report = remainder_order(_bump(PhaseGrid(axis, axis)), [2.0, 4.0, 8.0], 2)
    if report.slope is None:
        return False, "degenerate"
    return abs(report.slope - report.expected_slope) <= 0.5, f"slope {report.slope:.3f}"


def check_garding() -> tuple[bool, str]:
    coarse, fine = garding_lower_bounds()
    drift = abs(coarse - fine)
    passed = min(coarse, fine) >= -1.0 and drift <= 0.05 * abs(fine)
    return passed, f"lowest {coarse:.6f} -> {fine:.6f}"


CHECKS: dict[str, Check] = {
    "fourier_unitarity": check_fourier,
    "hermite_orthonormality": check_hermite,
    "sinc_series": check_sinc,
    "multiplier_series": check_multiplier_series,
    "multiplier_quadrature": check_multiplier_quadrature,
    "wigner_marginal": check_marginals,
    "bj_realness": check_bj_realness,
    "bj_constructions": check_bj_constructions,
    "hermitian_symmetry": check_hermitian,
    "harmonic_oscillator": check_oscillator,
    "duality": check_duality,
    "three_way_agreement": check_three_way,
    "frame_reconstruction": check_frame,
    "hilbert_schmidt": check_hilbert_schmidt,
    "planck_oracle": check_planck,
    "remainder_order": check_remainder,
    "garding_bound": check_garding,
}


def run_selfcheck(names: list[str] | None = None) -> list[CheckResult]:
    """Run the named checks (all by default); a raised library error counts as a failure."""
    results = []
    for name in names or list(CHECKS):
        try:
            passed, detail = CHECKS[name]()
        except BJQError as e:
            passed, detail = False, f"{type(e).__name__}: {e}"
        logger.debug(f"selfcheck {name}: {'pass' if passed else 'FAIL'} ({detail})")
        results.append(CheckResult(name=name, passed=bool(passed), detail=detail))
    return results
