"""Unit tests for time-frequency transforms."""

import numpy as np
import pytest
import sympy

from bjq.core.errors import GridMismatchError, InputError
from bjq.models.grid import Grid, PhaseGrid, PhaseSpaceArray, Signal
from bjq.models.kernels import QuadratureRule
from bjq.services.phase_grid import fourier, gaussian_cutoff, hermite
from bjq.services.transforms import (
    apply_bj_multiplier,
    bj_multiplier,
    marginals,
    stft,
    wigner_bj,
    wigner_bj_by_multiplier,
    wigner_tau,
)


def test_stft_gaussian_bump(hermite_signals):
    """Test the STFT of h0 against h0 peaks at the origin."""
    h0 = hermite_signals[0]
    v = stft(h0, h0)
    peak = np.unravel_index(np.argmax(np.abs(v.values)), v.grid.shape)
    assert peak == (128, 128)


def test_stft_moyal(hermite_signals, signal_grid):
    """Test ||V f|| = ||f|| ||window||."""
    f = hermite_signals[3]
    window = Signal(signal_grid, 0.7 * hermite_signals[1].values)
    v = stft(f, window)
    assert v.norm() == pytest.approx(f.norm() * window.norm(), rel=1e-10)


def test_stft_zero_signal(hermite_signals, signal_grid):
    """Test linearity at zero."""
    v = stft(Signal(signal_grid, np.zeros(256)), hermite_signals[0])
    assert v.max_abs() == 0.0


def test_stft_rejects_zero_window(hermite_signals, signal_grid):
    """Test a vanishing window is refused."""
    with pytest.raises(InputError):
        stft(hermite_signals[0], Signal(signal_grid, np.zeros(256)))


def test_stft_rejects_grid_mismatch(hermite_signals):
    """Test operands must share a grid."""
    with pytest.raises(GridMismatchError):
        stft(hermite_signals[0], hermite(0, Grid(256, 0.1)))


def test_wigner_gaussian_closed_form(hermite_signals):
    """Test W(h0, h0) = sqrt(2/pi) exp(-(x^2 + xi^2))."""
    w = wigner_tau(hermite_signals[0], hermite_signals[0], 0.5)
    x, xi = w.grid.mesh()
    expected = np.sqrt(2.0 / np.pi) * np.exp(-(x**2 + xi**2))
    assert np.abs(w.values - expected).max() <= 1e-10
    assert w.values[128, 128].real == pytest.approx(np.sqrt(2.0 / np.pi), rel=1e-12)


@pytest.mark.parametrize("tau", [0.0, 0.3, 0.5, 1.0])
def test_wigner_position_marginal(hermite_signals, tau):
    """Test sum_k W_tau(f, f) dxi = sqrt(2 pi) |f|^2."""
    f = hermite_signals[2]
    position, _ = marginals(wigner_tau(f, f, tau))
    expected = np.sqrt(2.0 * np.pi) * np.abs(f.values) ** 2
    assert np.abs(position.values - expected).max() <= 1e-8 * expected.max()


def test_wigner_frequency_marginal(hermite_signals):
    """Test sum_j W(h1, h1) dx = sqrt(2 pi) |F h1|^2."""
    h1 = hermite_signals[1]
    _, frequency = marginals(wigner_tau(h1, h1, 0.5))
    expected = np.sqrt(2.0 * np.pi) * np.abs(fourier(h1).values) ** 2
    assert np.abs(frequency.values - expected).max() <= 1e-8 * expected.max()


def test_marginals_of_zero():
    """Test zero arrays have zero marginals."""
    grid = PhaseGrid.from_grid(Grid(16, 0.5))
    position, frequency = marginals(PhaseSpaceArray(grid, np.zeros(grid.shape)))
    assert position.norm() == 0.0
    assert frequency.norm() == 0.0


def test_wigner_tau_endpoints_conjugate(hermite_signals):
    """Test W_0(f, f) = conj(W_1(f, f))."""
    h0 = hermite_signals[0]
    w0 = wigner_tau(h0, h0, 0.0)
    w1 = wigner_tau(h0, h0, 1.0)
    assert np.abs(w0.values - np.conj(w1.values)).max() <= 1e-10


def test_wigner_hermitian_symmetry(hermite_signals):
    """Test W_tau(f, g) = conj(W_{1-tau}(g, f))."""
    f, g = hermite_signals[1], hermite_signals[4]
    lhs = wigner_tau(f, g, 0.3)
    rhs = wigner_tau(g, f, 0.7)
    assert np.abs(lhs.values - np.conj(rhs.values)).max() <= 1e-10


def test_wigner_sesquilinear(hermite_signals, signal_grid):
    """Test linearity in the first slot."""
    f1, f2, g = hermite_signals[1], hermite_signals[2], hermite_signals[3]
    alpha = 0.4 - 1.3j
    combined = Signal(signal_grid, alpha * f1.values + f2.values)
    lhs = wigner_tau(combined, g, 0.3)
    rhs = alpha * wigner_tau(f1, g, 0.3).values + wigner_tau(f2, g, 0.3).values
    assert np.abs(lhs.values - rhs).max() <= 1e-12


def test_wigner_needs_oversampling(hermite_signals):
    """Test oversample below 2 is refused."""
    with pytest.raises(InputError):
        wigner_tau(hermite_signals[0], hermite_signals[0], 0.5, oversample=1)


def test_wigner_bj_is_real(hermite_signals, signal_grid):
    """Test W_BJ(f, f) is real for complex f."""
    f = Signal(signal_grid, hermite_signals[2].values + 0.5j * hermite_signals[1].values)
    w = wigner_bj(f, f)
    assert np.abs(w.values.imag).max() <= 1e-10 * w.max_abs()


def test_wigner_bj_marginal(hermite_signals):
    """Test the Born-Jordan average keeps the position marginal."""
    f = hermite_signals[3]
    position, _ = marginals(wigner_bj(f, f))
    expected = np.sqrt(2.0 * np.pi) * np.abs(f.values) ** 2
    assert np.abs(position.values - expected).max() <= 1e-6 * expected.max()


def test_wigner_bj_of_zero(hermite_signals, signal_grid):
    """Test W_BJ(0, g) = 0."""
    zero = Signal(signal_grid, np.zeros(256))
    assert wigner_bj(zero, hermite_signals[0]).max_abs() == 0.0


@pytest.mark.parametrize("orders", [(0, 0), (2, 3), (1, 5)])
def test_wigner_bj_constructions_agree(hermite_signals, orders):
    """Test quadrature average against the spectral Born-Jordan kernel."""
    f, g = hermite_signals[orders[0]], hermite_signals[orders[1]]
    by_quadrature = wigner_bj(f, g)
    by_multiplier = wigner_bj_by_multiplier(f, g)
    assert (by_quadrature - by_multiplier).max_abs() <= 1e-6 * by_quadrature.max_abs()


def test_wigner_bj_quadrature_converged(hermite_signals):
    """Test doubling the node count leaves W_BJ unchanged."""
    f, g = hermite_signals[1], hermite_signals[2]
    coarse = wigner_bj(f, g, QuadratureRule.gauss_legendre(33))
    fine = wigner_bj(f, g, QuadratureRule.gauss_legendre(66))
    assert (coarse - fine).max_abs() <= 1e-10


def test_bj_multiplier_values():
    """Test range, value one on the axes and both symmetries."""
    grid = PhaseGrid.symmetric(64).dual()
    m = bj_multiplier(grid).values
    assert m.min() >= -0.2173
    assert m.max() <= 1.0
    np.testing.assert_array_equal(m[32, :], 1.0)
    np.testing.assert_array_equal(m[:, 32], 1.0)
    np.testing.assert_array_equal(m[1:, 1:], m[1:, 1:][::-1, ::-1])
    np.testing.assert_array_equal(m, m.T)


def test_bj_multiplier_zero_at_two_pi():
    """Test sinc(pi) = 0 where eta * y = 2 pi."""
    axis = Grid(8, np.sqrt(2.0 * np.pi / 8))
    grid = PhaseGrid(axis, axis)
    m = bj_multiplier(grid)
    eta, y = grid.mesh()
    hits = np.isclose(eta * y, 2.0 * np.pi)
    assert hits.any()
    assert np.abs(m.values[hits]).max() <= 1e-15


def test_apply_bj_multiplier_separable_unchanged():
    """Test x^2 + xi^2 passes through unchanged."""
    grid = PhaseGrid.from_grid(Grid(64, 0.25))
    a = grid.sample(lambda x, xi: x**2 + xi**2)
    b = apply_bj_multiplier(a)
    interior = np.zeros(grid.shape, dtype=bool)
    interior[2:-2, 2:-2] = True
    assert np.abs(b.values - a.values)[interior].max() <= 1e-10 * a.max_abs()


def test_apply_bj_multiplier_keeps_real_symbols_real():
    """Test a real input gives a real output array."""
    grid = PhaseGrid.from_grid(Grid(32, 0.5))
    a = grid.sample(lambda x, xi: np.exp(-(x**2 + xi**2)))
    assert not np.any(apply_bj_multiplier(a).values.imag)


def _square_grid() -> PhaseGrid:
    axis = Grid(128, 1.5)
    return PhaseGrid(axis, axis)


def test_apply_bj_multiplier_x2xi2():
    """Test x^2 xi^2 under a wide cutoff becomes x^2 xi^2 - 1/6 near the origin."""
    grid = _square_grid()
    chi = grid.sample(lambda x, xi: np.exp(-(x**2 + xi**2) / (2.0 * 12.0**2)))
    a = grid.sample(lambda x, xi: x**2 * xi**2) * chi
    b = apply_bj_multiplier(a)
    assert b.values[64, 64] == pytest.approx(-1.0 / 6.0, abs=1e-4)


def test_apply_bj_multiplier_xxi_matches_symbolic_series():
    """Test x xi under a wide cutoff against the term-by-term derivative series."""
    grid = _square_grid()
    sigma = 12.0
    x_s, xi_s = sympy.symbols("x xi", real=True)
    symbol = x_s * xi_s * sympy.exp(-(x_s**2 + xi_s**2) / (2 * sigma**2))
    series = symbol
    term = symbol
    for j in range(1, 4):
        term = sympy.diff(term, x_s, 2, xi_s, 2)
        coefficient = sympy.Rational((-1) ** j, 4**j * sympy.factorial(2 * j + 1))
        series = series + coefficient * term
    expected = grid.sample(sympy.lambdify((x_s, xi_s), series, "numpy"))

    a = grid.sample(sympy.lambdify((x_s, xi_s), symbol, "numpy"))
    b = apply_bj_multiplier(a)
    mask = grid.interior_mask(0.25)
    assert np.abs(b.values - expected.values)[mask].max() <= 1e-8
    # Near the origin the correction is below 1e-4
    near = grid.interior_mask(2.0 / 96.0)
    assert np.abs(b.values - a.values)[near].max() <= 1e-4


def test_gaussian_cutoff_is_default_quarter_width():
    """Test the documented cutoff default on the square grid."""
    cutoff = gaussian_cutoff(_square_grid())
    assert cutoff.values[64, 64] == 1.0
