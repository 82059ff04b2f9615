"""Unit tests for Gabor frames and mixed norms."""

import numpy as np
import pytest

from bjq.core.errors import InputError
from bjq.models.gabor import GaborCoefficients, WeightSpec
from bjq.models.grid import Grid, PhaseGrid
from bjq.services.gabor import (
    GaborSystem,
    frame_report,
    gabor_analyze,
    gabor_synthesize,
    make_lattice,
    mixed_norm,
    modulation_norm,
)
from tests.helpers import gaussian_symbol, random_symbol


@pytest.fixture(scope="module")
def system() -> GaborSystem:
    """Default frame on the symmetric 64-point grid."""
    return GaborSystem.default(64)


def test_default_lattice(system):
    """Test the default lattice has redundancy 4."""
    assert system.lattice.step == 4
    assert system.lattice.size == 16
    assert system.redundancy == pytest.approx(4.0)
    report = frame_report(system)
    assert report.lattice_size == 16
    assert 0 < report.lower <= report.upper


def test_window_is_normalized(system):
    """Test the Gaussian window has unit L2 norm."""
    assert system.window.norm() == pytest.approx(1.0, abs=1e-12)


def test_frame_reconstruction(system, rng):
    """Test synthesis with the dual window inverts analysis for ten random symbols."""
    for _ in range(10):
        a = random_symbol(system.base, rng)
        restored = gabor_synthesize(gabor_analyze(a, system), system)
        assert (restored - a).norm() <= 1e-8 * a.norm()


def test_frame_bounds_enclose_coefficient_energy(system, rng):
    """Test A ||a||^2 <= sum |c|^2 <= B ||a||^2."""
    lower, upper = system.frame_bounds()
    for _ in range(3):
        a = random_symbol(system.base, rng)
        energy = float(np.sum(np.abs(gabor_analyze(a, system).values) ** 2))
        assert lower * a.norm() ** 2 * (1 - 1e-10) <= energy <= upper * a.norm() ** 2 * (1 + 1e-10)


def test_tight_frame_energy(system, rng):
    """Test the tight window gives sum |c|^2 = ||a||^2 / (2 pi)."""
    tight = system.tight()
    lower, upper = tight.frame_bounds()
    assert lower == pytest.approx(upper, rel=1e-8)
    a = random_symbol(system.base, rng)
    energy = float(np.sum(np.abs(gabor_analyze(a, tight).values) ** 2))
    assert energy == pytest.approx(a.norm() ** 2 / (2.0 * np.pi), rel=1e-8)


def test_window_coefficient_at_origin(system):
    """Test c(0, 0) of the window itself is ||window||^2 / (2 pi)."""
    c = gabor_analyze(system.window, system)
    center = system.lattice.size // 2
    assert abs(c.values[center, center, center, center]) == pytest.approx(
        system.window.norm() ** 2 / (2.0 * np.pi), rel=1e-10
    )


def test_coefficients_follow_translation(system):
    """Test a shifted Gaussian peaks at the matching lattice translation."""
    eps = system.lattice.eps
    a = gaussian_symbol(system.base, x0=2 * eps, xi0=-eps)
    c = np.abs(gabor_analyze(a, system).values)
    center = system.lattice.size // 2
    jx, jxi, kx, kxi = np.unravel_index(np.argmax(c), c.shape)
    assert (jx - center, jxi - center) == (2, -1)
    assert (kx, kxi) == (center, center)


def test_mixed_norm_special_cases(system, rng):
    """Test l^2 / l^2 is the coefficient energy and l^inf / l^inf the largest modulus."""
    c = gabor_analyze(random_symbol(system.base, rng), system)
    assert mixed_norm(c, 2, 2) == pytest.approx(np.linalg.norm(c.values.ravel()), rel=1e-12)
    assert mixed_norm(c, np.inf, np.inf) == pytest.approx(np.abs(c.values).max(), rel=1e-12)
    assert mixed_norm(c, 1, np.inf) <= mixed_norm(c, 1, 1)


def test_mixed_norm_weight_increases_norm(system, rng):
    """Test a positive weight order never decreases the norm."""
    c = gabor_analyze(random_symbol(system.base, rng), system)
    assert mixed_norm(c, 1, 1, WeightSpec(2.0)) >= mixed_norm(c, 1, 1)


@pytest.mark.parametrize("p, q", [(0.5, 1.0), (1.0, 0.0), (2.0, -1.0)])
def test_mixed_norm_rejects_exponents(p, q):
    """Test p < 1 or q <= 0 is refused."""
    lattice = make_lattice(PhaseGrid.symmetric(64), 0.5 * np.sqrt(2.0 * np.pi))
    with pytest.raises(InputError):
        mixed_norm(GaborCoefficients.zeros(lattice), p, q)


def test_mixed_norm_of_zero(system):
    """Test the zero coefficient array has norm zero."""
    assert mixed_norm(GaborCoefficients.zeros(system.lattice), 1, 1) == 0.0


def test_modulation_norm_of_gaussian(system):
    """Test M^{1,1} of a Gaussian symbol is finite and positive."""
    value = modulation_norm(gaussian_symbol(system.base), 1, 1, None, system)
    assert 0 < value < np.inf


def test_incommensurate_lattice():
    """Test a step that is not a whole number of cells is refused."""
    with pytest.raises(InputError):
        GaborSystem(PhaseGrid.symmetric(64), eps=1.0)


def test_lattice_too_coarse():
    """Test fewer than four lattice points per axis is refused."""
    base = PhaseGrid.symmetric(64)
    with pytest.raises(InputError):
        make_lattice(base, 32 * base.x_grid.spacing)


def test_non_self_dual_grid():
    """Test Gabor systems need dx = dxi = sqrt(2 pi / N)."""
    with pytest.raises(InputError):
        GaborSystem(PhaseGrid.from_grid(Grid(64, 0.3)))


def test_synthesis_rejects_foreign_lattice(system):
    """Test coefficients from another lattice are refused."""
    coarse = make_lattice(system.base, 2 * system.eps)
    with pytest.raises(InputError):
        gabor_synthesize(GaborCoefficients.zeros(coarse), system)


def test_modulation_norm_is_robust_to_the_window(rng):
    """Test two Gaussian window widths give M^{1,1} norms within a factor 10."""
    narrow, wide = GaborSystem.default(64, sigma=0.8), GaborSystem.default(64, sigma=1.25)
    base = narrow.base
    symbols = [gaussian_symbol(base), gaussian_symbol(base, 1.5, -1.0, 0.8)]
    symbols += [random_symbol(base, rng) for _ in range(3)]
    for a in symbols:
        ratio = modulation_norm(a, 1, 1, None, narrow) / modulation_norm(a, 1, 1, None, wide)
        assert 0.1 <= ratio <= 10.0


def test_mixed_norm_decreases_with_exponents(system, rng):
    """Test l^{1,1} >= l^{2,2} >= l^{inf,inf} on random coefficients."""
    shape = (system.lattice.size,) * 4
    for _ in range(3):
        c = GaborCoefficients(rng.normal(size=shape) + 1j * rng.normal(size=shape), system.lattice)
        assert mixed_norm(c, 1, 1) >= mixed_norm(c, 2, 2) >= mixed_norm(c, np.inf, np.inf)


@pytest.mark.parametrize("p, q", [(1, 1), (2, 0.5), (np.inf, 3), (4, np.inf)])
def test_mixed_norm_of_single_coefficient(system, p, q):
    """Test one coefficient z at (j, k) has norm |z| w(rho(k)) for every (p, q)."""
    values = np.zeros((system.lattice.size,) * 4, dtype=np.complex128)
    z = 2.0 - 1.0j
    values[3, 9, 11, 6] = z
    c = GaborCoefficients(values, system.lattice)
    points = system.lattice.points
    weight = WeightSpec(1.5)
    expected = abs(z) * weight(points[6], points[11])
    assert mixed_norm(c, p, q, weight) == pytest.approx(expected, rel=1e-12)


def test_single_atom_synthesis_has_dual_norm(system):
    """Test a lone unit coefficient synthesizes a modulated dual atom of norm ||dual window||."""
    values = np.zeros((system.lattice.size,) * 4, dtype=np.complex128)
    values[9, 6, 10, 7] = 1.0
    atom = gabor_synthesize(GaborCoefficients(values, system.lattice), system)
    assert atom.norm() == pytest.approx(system.dual_window.norm(), rel=1e-10)


def test_tight_modulation_norm_is_scaled_l2_norm(system, rng):
    """Test ||a||_M^{2,2} / ||a||_L2 = (2 pi)^(-1/2) for every symbol under the tight window."""
    tight = system.tight()
    symbols = [random_symbol(system.base, rng) for _ in range(4)] + [gaussian_symbol(system.base)]
    ratios = [modulation_norm(a, 2, 2, None, tight) / a.norm() for a in symbols]
    np.testing.assert_allclose(ratios, 1.0 / np.sqrt(2.0 * np.pi), rtol=1e-6)
