"""End-to-end numerical identities across quantization, spectra and Gabor norms."""

import numpy as np
import pytest

from bjq.cli.selfcheck import CHECKS, run_selfcheck
from bjq.main import run
from bjq.models.grid import Grid, PhaseGrid
from bjq.models.metric import japanese
from bjq.models.operator import SchemeSpec
from bjq.services.gabor import GaborSystem, modulation_norm
from bjq.services.phase_grid import hermite, plateau_cutoff
from bjq.services.quantize import bj_to_weyl, duality_residual, hermiticity_defect, quantize
from bjq.services.spectral import (
    garding_lower_bounds,
    schatten_norm,
    singular_decay_report,
    singular_values,
)
from tests.helpers import gabor_symbol, gaussian_symbol, random_symbol


@pytest.mark.slow
def test_three_way_agreement_random_symbols(rng):
    """Test Op_BJ(a) = Op^w(bj_to_weyl(a)) for ten random symbols at N = 128."""
    grid = PhaseGrid.from_grid(Grid(128, 0.25))
    for _ in range(10):
        a = random_symbol(grid, rng)
        direct = quantize(a, SchemeSpec.born_jordan())
        via_weyl = quantize(bj_to_weyl(a), SchemeSpec.weyl())
        assert (direct - via_weyl).operator_norm() <= 1e-6 * direct.operator_norm()


def test_self_adjointness_random_symbols(symbol_grid, rng):
    """Test real symbols give self-adjoint Weyl and Born-Jordan operators, unlike Kohn-Nirenberg."""
    kohn_nirenberg = []
    for _ in range(10):
        a = random_symbol(symbol_grid, rng)
        assert hermiticity_defect(quantize(a, SchemeSpec.born_jordan())) <= 1e-10
        assert hermiticity_defect(quantize(a)) <= 1e-10
        kohn_nirenberg.append(hermiticity_defect(quantize(a, SchemeSpec.kohn_nirenberg())))
    assert max(kohn_nirenberg) > 1e-3


@pytest.mark.slow
def test_duality_hermite_pairs(symbol_grid, small_grid, rng):
    """Test the weak formulation for five symbols and Hermite pairs up to order 3."""
    signals = [hermite(n, small_grid) for n in range(4)]
    for _ in range(5):
        a = random_symbol(symbol_grid, rng)
        for f in signals:
            for g in signals:
                scale = a.norm() * f.norm() * g.norm()
                for tau in (0.0, 0.3, 0.5, 1.0):
                    assert duality_residual(a, tau, f, g) <= 1e-8 * scale


def test_hilbert_schmidt_identity(symbol_grid, rng):
    """Test ||Op^w(a)||_S2 = (2 pi)^(-1/2) ||a||_L2."""
    for _ in range(5):
        a = random_symbol(symbol_grid, rng)
        hs = schatten_norm(singular_values(quantize(a)), 2)
        assert hs == pytest.approx(a.norm() / np.sqrt(2.0 * np.pi), rel=1e-3)


@pytest.mark.slow
def test_schatten_modulation_ratio_uniform(rng):
    """Test ||Op_BJ(a)||_Sp / ||a||_M^{p,q} stays within a bounded band for each (p, q)."""
    system = GaborSystem.default(64)
    pairs = [(2, 2), (2, 1), (4, 2), (np.inf, 1)]
    ratios = {pair: [] for pair in pairs}
    for _ in range(20):
        a = gabor_symbol(system, rng)
        s = singular_values(quantize(a, SchemeSpec.born_jordan()))
        for p, q in pairs:
            ratios[(p, q)].append(schatten_norm(s, p) / modulation_norm(a, p, q, None, system))
    for pair, values in ratios.items():
        assert max(values) / min(values) <= 50, pair


@pytest.mark.slow
def test_bounded_symbol_operator_norm_stays_bounded():
    """Test ||Op_BJ(a)|| for a = <X>^-1 stays bounded as N goes 64, 128, 256."""
    norms = []
    for n_points in (64, 128, 256):
        grid = PhaseGrid.symmetric(n_points)
        a = grid.sample(lambda x, xi: 1.0 / japanese(x, xi)) * plateau_cutoff(grid)
        norms.append(quantize(a, SchemeSpec.born_jordan()).operator_norm())
    assert max(norms) <= 2.0
    assert max(norms) / min(norms) <= 1.5


@pytest.mark.slow
def test_garding_lower_bound_is_stable():
    """Test the Born-Jordan lower bound is >= -1 and moves under 5% from N = 128 to 256."""
    coarse, fine = garding_lower_bounds()
    assert min(coarse, fine) >= -1.0
    assert abs(coarse - fine) <= 0.05 * abs(fine)


@pytest.mark.slow
def test_oscillator_smallest_singular_values():
    """Test the ten smallest singular values of Op_BJ(x^2 + xi^2) are 1, 3, ..., 19."""
    grid = PhaseGrid.from_grid(Grid(256, 0.125))
    matrix = quantize(grid.sample(lambda x, xi: x**2 + xi**2), SchemeSpec.born_jordan())
    smallest = singular_values(matrix).values[-10:][::-1]
    np.testing.assert_allclose(smallest, np.arange(1, 20, 2), atol=1e-6)


@pytest.mark.slow
def test_gaussian_singular_values_decay_faster_than_any_power():
    """Test s_2k / s_k keeps shrinking over k = 8, 16, 32."""
    grid = PhaseGrid.symmetric(256)
    matrix = quantize(gaussian_symbol(grid, width=3.0), SchemeSpec.born_jordan())
    ratios = singular_decay_report(singular_values(matrix)).doubling_ratios
    assert ratios[8] > ratios[16] > ratios[32]
    assert ratios[32] < 0.1


def test_selfcheck_subset():
    """Test the fast checks pass on their own."""
    results = run_selfcheck(["fourier_unitarity", "sinc_series", "planck_oracle"])
    assert [result.name for result in results] == ["fourier_unitarity", "sinc_series", "planck_oracle"]
    assert all(result.passed for result in results)


@pytest.mark.slow
def test_selfcheck_command(test_settings, capsys):
    """Test every invariant check passes through the CLI."""
    assert run(["selfcheck"], settings=test_settings) == 0
    rows = [line for line in capsys.readouterr().out.splitlines() if not line.startswith("#")]
    assert len(rows) == len(CHECKS)
    assert all("| PASS |" in row for row in rows)
