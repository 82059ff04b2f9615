"""Operator matrices of Shubin, Weyl and Born-Jordan quantizations and symbol conversions."""

import logging
import math
from typing import Literal

import numpy as np
import scipy.fft as sfft
from opentelemetry import trace

from bjq.config import fft_workers
from bjq.core.errors import InputError, NumericError
from bjq.models.grid import Grid, PhaseGrid, PhaseSpaceArray, Signal
from bjq.models.kernels import QuadratureRule
from bjq.models.operator import MAX_OPERATOR_POINTS, OperatorMatrix, SchemeSpec
from bjq.services.phase_grid import centered_fft, centered_ifft, shift_samples
from bjq.services.transforms import apply_bj_multiplier, apply_multiplier, wigner_tau
from bjq.telemetry import set_span_attributes

logger = logging.getLogger(__name__)
tracer = trace.get_tracer(__name__)

MAX_EXPANSION_ORDER = 12
MAX_MONOMIAL_DEGREE = 6

ConversionMethod = Literal["multiplier", "quadrature", "expansion"]


def _check_symbol_grid(a: PhaseSpaceArray) -> Grid:
    grid = a.grid
    if not grid.xi_grid.matches(grid.x_grid.dual()):
        raise InputError(
            "symbol xi-axis must be the dual of its x-axis "
            f"(expected dxi={grid.x_grid.dual_spacing}, got {grid.xi_grid.spacing})"
        )
    if grid.x_grid.n_points > MAX_OPERATOR_POINTS:
        raise InputError(
            f"dense operators are limited to N <= {MAX_OPERATOR_POINTS}, got {grid.x_grid.n_points}"
        )
    return grid.x_grid


def _difference_kernel(a: PhaseSpaceArray) -> np.ndarray:
    """
    K[i, l] = (dxi / 2pi) sum_k a(x_i, xi_k) exp(i l dx xi_k), periodic in l.

    The exponential sum is N (-1)^l times the inverse DFT over the xi axis.
    """
    n = a.grid.x_grid.n_points
    dxi = a.grid.xi_grid.spacing
    signs = np.where(np.arange(n) % 2, -1.0, 1.0)
    inverse = sfft.ifft(a.values, axis=1, workers=fft_workers())
    return inverse * signs[None, :] * (n * dxi / (2.0 * np.pi))


def _shubin_matrix(kernel: np.ndarray, grid: Grid, t: float, oversample: int) -> np.ndarray:
    n = grid.n_points
    half = n // 2
    # Lags live on the torus, l in [-N/2, N/2), the same range the symbol flow uses for y
    lags = np.arange(-half, n - half)
    columns = kernel[:, lags % n]
    # Row j of column l holds the kernel at x_j - t*l*dx, the Shubin point between x_j and x_{j-l}
    shifted = shift_samples(columns, -t * lags * grid.spacing, grid.spacing, oversample)
    j = np.arange(n)[:, None]
    m = np.arange(n)[None, :]
    return grid.spacing * shifted[np.broadcast_to(j, (n, n)), (j - m + half) % n]


def quantize(
    a: PhaseSpaceArray, scheme: SchemeSpec | None = None, oversample: int = 1
) -> OperatorMatrix:
    """
    Dense matrix of a quantized symbol.

    For shubin(t): M[j, m] = dx (2pi)^(-1) dxi sum_k a((1-t) x_j + t x_m, xi_k) exp(i (x_j - x_m) xi_k).
    The difference x_j - x_m is taken on the torus, in [-N/2, N/2) dx, so two
    samples at opposite ends of the grid are neighbours and their Shubin point
    sits at the boundary. The first argument is read off the periodic
    trigonometric interpolant along x; oversample > 1 zero-pads instead and
    only suits symbols vanishing at the x-boundary. Born-Jordan sums Shubin
    matrices over the quadrature rule.

    Args:
        a: Symbol on a phase grid whose xi-axis is the dual of the signal grid
        scheme: Quantization rule, Weyl by default
        oversample: Interpolation padding factor

    Returns:
        Operator on the x-axis grid of `a`

    Raises:
        InputError: On grid mismatch, N > 512 or a rule with nodes outside [0, 1]
    """
    scheme = scheme or SchemeSpec.weyl()
    grid = _check_symbol_grid(a)
    if oversample < 1:
        raise InputError(f"oversample must be a positive integer, got {oversample}")

    with tracer.start_as_current_span("quantize") as span:
        set_span_attributes(
            span, **{"bjq.grid.n_points": grid.n_points, "bjq.scheme": scheme.label}
        )
        logger.debug(f"quantize: N={grid.n_points}, scheme={scheme.label}")

        kernel = _difference_kernel(a)
        if scheme.kind == "shubin":
            values = _shubin_matrix(kernel, grid, scheme.t, oversample)
        else:
            values = scheme.quad.average(lambda t: _shubin_matrix(kernel, grid, t, oversample))

    if not np.all(np.isfinite(values)):
        raise NumericError("quantization produced non-finite entries")
    return OperatorMatrix(grid, values)


def shubin_flow(grid: PhaseGrid, t: float) -> np.ndarray:
    """Fourier multiplier exp(i (t - 1/2) eta y) taking t-symbols to Weyl symbols."""
    eta, y = grid.dual().mesh()
    return np.exp(1j * (t - 0.5) * eta * y)


def shubin_to_weyl(a: PhaseSpaceArray, t: float) -> PhaseSpaceArray:
    """Weyl symbol b with Op^w(b) = Op_t(a)."""
    return apply_multiplier(a, shubin_flow(a.grid, t))


def weyl_to_shubin(b: PhaseSpaceArray, t: float) -> PhaseSpaceArray:
    """t-symbol a with Op_t(a) = Op^w(b)."""
    return apply_multiplier(b, np.conj(shubin_flow(b.grid, t)))


def expansion_multiplier(grid: PhaseGrid, order: int) -> np.ndarray:
    """Partial sum over 2j < order of (-1)^j (eta y)^(2j) / (4^j (2j+1)!)."""
    eta, y = grid.dual().mesh()
    s = eta * y
    total = np.zeros_like(s)
    for j in range((order + 1) // 2):
        total = total + (-1) ** j * s ** (2 * j) / (4**j * math.factorial(2 * j + 1))
    return total


def bj_to_weyl(
    a: PhaseSpaceArray,
    method: ConversionMethod = "multiplier",
    order: int | None = None,
    quad: QuadratureRule | None = None,
) -> PhaseSpaceArray:
    """
    Weyl symbol b with Op^w(b) = Op_BJ(a).

    Args:
        a: Born-Jordan symbol
        method: "multiplier" applies sinc(eta y / 2); "quadrature" averages the
            t-symbol flow over `quad`; "expansion" sums the mixed-derivative
            series up to `order` terms
        order: Truncation order for "expansion", 1 <= order <= 12
        quad: Rule for "quadrature", 33-node Gauss-Legendre by default

    Raises:
        InputError: On an unknown method or an expansion order outside [1, 12]
    """
    match method:
        case "multiplier":
            return apply_bj_multiplier(a)
        case "quadrature":
            quad = quad or QuadratureRule.gauss_legendre()
            eta, y = a.grid.dual().mesh()
            s = eta * y
            multiplier = quad.average(lambda t: np.exp(1j * (t - 0.5) * s))
            return apply_multiplier(a, multiplier)
        case "expansion":
            if order is None or not 1 <= order <= MAX_EXPANSION_ORDER:
                raise InputError(
                    f"expansion order must be in [1, {MAX_EXPANSION_ORDER}], got {order}"
                )
            return apply_multiplier(a, expansion_multiplier(a.grid, order))
    raise InputError(f"unknown conversion method {method!r}")


def bj_to_shubin(a: PhaseSpaceArray, t: float) -> PhaseSpaceArray:
    """t-symbol b with Op_t(b) = Op_BJ(a); t = 0 gives the Kohn-Nirenberg symbol."""
    return weyl_to_shubin(bj_to_weyl(a, "multiplier"), t)


def differentiation_matrix(grid: Grid) -> np.ndarray:
    """Dense spectral matrix of D = -i d/dx."""
    n = grid.n_points
    xi = grid.dual().points
    identity = np.eye(n)
    spectra = centered_fft(identity, grid.spacing, axis=0)
    return centered_ifft(xi[:, None] * spectra, grid.dual_spacing, axis=0)


def monomial_bj_operator(m: int, l: int, grid: Grid) -> OperatorMatrix:
    """
    Born-Jordan quantization of x^m xi^l by the ordering rule
    (1 / (l + 1)) sum_{k=0}^{l} D^(l-k) x^m D^k.

    Raises:
        InputError: If m or l is negative or m + l > 6
    """
    if m < 0 or l < 0 or m + l > MAX_MONOMIAL_DEGREE:
        raise InputError(
            f"monomial degrees must be nonnegative with m + l <= {MAX_MONOMIAL_DEGREE}, got ({m}, {l})"
        )
    if grid.n_points > MAX_OPERATOR_POINTS:
        raise InputError(f"dense operators are limited to N <= {MAX_OPERATOR_POINTS}")

    position = np.diag(grid.points**m).astype(np.complex128)
    derivative = differentiation_matrix(grid)
    powers = [np.eye(grid.n_points, dtype=np.complex128)]
    for _ in range(l):
        powers.append(derivative @ powers[-1])

    total = np.zeros_like(position)
    for k in range(l + 1):
        total += powers[l - k] @ position @ powers[k]
    return OperatorMatrix(grid, total / (l + 1))


def duality_residual(a: PhaseSpaceArray, tau: float, f: Signal, g: Signal, oversample: int = 8) -> float:
    """
    |<Op_tau(a) f, g> - (2pi)^(-1/2) <a, W_tau(g, f)>| with Riemann-sum inner products.

    The second slot of each inner product is conjugated.
    """
    operator = quantize(a, SchemeSpec.shubin(tau))
    lhs = operator.apply(f).inner(g)
    rhs = a.inner(wigner_tau(g, f, tau, max(oversample, 2))) / np.sqrt(2.0 * np.pi)
    return float(abs(lhs - rhs))


def hermiticity_defect(matrix: OperatorMatrix) -> float:
    """||M - M^H||_F / max(||M||_F, eps)."""
    values = matrix.values
    scale = max(np.linalg.norm(values), np.finfo(float).eps)
    return float(np.linalg.norm(values - values.conj().T) / scale)
