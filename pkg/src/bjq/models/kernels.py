"""Averaging rules over the quantization parameter and the Born-Jordan multiplier."""

from dataclasses import dataclass

import numpy as np

from bjq.core.errors import InputError
from bjq.models.grid import PhaseGrid


@dataclass(frozen=True, eq=False)
class QuadratureRule:
    """Nodes and positive weights on [0, 1] whose weights sum to one."""

    nodes: np.ndarray
    weights: np.ndarray

    def __post_init__(self):
        nodes = np.array(self.nodes, dtype=float)
        weights = np.array(self.weights, dtype=float)
        if nodes.ndim != 1 or nodes.shape != weights.shape or nodes.size == 0:
            raise InputError("quadrature nodes and weights must be equal-length vectors")
        if np.any(nodes < 0.0) or np.any(nodes > 1.0):
            raise InputError("quadrature nodes must lie in [0, 1]")
        if np.any(weights <= 0.0):
            raise InputError("quadrature weights must be positive")
        if abs(weights.sum() - 1.0) > 1e-14:
            raise InputError(f"quadrature weights sum to {weights.sum()!r}, expected 1")
        nodes.setflags(write=False)
        weights.setflags(write=False)
        object.__setattr__(self, "nodes", nodes)
        object.__setattr__(self, "weights", weights)

    @classmethod
    def gauss_legendre(cls, n_nodes: int = 33) -> "QuadratureRule":
        """Gauss-Legendre rule mapped from [-1, 1] to [0, 1]."""
        if n_nodes < 1:
            raise InputError(f"need at least one quadrature node, got {n_nodes}")
        nodes, weights = np.polynomial.legendre.leggauss(n_nodes)
        weights = 0.5 * weights
        # Renormalize so the sum is one to the last bit
        weights = weights / weights.sum()
        return cls(0.5 * (nodes + 1.0), weights)

    def __len__(self) -> int:
        return self.nodes.size

    def average(self, func) -> complex | np.ndarray:
        """Weighted sum of func(t) over the nodes, accumulated in node order."""
        total = None
        for t, w in zip(self.nodes, self.weights, strict=True):
            term = w * func(float(t))
            total = term if total is None else total + term
        return total


@dataclass(frozen=True, eq=False)
class BJMultiplier:
    """Fourier-domain Born-Jordan kernel sinc(eta*y/2) on a dual phase grid."""

    grid: PhaseGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != self.grid.shape:
            raise InputError(f"multiplier has shape {values.shape}, grid expects {self.grid.shape}")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
