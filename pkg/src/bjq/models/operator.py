"""Discretized operators, quantization schemes and singular spectra."""

from dataclasses import dataclass
from typing import Literal

import numpy as np

from bjq.core.errors import InputError
from bjq.models.grid import Grid, Signal
from bjq.models.kernels import QuadratureRule

MAX_OPERATOR_POINTS = 512


@dataclass(frozen=True, eq=False)
class OperatorMatrix:
    """
    Dense matrix M acting on samples: (Op f)(x_j) = sum_m M[j, m] f(x_m).

    The quadrature weight dx is folded into M.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=np.complex128, copy=True)
        n = self.grid.n_points
        if values.shape != (n, n):
            raise InputError(f"operator has shape {values.shape}, grid expects ({n}, {n})")
        if not np.all(np.isfinite(values)):
            raise InputError("operator contains non-finite entries")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def identity(cls, grid: Grid) -> "OperatorMatrix":
        return cls(grid, np.eye(grid.n_points))

    def apply(self, f: Signal) -> Signal:
        self.grid.require_match(f.grid, "operator and signal")
        return Signal(self.grid, self.values @ f.values)

    def adjoint(self) -> "OperatorMatrix":
        return OperatorMatrix(self.grid, self.values.conj().T)

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self.grid.require_match(other.grid, "operators")
        return OperatorMatrix(self.grid, self.values - other.values)

    def operator_norm(self) -> float:
        return float(np.linalg.norm(self.values, ord=2))


@dataclass(frozen=True)
class SchemeSpec:
    """
    Quantization rule.

    `shubin` carries the parameter t (0 is Kohn-Nirenberg, 1/2 is Weyl);
    `born_jordan` carries the rule that averages Shubin operators over t.
    """

    kind: Literal["shubin", "born_jordan"]
    t: float | None = None
    quad: QuadratureRule | None = None

    def __post_init__(self):
        if self.kind == "shubin" and (self.t is None or not np.isfinite(self.t)):
            raise InputError("shubin scheme needs a finite parameter t")
        if self.kind == "born_jordan" and self.quad is None:
            raise InputError("born_jordan scheme needs a quadrature rule")

    @classmethod
    def shubin(cls, t: float) -> "SchemeSpec":
        return cls("shubin", t=float(t))

    @classmethod
    def weyl(cls) -> "SchemeSpec":
        return cls.shubin(0.5)

    @classmethod
    def kohn_nirenberg(cls) -> "SchemeSpec":
        return cls.shubin(0.0)

    @classmethod
    def born_jordan(cls, quad: QuadratureRule | None = None) -> "SchemeSpec":
        return cls("born_jordan", quad=quad or QuadratureRule.gauss_legendre())

    @property
    def label(self) -> str:
        if self.kind == "born_jordan":
            return f"born_jordan(nodes={len(self.quad)})"
        if self.t == 0.5:
            return "weyl"
        if self.t == 0.0:
            return "kohn_nirenberg"
        return f"shubin(t={self.t:g})"


@dataclass(frozen=True, eq=False)
class SingularSpectrum:
    """Singular values sorted nonincreasing."""

    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.ndim != 1:
            raise InputError("singular values must form a vector")
        if np.any(values < 0) or np.any(np.diff(values) > 0):
            raise InputError("singular values must be nonnegative and nonincreasing")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    def __len__(self) -> int:
        return self.values.size
