"""Diagonal split metrics on phase space, weights and named presets."""

from collections.abc import Callable
from dataclasses import dataclass
from typing import Literal

import numpy as np

from bjq.core.errors import InputError

PhaseFunction = Callable[[np.ndarray, np.ndarray], np.ndarray]


def japanese(*components) -> np.ndarray:
    """<u> = (1 + |u|^2)^(1/2)."""
    return np.sqrt(1.0 + sum(np.abs(c) ** 2 for c in components))


@dataclass(frozen=True)
class Metric:
    """
    g_X(y, eta) = y^2 / phi(X)^2 + eta^2 / psi(X)^2.

    Diagonal metrics have no off-diagonal term, so they are split by construction.
    """

    phi: PhaseFunction
    psi: PhaseFunction
    name: str = "custom"
    strongly_feasible: bool = False

    def scales(self, x, xi) -> tuple[np.ndarray, np.ndarray]:
        phi = np.broadcast_to(np.asarray(self.phi(x, xi), dtype=float), np.broadcast(x, xi).shape)
        psi = np.broadcast_to(np.asarray(self.psi(x, xi), dtype=float), np.broadcast(x, xi).shape)
        if np.any(phi <= 0) or np.any(psi <= 0):
            raise InputError(f"metric {self.name} has non-positive scales")
        return phi, psi

    def __call__(self, x, xi, y, eta) -> np.ndarray:
        phi, psi = self.scales(x, xi)
        return (y / phi) ** 2 + (eta / psi) ** 2

    @classmethod
    def euclidean(cls) -> "Metric":
        return cls(lambda x, xi: np.ones_like(x), lambda x, xi: np.ones_like(x), "euclidean", True)


@dataclass(frozen=True)
class WeightM:
    """Positive weight m(X) on phase space."""

    m: PhaseFunction

    def __call__(self, x, xi) -> np.ndarray:
        values = np.broadcast_to(np.asarray(self.m(x, xi), dtype=float), np.broadcast(x, xi).shape)
        if np.any(values <= 0) or not np.all(np.isfinite(values)):
            raise InputError("weight m must be positive and finite")
        return values

    @classmethod
    def japanese_power(cls, power: float) -> "WeightM":
        return cls(lambda x, xi: japanese(x, xi) ** power)


@dataclass(frozen=True)
class MetricPreset:
    """Named metric families: Shubin, Hormander S_{rho,delta} and SG."""

    kind: Literal["shubin", "hormander", "sg"]
    rho: float = 1.0
    delta: float = 0.0

    def __post_init__(self):
        if self.kind == "shubin" and not 0.0 < self.rho <= 1.0:
            raise InputError(f"shubin metric needs 0 < rho <= 1, got {self.rho}")
        if self.kind == "hormander" and not 0.0 <= self.delta <= self.rho <= 1.0:
            raise InputError(
                f"hormander metric needs 0 <= delta <= rho <= 1, got rho={self.rho}, delta={self.delta}"
            )

    def metric(self) -> Metric:
        rho, delta = self.rho, self.delta
        match self.kind:
            case "shubin":
                scale = lambda x, xi: japanese(x, xi) ** rho  # noqa: E731
                return Metric(scale, scale, f"shubin(rho={rho:g})", True)
            case "hormander":
                return Metric(
                    lambda x, xi: japanese(xi) ** (-delta) * np.ones_like(x),
                    lambda x, xi: japanese(xi) ** rho * np.ones_like(x),
                    f"hormander(rho={rho:g}, delta={delta:g})",
                    True,
                )
            case "sg":
                return Metric(
                    lambda x, xi: japanese(x) * np.ones_like(xi),
                    lambda x, xi: japanese(xi) * np.ones_like(x),
                    "sg",
                    True,
                )
        raise InputError(f"unknown metric preset {self.kind!r}")
