"""Domain types."""

from bjq.models.gabor import GaborCoefficients, Lattice, WeightSpec
from bjq.models.grid import Grid, PhaseGrid, PhaseSpaceArray, Signal
from bjq.models.kernels import BJMultiplier, QuadratureRule
from bjq.models.metric import Metric, MetricPreset, WeightM
from bjq.models.operator import OperatorMatrix, SchemeSpec, SingularSpectrum

__all__ = [
    # Grids
    "Grid",
    "Signal",
    "PhaseGrid",
    "PhaseSpaceArray",
    # Kernels
    "QuadratureRule",
    "BJMultiplier",
    # Operators
    "OperatorMatrix",
    "SchemeSpec",
    "SingularSpectrum",
    # Gabor
    "Lattice",
    "GaborCoefficients",
    "WeightSpec",
    # Symbol classes
    "Metric",
    "MetricPreset",
    "WeightM",
]
