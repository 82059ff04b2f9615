"""Validated command configuration."""

import math
from enum import StrEnum
from pathlib import Path

from pydantic import BaseModel, Field, field_validator, model_validator


class Command(StrEnum):
    """CLI subcommands."""

    TRANSFORM = "transform"
    QUANTIZE = "quantize"
    APPLY = "apply"
    CONVERT = "convert"
    SCHATTEN = "schatten"
    GABOR_NORM = "gabor-norm"
    SEMINORM = "seminorm"
    REMAINDER_ORDER = "remainder-order"
    GHOST_DEMO = "ghost-demo"
    SELFCHECK = "selfcheck"


class RunConfig(BaseModel):
    """All numeric parameters of a run, checked before any computation starts."""

    command: Command

    # Paths
    input: Path | None = Field(None, description="Signal CSV input")
    window: Path | None = Field(None, description="Window CSV for the STFT")
    symbol: Path | None = Field(None, description="Symbol PSF1 input")
    operator: Path | None = Field(None, description="Operator OPM1 input")
    out: Path | None = Field(None, description="Output file")
    out_dir: Path | None = Field(None, description="Output directory for the ghost demo")
    dump: Path | None = Field(None, description="Gabor coefficient CSV dump")

    # Grid
    n: int = Field(256, ge=8, le=512, description="Grid size")
    dx: float = Field(0.125, gt=0, description="Grid spacing")

    # Transform / quantization
    kind: str = Field("wigner", description="stft | wigner | bj")
    scheme: str = Field("weyl", description="weyl | kn | shubin | bj")
    method: str = Field("multiplier", description="multiplier | quadrature | expansion")
    tau: float = Field(0.5, description="Shubin / Wigner parameter")
    nodes: int = Field(33, ge=1, le=1024, description="Gauss-Legendre nodes")
    oversample: int | None = Field(
        None, ge=1, le=64, description="Zero-padding factor; 8 for transforms, 1 for quantize"
    )
    cutoff: float = Field(0.25, ge=0, description="Gaussian cutoff fraction, 0 disables")
    order: int = Field(4, ge=1, le=12, description="Expansion order")

    # Norms
    p: float = Field(2.0, ge=1, description="Inner / Schatten exponent")
    q: float = Field(2.0, gt=0, description="Outer exponent")
    s: float = Field(0.0, description="Weight order")

    # Symbol classes
    metric: str = Field("shubin", description="shubin | hormander | sg")
    rho: float = Field(1.0, description="Metric rho")
    delta: float = Field(0.0, description="Metric delta")
    k: int = Field(2, ge=0, le=6, description="Seminorm order")
    lambdas: list[float] = Field(default_factory=lambda: [2.0, 4.0, 8.0])

    # Ghost demo
    omega1: float = Field(-6.0)
    omega2: float = Field(6.0)
    sigma: float = Field(2.0, gt=0)

    @field_validator("kind")
    @classmethod
    def validate_kind(cls, v):
        if v not in ("stft", "wigner", "bj"):
            raise ValueError(f"unknown transform kind {v!r}")
        return v

    @field_validator("scheme")
    @classmethod
    def validate_scheme(cls, v):
        if v not in ("weyl", "kn", "shubin", "bj"):
            raise ValueError(f"unknown scheme {v!r}")
        return v

    @field_validator("method")
    @classmethod
    def validate_method(cls, v):
        if v not in ("multiplier", "quadrature", "expansion"):
            raise ValueError(f"unknown conversion method {v!r}")
        return v

    @field_validator("metric")
    @classmethod
    def validate_metric(cls, v):
        if v not in ("shubin", "hormander", "sg"):
            raise ValueError(f"unknown metric preset {v!r}")
        return v

    @field_validator("n")
    @classmethod
    def validate_even(cls, v):
        if v % 2:
            raise ValueError("grid size must be even")
        return v

    @field_validator("tau", "dx", "s", "rho", "delta", "omega1", "omega2")
    @classmethod
    def validate_finite(cls, v):
        if not math.isfinite(v):
            raise ValueError("value must be finite")
        return v

    @field_validator("lambdas")
    @classmethod
    def validate_lambdas(cls, v):
        if len(v) < 2 or any(lam < 2 for lam in v):
            raise ValueError("need at least two dilation factors, each >= 2")
        return v

    @model_validator(mode="after")
    def validate_command_inputs(self):
        """Each command names the files it needs."""
        required = {
            Command.TRANSFORM: ("input", "out"),
            Command.QUANTIZE: ("symbol", "out"),
            Command.APPLY: ("operator", "input", "out"),
            Command.CONVERT: ("symbol", "out"),
            Command.SCHATTEN: ("operator",),
            Command.GABOR_NORM: ("symbol",),
            Command.SEMINORM: ("symbol",),
            Command.GHOST_DEMO: ("out_dir",),
        }.get(self.command, ())
        missing = [name for name in required if getattr(self, name) is None]
        if missing:
            flags = ", ".join(f"--{name.replace('_', '-')}" for name in missing)
            raise ValueError(f"{self.command.value} requires {flags}")
        if self.command == Command.TRANSFORM and self.kind != "stft" and (self.oversample or 2) < 2:
            raise ValueError("Wigner transforms need --oversample >= 2")
        if self.command == Command.REMAINDER_ORDER and self.order % 2:
            raise ValueError("remainder-order needs an even --order")
        if self.command == Command.GHOST_DEMO and abs(self.omega2 - self.omega1) * self.sigma < 4:
            raise ValueError("tones are not resolvable: need |omega2 - omega1| * sigma >= 4")
        if self.metric == "hormander" and not 0 <= self.delta <= self.rho <= 1:
            raise ValueError("hormander metric needs 0 <= delta <= rho <= 1")
        return self
