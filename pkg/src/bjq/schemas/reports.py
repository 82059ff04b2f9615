"""Pydantic report schemas returned by diagnostics and printed by the CLI."""

from pydantic import BaseModel, Field


class DecayReport(BaseModel):
    """Singular-value decay summary."""

    size: int = Field(..., ge=0, description="Number of singular values")
    leading: float = Field(..., ge=0, description="Largest singular value")
    thresholds: list[float] = Field(..., description="Relative thresholds")
    indices: list[int] = Field(..., description="First index below each threshold")
    tail_fractions: list[float] = Field(..., description="Share of sum(s) from each index on")
    doubling_ratios: dict[int, float] = Field(
        default_factory=dict, description="s[2k] / s[k] for k in (8, 16, 32) when defined"
    )


class RemainderReport(BaseModel):
    """Scaling of the truncated Born-Jordan expansion remainder."""

    order: int = Field(..., ge=1, description="Expansion truncation order N")
    lambdas: list[float] = Field(..., description="Dilation factors")
    remainders: list[float] = Field(..., description="Sup-norm remainder per dilation")
    slope: float | None = Field(None, description="Least-squares slope of log r against log lambda")
    degenerate: bool = Field(False, description="All remainders at the noise floor")

    @property
    def expected_slope(self) -> float:
        return -4.0 * ((self.order + 1) // 2)


class GhostReport(BaseModel):
    """Cross-term ratios of the two-tone demo."""

    omega1: float
    omega2: float
    sigma: float
    rho_wigner: float = Field(..., description="Cross peak over auto peak, Wigner")
    rho_born_jordan: float = Field(..., description="Cross peak over auto peak, Born-Jordan")

    @property
    def suppression(self) -> float:
        return self.rho_born_jordan / self.rho_wigner


class CheckResult(BaseModel):
    """One row of the selfcheck table."""

    name: str
    passed: bool
    detail: str = ""
