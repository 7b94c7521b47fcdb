"""Kernel-related schemas."""

from typing import List, Optional

from pydantic import BaseModel, ConfigDict, Field, model_validator


class DigammaZero(BaseModel):
    """The unique positive zero of the digamma function."""

    x0: float = Field(gt=1.4, lt=1.5)
    residual: float = Field(ge=0.0)


class StieltjesTable(BaseModel):
    """Stieltjes constants gamma_0..gamma_N with per-entry error bounds."""

    model_config = ConfigDict(frozen=True)

    gamma: List[float]
    prec: List[float]
    digits: List[str] = []  # high-precision decimal strings, same order
    source: str = "euler-maclaurin"

    @model_validator(mode="after")
    def _check(self) -> "StieltjesTable":
        if len(self.gamma) < 11:
            raise ValueError("table must hold gamma_0..gamma_10 at least")
        if len(self.prec) != len(self.gamma):
            raise ValueError("prec must align with gamma")
        if self.digits and len(self.digits) != len(self.gamma):
            raise ValueError("digits must align with gamma")
        if any(p < 0 or p > 1e-10 for p in self.prec):
            raise ValueError("every entry needs an error bound <= 1e-10")
        if not 0.577215 < self.gamma[0] < 0.577216:
            raise ValueError("gamma[0] must be Euler's constant")
        return self

    @property
    def max_index(self) -> int:
        return len(self.gamma) - 1

    def decimal(self, n: int) -> str:
        """Best available decimal representation of gamma_n."""
        if self.digits:
            return self.digits[n]
        return repr(self.gamma[n])


class LaurentConfig(BaseModel):
    """Switch radius and truncation for the Laurent path around s=1."""

    model_config = ConfigDict(frozen=True)

    radius: float = Field(default=0.25, gt=0.0, lt=1.0)
    terms: int = Field(default=12, ge=8)
    pole_guard: float = Field(default=1e-8, gt=0.0)
    tail_limit: Optional[float] = 1e-12

    @model_validator(mode="after")
    def _tail_small(self) -> "LaurentConfig":
        # Imported lazily: the bound lives with the kernel that uses it.
        from hmi.services.laurent import laurent_tail_bound

        if self.tail_limit is not None:
            worst = max(
                laurent_tail_bound(self.radius, k, self.terms) for k in range(4)
            )
            if worst > self.tail_limit:
                raise ValueError(
                    f"tail bound {worst:.3e} at radius {self.radius} exceeds "
                    f"{self.tail_limit:.1e}; raise terms or shrink radius"
                )
        return self
