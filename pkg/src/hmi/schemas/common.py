"""Common Pydantic schemas."""

import math
from typing import Any, Dict

from pydantic import BaseModel, Field, field_validator


class EvalResult(BaseModel):
    """A function value paired with an absolute-error estimate."""

    value: float
    est_error: float = Field(ge=0.0)

    @field_validator("value")
    @classmethod
    def _finite(cls, v: float) -> float:
        if not math.isfinite(v):
            raise ValueError("value must be finite")
        return v


class ErrorResponse(BaseModel):
    """Standard error response."""

    error: Dict[str, Any] = Field(
        ...,
        examples=[
            {
                "code": "pole",
                "message": "zeta has a pole at s=1",
                "details": {"s": 1.0},
            }
        ],
    )
