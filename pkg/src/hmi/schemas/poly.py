"""Exact-polynomial schemas."""

from fractions import Fraction
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field

from hmi.services.poly import RationalPoly

NamedPolyId = Literal["P", "P_PRINTED", "Q", "P1", "V", "QUARTIC"]


class CoeffEnclosure(BaseModel):
    """Rational approximation of a real-coefficient polynomial."""

    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)

    poly_id: str
    poly: RationalPoly
    coeff_abs_err: Fraction = Fraction(0)


class Certificate(BaseModel):
    """Outcome of a Sturm sign certification on an interval."""

    poly_id: str
    interval: List[Optional[str]] = Field(min_length=2, max_length=2)
    root_count: int = Field(ge=0)
    sign: Literal[-1, 1]
    margin: float
    perturbation_bound: float = Field(ge=0.0)
    robust: bool
    upper_used: Optional[str] = None  # finite cut-off when the interval is unbounded
    endpoints_perturbed: bool = False
    method: Literal["sturm", "sturm+cauchy"] = "sturm"

    @property
    def status(self) -> str:
        return "robust" if self.robust else "nominal"


class CriticalValue(BaseModel):
    """Extremum of a polynomial located by exact bisection on its derivative."""

    poly_id: str
    x: float
    value: float
    bracket: List[str]
