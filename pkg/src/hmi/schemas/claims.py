"""Claim, grid and report schemas for the verifier."""

from typing import Dict, List, Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

ClaimKind = Literal[
    "POINTWISE",
    "MONOTONE",
    "CONVEX",
    "CONCAVE",
    "ROOT_COUNT",
    "ROOT_LOCATE",
    "LIMIT",
    "IDENTITY",
    "TABLE_BOUNDS",
]
Relation = Literal["<", "<=", ">", ">=", "="]
Spacing = Literal["linear", "log", "log_left", "log_right"]
ArgMap = Literal["x", "reciprocal", "reflect"]
ClaimStatus = Literal["pass", "fail", "inconclusive"]


class GridSpec(BaseModel):
    """Sampling plan for one open interval."""

    a: float
    b: float
    n: int = Field(default=2000, ge=3)
    spacing: Spacing = "linear"
    endpoint_eps: float = Field(default=1e-4, ge=0.0)
    refine: int = Field(default=6, ge=0)

    @model_validator(mode="after")
    def _ordered(self) -> "GridSpec":
        if not self.a + self.endpoint_eps < self.b - self.endpoint_eps:
            raise ValueError(f"empty grid interval ({self.a}, {self.b})")
        return self


class Claim(BaseModel):
    """One verifiable assertion, possibly made of several parts.

    A claim with ``parts`` passes iff every non-advisory part passes; its own
    scan fields are then unused.
    """

    model_config = ConfigDict(frozen=True)

    id: str
    kind: ClaimKind
    anchor: str
    statement: str = ""

    lhs: Optional[str] = None
    rhs: Optional[str] = None
    rhs_value: Optional[float] = None
    rhs_arg: ArgMap = "x"
    rhs_sign: float = 1.0
    relation: Relation = "<"
    params: Dict[str, float] = {}

    domain: List[Tuple[float, float]] = []
    spacing: Spacing = "linear"
    eps: Optional[float] = None
    points: List[float] = []  # explicit sample points for spot identities
    direction: int = 1  # MONOTONE: +1 increasing, -1 decreasing
    skip_singular: bool = False
    singular_guard: Optional[str] = None  # denominator whose sign changes are excised

    # LIMIT
    endpoint: Optional[float] = None
    side: Literal["left", "right", "infinity"] = "right"
    expected: Optional[float] = None  # -inf allowed
    tol: float = 1e-3
    k_range: Tuple[int, int] = (1, 6)

    # ROOT_COUNT / ROOT_LOCATE
    poly_id: Optional[str] = None
    derivative: int = 0
    bracket: Optional[Tuple[float, Optional[float]]] = None
    expected_count: Optional[int] = None
    count_relation: Literal["=", ">="] = "="
    expected_sign: Optional[int] = None
    locate_upper: Optional[float] = None

    negate: bool = False
    advisory: bool = False
    notes: str = ""
    parts: List["Claim"] = []

    @property
    def strict(self) -> bool:
        return self.relation in ("<", ">")


class ClaimReport(BaseModel):
    """Outcome of one claim."""

    claim_id: str
    status: ClaimStatus
    kind: ClaimKind
    domain: List[float] = []
    grid: Dict[str, object] = {}
    min_margin: float
    argmin_x: Optional[float] = None
    points: int = 0
    paper_ref: str = ""
    notes: str = ""


class SuiteReport(BaseModel):
    """Aggregate over a claim selection."""

    status: Literal["pass", "fail"]
    total: int
    passed: int
    failed: int
    inconclusive: int
    claims: List[ClaimReport]
    disclaimer: str = (
        "high-confidence numerical verification on finite grids; not a proof"
    )
