"""Domain errors raised by kernels, polynomials and the claim verifier."""

from typing import Any, Dict, Iterable, Optional

from hmi.schemas.common import ErrorResponse


class HmiError(ValueError):
    """Base error carrying a stable code and structured details."""

    code = "error"

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.details: Dict[str, Any] = dict(details or {})

    def to_response(self) -> ErrorResponse:
        return ErrorResponse(
            error={"code": self.code, "message": self.message, "details": self.details}
        )


class DomainError(HmiError):
    """Argument outside the domain of a function."""

    code = "domain"


class PoleError(DomainError):
    code = "pole"


class HarmonicMeanPole(DomainError):
    """a + b vanishes (or the quotient overflows) in H(a, b)."""

    code = "harmonic_mean_pole"


class UnsupportedOrder(HmiError):
    code = "unsupported_order"


class UnsupportedIndex(HmiError):
    code = "unsupported_index"


class OutOfDisc(HmiError):
    """Laurent evaluation requested outside the configured radius."""

    code = "out_of_disc"


class MissingConstant(HmiError):
    code = "missing_constant"


class EndpointRoot(HmiError):
    code = "endpoint_root"


class CertificationFailure(HmiError):
    code = "certification_failure"


class BracketError(HmiError):
    code = "bracket"


class UnknownClaim(HmiError):
    code = "unknown_claim"

    def __init__(self, ids: Iterable[str]):
        unknown = sorted(set(ids))
        super().__init__(
            f"Unknown claim id(s): {', '.join(unknown)}", {"unknown": unknown}
        )
