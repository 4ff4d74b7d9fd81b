"""Translate domain errors into HTTP responses."""

from fastapi import HTTPException

from services.exceptions import (
    CoveringNicholsError,
    CrossOracleError,
    InvariantViolationError,
    NumericIntegrityError,
    ResourceLimitError,
)

ERROR_RESPONSES = {
    413: {"description": "A configured size bound was exceeded"},
    422: {"description": "Malformed, unsupported or inadmissible input"},
    500: {"description": "Internal invariant or numeric integrity failure"},
}


def domain_http_error(error: CoveringNicholsError) -> HTTPException:
    if isinstance(error, ResourceLimitError):
        status = 413
    elif isinstance(error, (NumericIntegrityError, CrossOracleError, InvariantViolationError)):
        status = 500
    else:
        status = 422
    return HTTPException(
        status_code=status,
        detail=error.message,
        headers={"X-Error-Code": type(error).__name__},
    )
