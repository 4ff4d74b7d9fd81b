"""Oracle endpoint backed by the profile cache."""

import logging
from typing import Annotated

from fastapi import APIRouter, Depends, HTTPException
from sqlalchemy.orm import Session

from config.database import get_db
from routers.v1.errors import ERROR_RESPONSES, domain_http_error
from schemas.oracle import OracleProfile, OracleRequest
from services.exceptions import CoveringNicholsError
from services.oracle import profile
from services.profile_service import ProfileService

logger = logging.getLogger(__name__)

router = APIRouter()


@router.post(
    "/profile",
    response_model=OracleProfile,
    summary="Hilbert prefix of a module",
    description="Ranks of the quantum symmetrizers in degrees 0..d_max, reusing cached degrees.",
    responses=ERROR_RESPONSES,
)
def create_profile(
    request: OracleRequest,
    db: Annotated[Session, Depends(get_db)],
) -> OracleProfile:
    try:
        module = request.module.to_module()
        if not request.use_cache:
            return OracleProfile(**profile(module, request.d_max, request.threads))
        result = ProfileService(db).hilbert_profile(module, request.d_max, request.threads)
        db.commit()
        return result
    except HTTPException:
        db.rollback()
        raise
    except CoveringNicholsError as e:
        db.rollback()
        raise domain_http_error(e) from e
    except Exception as e:
        db.rollback()
        logger.exception("Unexpected error during oracle profile")
        raise HTTPException(
            status_code=500,
            detail=f"Internal server error: {str(e)}",
        ) from e
