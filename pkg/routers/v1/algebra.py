"""Root systems, constructions, folding and certificates."""

import logging

from fastapi import APIRouter, HTTPException

from routers.v1.errors import ERROR_RESPONSES, domain_http_error
from schemas.cartan import CartanSchema, FoldRequest, FoldResponse
from schemas.covering import Certificate, ConstructionRequest, CoveringBundle, VerifyRequest
from schemas.symplectic import DecorationSchema
from services.cartan import CartanMatrix, fold, type_label
from services.certificate import certify
from services.constructions import construct
from services.exceptions import CoveringNicholsError
from services.symplectic import minimal_root_system, verify_root_system

logger = logging.getLogger(__name__)

router = APIRouter()


@router.get(
    "/root-systems/{diagram}",
    response_model=DecorationSchema,
    summary="Minimal symplectic root system",
    responses=ERROR_RESPONSES,
)
def get_root_system(diagram: str) -> DecorationSchema:
    """Return the verified minimal decoration of an ADE diagram."""
    try:
        decoration = minimal_root_system(diagram)
        return DecorationSchema.from_decoration(decoration, verify_root_system(decoration))
    except CoveringNicholsError as e:
        raise domain_http_error(e) from e


@router.post(
    "/constructions",
    response_model=CoveringBundle,
    summary="Build a covering",
    description="""
    Build the covering module of a diagonal module over the base group.

    Types: `unramified:<ADE label>`, `cn:<n>`, `f4`, `disconnected:<plan>`.
    """,
    responses=ERROR_RESPONSES,
)
def create_construction(request: ConstructionRequest) -> CoveringBundle:
    logger.info("Construction requested: group=%s type=%s", request.group.preset or request.group.name, request.type)
    try:
        result = construct(request.group.resolve(), request.type)
        return CoveringBundle.from_result(result)
    except HTTPException:
        raise
    except CoveringNicholsError as e:
        raise domain_http_error(e) from e
    except Exception as e:
        logger.exception("Unexpected error during construction")
        raise HTTPException(
            status_code=500,
            detail=f"Internal server error: {str(e)}",
        ) from e


@router.post(
    "/fold",
    response_model=FoldResponse,
    summary="Fold a Cartan matrix along automorphism orbits",
    responses=ERROR_RESPONSES,
)
def fold_cartan(request: FoldRequest) -> FoldResponse:
    try:
        cartan = CartanMatrix(request.cartan)
        folded = fold(cartan, [[node - 1 for node in orbit] for orbit in request.orbits])
        return FoldResponse(folded=CartanSchema.from_matrix(folded, type_label(folded)), unfolded_type=type_label(cartan))
    except CoveringNicholsError as e:
        raise domain_http_error(e) from e


@router.post(
    "/verify",
    response_model=Certificate,
    summary="Verify a covering bundle",
    description="Re-derive the covering and return the checklist; a failed check is reported, not raised.",
    responses=ERROR_RESPONSES,
)
def verify_bundle(request: VerifyRequest) -> Certificate:
    try:
        return certify(request.bundle, request.oracle_degree)
    except CoveringNicholsError as e:
        raise domain_http_error(e) from e
