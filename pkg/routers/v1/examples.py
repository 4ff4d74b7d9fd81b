"""Registered examples, the summary table and Matsumoto counts."""

import logging

from fastapi import APIRouter, HTTPException, Query

from routers.v1.errors import ERROR_RESPONSES, domain_http_error
from schemas.registry import (
    ExampleCheck,
    ExampleDetail,
    ExampleSummary,
    MatsumotoRequest,
    MatsumotoResponse,
    TableRowSchema,
)
from services.certificate import check_example
from services.exceptions import CoveringNicholsError
from services.registry import EXAMPLES, matsumoto_count, worked_example, summary_table

logger = logging.getLogger(__name__)

router = APIRouter()


@router.get("/examples", response_model=list[ExampleSummary], summary="List registered examples")
def list_examples() -> list[ExampleSummary]:
    return [ExampleSummary.from_spec(spec) for spec in EXAMPLES.values()]


@router.get(
    "/examples/{example_id}",
    response_model=ExampleDetail,
    summary="Build a registered example",
    responses=ERROR_RESPONSES,
)
def get_example(example_id: str) -> ExampleDetail:
    if example_id not in EXAMPLES:
        raise HTTPException(status_code=404, detail=f"Unknown example id: {example_id}")
    try:
        return ExampleDetail.from_bundle(worked_example(example_id))
    except CoveringNicholsError as e:
        raise domain_http_error(e) from e


@router.get(
    "/examples/{example_id}/check",
    response_model=ExampleCheck,
    summary="Check a registered example with the oracle",
    responses=ERROR_RESPONSES,
)
def get_example_check(
    example_id: str,
    degree: int | None = Query(default=None, ge=0, description="Highest degree; defaults per example"),
) -> ExampleCheck:
    if example_id not in EXAMPLES:
        raise HTTPException(status_code=404, detail=f"Unknown example id: {example_id}")
    try:
        return check_example(example_id, degree)
    except CoveringNicholsError as e:
        raise domain_http_error(e) from e


@router.get("/table", response_model=list[TableRowSchema], summary="Connected covering types by 2-rank and 2-center")
def get_table() -> list[TableRowSchema]:
    return [TableRowSchema.from_row(row) for row in summary_table()]


@router.post(
    "/matsumoto",
    response_model=MatsumotoResponse,
    summary="Size of the image of the Matsumoto map",
    responses=ERROR_RESPONSES,
)
def post_matsumoto(request: MatsumotoRequest) -> MatsumotoResponse:
    try:
        count = matsumoto_count(request.h2_group, request.h2_base, request.p)
    except CoveringNicholsError as e:
        raise domain_http_error(e) from e
    return MatsumotoResponse(count=count, nondiagonal=count > 1)
