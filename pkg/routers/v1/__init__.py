"""API v1 router aggregation."""

from fastapi import APIRouter

from routers.v1.algebra import router as algebra_router
from routers.v1.examples import router as examples_router
from routers.v1.oracle import router as oracle_router

# Create v1 API router
router = APIRouter(prefix="/v1")

# Include sub-routers
router.include_router(
    algebra_router,
    tags=["Algebra"],
)
router.include_router(
    oracle_router,
    prefix="/oracle",
    tags=["Oracle"],
)
router.include_router(
    examples_router,
    tags=["Examples"],
)
