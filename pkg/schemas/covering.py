"""Covering bundles and verification certificates."""

from pydantic import BaseModel, Field

from schemas.cartan import HilbertSchema
from schemas.groups import GroupSpec
from schemas.modules import DiagonalModuleSchema, MonomialModuleSchema
from services.covering import CoveringResult


class ConstructionRequest(BaseModel):
    group: GroupSpec
    type: str = Field(
        description="unramified:<diagram>, cn:<n>, f4 or disconnected:<plan>",
        examples=["unramified:A2", "cn:3", "f4", "disconnected:A3+0,1"],
    )


class CoveringBundle(BaseModel):
    """A covering with both module files, the folded Cartan data and the Hilbert series."""

    group: GroupSpec
    base: DiagonalModuleSchema
    symmetry: list[int] = Field(description="Involution on the summands of the base module, 0-based")
    covering: MonomialModuleSchema
    basis_change: list[list[int]] = Field(description="Columns are the x-basis in y-coordinates")
    orbits: list[list[int]]
    node_tags: list[str]
    cartan: list[list[int]]
    folded_cartan: list[list[int]]
    unfolded_type: str
    folded_type: str
    hilbert: HilbertSchema
    indecomposable: bool
    faithful: bool

    @classmethod
    def from_result(cls, result: CoveringResult) -> "CoveringBundle":
        group = GroupSpec.from_extension(result.extension)
        return cls(
            group=group,
            base=DiagonalModuleSchema.from_module(result.base),
            symmetry=list(result.symmetry),
            covering=MonomialModuleSchema.from_module(result.covering, group),
            basis_change=result.basis_change.astype(int).tolist(),
            orbits=[list(orbit) for orbit in result.orbits],
            node_tags=list(result.node_tags),
            cartan=result.cartan.tolist(),
            folded_cartan=result.folded_cartan.tolist(),
            unfolded_type=result.unfolded_type,
            folded_type=result.folded_type,
            hilbert=HilbertSchema.from_poly(result.hilbert),
            indecomposable=result.indecomposable,
            faithful=result.faithful,
        )


class CertificateCheck(BaseModel):
    name: str
    passed: bool
    detail: str = ""


class Certificate(BaseModel):
    passed: bool
    checks: list[CertificateCheck]


class VerifyRequest(BaseModel):
    bundle: CoveringBundle
    oracle_degree: int | None = Field(default=None, ge=0, description="Also compare the oracle prefix up to this degree")
