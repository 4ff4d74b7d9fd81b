"""Worked examples, the summary table and Matsumoto counts."""

from dataclasses import asdict

from pydantic import BaseModel, Field

from schemas.cartan import HilbertSchema
from schemas.covering import Certificate, CoveringBundle
from schemas.groups import GroupSpec
from schemas.modules import MonomialModuleSchema
from services.registry import ExampleBundle, ExampleSpec, TableRow


class ExampleSummary(BaseModel):
    id: str
    group: str
    construction: str
    folded_type: str
    finer_type: str
    dimension_exponent: int
    twisted: bool

    @classmethod
    def from_spec(cls, spec: ExampleSpec) -> "ExampleSummary":
        return cls(
            id=spec.id,
            group=spec.preset,
            construction=spec.construction,
            folded_type=spec.folded_type,
            finer_type=spec.finer_type,
            dimension_exponent=spec.dimension_exponent,
            twisted=spec.twisted,
        )


class ExampleDetail(ExampleSummary):
    module: MonomialModuleSchema
    character_values: list[dict[str, int]] = Field(description="Constrained centralizer values per summand")
    expected: HilbertSchema
    covering: CoveringBundle
    faithful: bool

    @classmethod
    def from_bundle(cls, bundle: ExampleBundle) -> "ExampleDetail":
        return cls(
            **ExampleSummary.from_spec(bundle.spec).model_dump(),
            module=MonomialModuleSchema.from_module(bundle.module, GroupSpec.from_extension(bundle.extension)),
            character_values=list(bundle.character_values),
            expected=HilbertSchema.from_poly(bundle.expected),
            covering=CoveringBundle.from_result(bundle.covering),
            faithful=bundle.faithful,
        )


class ExampleCheck(BaseModel):
    id: str
    degree: int
    expected: list[int]
    observed: list[int]
    passed: bool
    certificate: Certificate


class TableRowSchema(BaseModel):
    family: str
    rank: str
    center: str
    covering: str
    dimension_exponent: str
    finer_type: str

    @classmethod
    def from_row(cls, row: TableRow) -> "TableRowSchema":
        return cls(**asdict(row))


class MatsumotoRequest(BaseModel):
    h2_group: int = Field(ge=1, description="|H²(G, k^×)|")
    h2_base: int = Field(ge=1, description="|H²(Γ, k^×)|")
    p: int = Field(default=2, ge=1, description="|[G,G]|")


class MatsumotoResponse(BaseModel):
    count: int
    nondiagonal: bool
