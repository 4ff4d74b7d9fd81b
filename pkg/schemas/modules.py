"""Module files: diagonal modules over Γ and monomial modules over G."""

from typing import Annotated, Literal

from pydantic import BaseModel, Field, TypeAdapter

from schemas.groups import GroupSpec
from services.exceptions import MalformedInputError
from services.groups import AbelianGroup, CentralExtension, Character
from services.yd import DiagonalYD, MonomialYD


class DiagonalModuleSchema(BaseModel):
    """⊕ O_{g_i}^{χ_i}: one degree tuple and one character exponent tuple per basis vector."""

    kind: Literal["diagonal"] = "diagonal"
    factors: list[int] = Field(description="Invariant factors of the abelian group")
    degrees: list[list[int]]
    characters: list[list[int]] = Field(description="Exponent tuples; generator i maps to ζ_{f_i}^e_i")
    names: list[str] = Field(default_factory=list)

    def to_module(self) -> DiagonalYD:
        group = AbelianGroup(tuple(self.factors))
        return DiagonalYD(
            group,
            tuple(tuple(g) for g in self.degrees),
            tuple(Character(group, tuple(e)) for e in self.characters),
            tuple(self.names),
        )

    @classmethod
    def from_module(cls, module: DiagonalYD) -> "DiagonalModuleSchema":
        return cls(
            factors=list(module.group.invariant_factors),
            degrees=[list(g) for g in module.degrees],
            characters=[list(chi.exponents) for chi in module.characters],
            names=list(module.names),
        )


class MonomialModuleSchema(BaseModel):
    """Generator actions as permutations with phases mod ``root_order`` (1 = -1 when it is 2)."""

    kind: Literal["monomial"] = "monomial"
    group: GroupSpec
    degrees: list[int] = Field(description="Element indices of G")
    generators: list[int]
    perms: list[list[int]] = Field(description="perms[k][j]: image of basis vector j under generator k")
    phases: list[list[int]]
    root_order: int = 2
    names: list[str] = Field(default_factory=list)

    def to_module(self, extension: CentralExtension | None = None) -> MonomialYD:
        extension = extension or self.group.resolve()
        return MonomialYD(
            extension.group,
            tuple(self.degrees),
            tuple(self.generators),
            tuple(tuple(p) for p in self.perms),
            tuple(tuple(f) for f in self.phases),
            self.root_order,
            tuple(self.names),
        )

    @classmethod
    def from_module(cls, module: MonomialYD, group: GroupSpec) -> "MonomialModuleSchema":
        return cls(
            group=group,
            degrees=list(module.degrees),
            generators=list(module.generators),
            perms=[list(p) for p in module.perms],
            phases=[list(f) for f in module.phases],
            root_order=module.root_order,
            names=list(module.names),
        )


ModuleFile = Annotated[DiagonalModuleSchema | MonomialModuleSchema, Field(discriminator="kind")]

_module_file = TypeAdapter(ModuleFile)


def load_module(text: str) -> DiagonalYD | MonomialYD:
    """Parse a JSON module file."""
    try:
        document = _module_file.validate_json(text)
    except ValueError as e:
        raise MalformedInputError(f"Invalid module file: {e}") from e
    return document.to_module()
