"""Group specifications: a preset name or an explicit base with a cocycle table."""

import numpy as np
from pydantic import BaseModel, Field, model_validator

from services.groups import AbelianGroup, CentralExtension, Cocycle2, central_extension
from services.presets import PRESETS, preset_extension, resolve_extension


def _is_elementary(name: str | None) -> bool:
    return bool(name) and name.startswith("Z2^") and name[3:].isdigit()


class GroupSpec(BaseModel):
    """Exactly one of ``preset`` or (``factors``, ``cocycle``)."""

    preset: str | None = Field(
        default=None,
        description="Preset name (D4, Q8, Z2^n, D4xZ2, D4xZ2^2, D4cD4, Z2sqxD4, Z3xD4) or a cocycle file path",
    )
    factors: list[int] | None = Field(
        default=None,
        description="Invariant factors of the abelian base Γ",
    )
    cocycle: list[list[int]] | None = Field(
        default=None,
        description="|Γ| x |Γ| table of +1/-1, rows indexed by the first argument in canonical order",
    )
    name: str | None = Field(default=None, description="Display name of an explicit extension")

    @model_validator(mode="after")
    def check_one_form(self) -> "GroupSpec":
        explicit = self.factors is not None or self.cocycle is not None
        if (self.preset is None) == (not explicit):
            raise ValueError("Give either a preset or factors with a cocycle table")
        if explicit and (self.factors is None or self.cocycle is None):
            raise ValueError("An explicit group needs both factors and cocycle")
        return self

    def resolve(self) -> CentralExtension:
        if self.preset is not None:
            return resolve_extension(self.preset)
        group = AbelianGroup(tuple(self.factors))
        cocycle = Cocycle2(group, np.asarray(self.cocycle, dtype=np.int64))
        return central_extension(group, cocycle, self.name)

    @classmethod
    def from_extension(cls, extension: CentralExtension) -> "GroupSpec":
        name = extension.name
        if name in PRESETS or _is_elementary(name):
            preset = preset_extension(name)
            if np.array_equal(preset.cocycle.table, extension.cocycle.table):
                return cls(preset=name)
        return cls(
            factors=list(extension.base.invariant_factors),
            cocycle=extension.cocycle.table.astype(int).tolist(),
            name=name,
        )


class ExtensionSummary(BaseModel):
    """Invariants of a central extension {±1} → G → Γ."""

    name: str | None
    order: int
    base_factors: list[int]
    theta_star: int = Field(description="Index of the nontrivial central sign")
    center_order: int
    commutator_order: int
    stem: bool

    @classmethod
    def from_extension(cls, extension: CentralExtension) -> "ExtensionSummary":
        group = extension.group
        return cls(
            name=extension.name,
            order=group.order,
            base_factors=list(extension.base.invariant_factors),
            theta_star=extension.theta_star,
            center_order=len(group.center),
            commutator_order=len(group.commutator_subgroup),
            stem=extension.stem,
        )
