"""Decoration serialization: Gram matrix rows and node vectors as bit lists."""

from pydantic import BaseModel, Field

from services.symplectic import Decoration, RootSystemReport


class DecorationSchema(BaseModel):
    diagram: str | None = None
    adjacency: list[list[int]]
    gram: list[list[int]] = Field(description="0/1 rows of the alternating form on F2^k")
    vectors: list[list[int]] = Field(description="φ(i) as a bit vector per node")
    coordinate_names: list[str] = Field(default_factory=list)
    rendered: list[str] = Field(default_factory=list, description="φ(i) as a sum of coordinate names")
    nullity: int
    valid: bool
    minimal: bool
    violations: list[str] = Field(default_factory=list, description="Node pairs whose pairing disagrees with adjacency")

    @classmethod
    def from_decoration(cls, decoration: Decoration, report: RootSystemReport) -> "DecorationSchema":
        return cls(
            diagram=decoration.diagram,
            adjacency=decoration.adjacency.astype(int).tolist(),
            gram=decoration.space.gram.astype(int).tolist(),
            vectors=decoration.vectors.astype(int).tolist(),
            coordinate_names=list(decoration.coordinate_names),
            rendered=decoration.describe(),
            nullity=decoration.space.nullity,
            valid=report.valid,
            minimal=report.minimal,
            violations=[f"{i + 1}-{j + 1}" for i, j in report.violations],
        )
