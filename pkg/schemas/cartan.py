"""Cartan matrices, folding requests and Hilbert series."""

from pydantic import BaseModel, Field

from services.cartan import CartanMatrix, HilbertPoly


class CartanSchema(BaseModel):
    nodes: list[int] = Field(description="Node labels, 1-based")
    matrix: list[list[int]]
    type: str | None = None

    @classmethod
    def from_matrix(cls, cartan: CartanMatrix, label: str | None = None) -> "CartanSchema":
        return cls(nodes=list(range(1, cartan.size + 1)), matrix=cartan.tolist(), type=label)


class FoldRequest(BaseModel):
    cartan: list[list[int]]
    orbits: list[list[int]] = Field(description="Orbits of the diagram automorphism, 1-based node labels")


class FoldResponse(BaseModel):
    folded: CartanSchema
    unfolded_type: str


class HilbertSchema(BaseModel):
    """Hilbert polynomial as factors [N]_{t^h}^mult, its expansion and its value at 1."""

    factors: list[tuple[int, int, int]] = Field(description="(N, h, multiplicity) triples")
    factored: str
    coefficients: list[int]
    dimension: int
    dimension_exponent: int | None = None

    @classmethod
    def from_poly(cls, poly: HilbertPoly) -> "HilbertSchema":
        dimension = poly.at_one()
        exponent = dimension.bit_length() - 1 if dimension & (dimension - 1) == 0 else None
        return cls(
            factors=[tuple(f) for f in poly.factors],
            factored=poly.factored(),
            coefficients=list(poly.coefficients),
            dimension=dimension,
            dimension_exponent=exponent,
        )

    def to_poly(self) -> HilbertPoly:
        return HilbertPoly(tuple(tuple(f) for f in self.factors))
