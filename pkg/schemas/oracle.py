"""Oracle requests and profile output."""

from pydantic import BaseModel, Field

from schemas.modules import ModuleFile


class OracleRequest(BaseModel):
    module: ModuleFile
    d_max: int = Field(ge=0, description="Highest degree to compute")
    threads: int | None = Field(default=None, ge=1)
    use_cache: bool = Field(default=True, description="Read and store degrees in the profile cache")


class OracleProfile(BaseModel):
    degrees: list[int]
    coefficients: list[int]
    primes: list[int]
    runtime_ms: float
    cached_degrees: list[int] = Field(default_factory=list)
