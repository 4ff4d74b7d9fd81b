"""Schemas package."""

from schemas.cartan import CartanSchema, FoldRequest, FoldResponse, HilbertSchema
from schemas.common import ErrorResponse
from schemas.covering import Certificate, CertificateCheck, ConstructionRequest, CoveringBundle, VerifyRequest
from schemas.groups import ExtensionSummary, GroupSpec
from schemas.modules import DiagonalModuleSchema, ModuleFile, MonomialModuleSchema, load_module
from schemas.oracle import OracleProfile, OracleRequest

__all__ = [
    "CartanSchema",
    "FoldRequest",
    "FoldResponse",
    "HilbertSchema",
    "ErrorResponse",
    "Certificate",
    "CertificateCheck",
    "ConstructionRequest",
    "CoveringBundle",
    "VerifyRequest",
    "ExtensionSummary",
    "GroupSpec",
    "DiagonalModuleSchema",
    "ModuleFile",
    "MonomialModuleSchema",
    "load_module",
    "OracleProfile",
    "OracleRequest",
]
