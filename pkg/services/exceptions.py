"""Domain exceptions raised by the algebra services.

Routers map these onto HTTP status codes and the CLI maps them onto exit
codes; the services themselves never know about either.
"""


class CoveringNicholsError(Exception):
    """Base class for every error raised by the services package."""

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class MalformedInputError(CoveringNicholsError):
    """Input data has the wrong shape or cannot be parsed."""


class InvalidCocycleError(MalformedInputError):
    """A table is not a normalized 2-cocycle."""


class UnsupportedError(CoveringNicholsError):
    """Input is well-formed but outside the implemented setting."""


class UnsupportedCommutatorError(UnsupportedError):
    """The commutator subgroup is larger than Z2 where Z2 is required."""


class UnsupportedFoldingPatternError(UnsupportedError):
    """An orbit pair does not match one of the four folding cases."""


class NotFiniteCartanTypeError(CoveringNicholsError):
    """A q-matrix or Cartan matrix is not of finite type."""


class PreconditionError(CoveringNicholsError):
    """A documented precondition of an operation does not hold."""


class NoSymplecticRootSystemError(PreconditionError):
    """The 2-rank / 2-center of a group does not match the requested diagram."""


class InvariantViolationError(CoveringNicholsError):
    """A structural invariant failed on data produced or supplied."""


class InternalConsistencyError(CoveringNicholsError):
    """A state that the theory rules out was reached."""


class ResourceLimitError(CoveringNicholsError):
    """A configured size bound was exceeded."""


class NumericIntegrityError(CoveringNicholsError):
    """Modular ranks disagree across primes."""


class CrossOracleError(CoveringNicholsError):
    """The symmetrizer rank and the skew-derivation dimension disagree."""


class InconsistentCohomologyError(CoveringNicholsError):
    """Cohomology orders do not give an integral count."""
