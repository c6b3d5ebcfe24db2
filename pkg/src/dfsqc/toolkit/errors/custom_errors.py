from dfsqc.toolkit.errors.exception import DfsqcException


class ConfigError(DfsqcException):
    code = 2
    message = "Invalid configuration"


class NumericalContractError(DfsqcException):
    """A numerical guarantee (truncation, closure, conditioning, subspace weight) was violated"""

    code = 3
    message = "Numerical contract violated"


class TruncationError(NumericalContractError):
    message = "Fock space truncation violated"


class ClosureError(NumericalContractError):
    message = "Motional mode did not close"


class ConditioningError(NumericalContractError):
    message = "Ill-conditioned reconstruction system"


class EmptySubspaceError(NumericalContractError):
    message = "State has no weight in the decoherence-free subspace"

    def __init__(self, *, permanence: float, details: str | None = None) -> None:
        self.permanence = permanence
        super().__init__(details=details or f"permanence {permanence:.3e} below threshold")


class DimensionError(DfsqcException):
    message = "Dimension mismatch"


class NonHermitianError(DfsqcException):
    message = "Operator is not Hermitian"


class LayoutError(DfsqcException):
    message = "Invalid ion layout"


class CoverageError(DfsqcException):
    message = "Incomplete measurement settings"


class InvalidProbabilityError(DfsqcException):
    message = "Negative outcome probability"


class InvalidParameterError(DfsqcException):
    message = "Invalid parameter"
