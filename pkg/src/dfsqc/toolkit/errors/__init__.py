from dfsqc.toolkit.errors.custom_errors import (
    ClosureError,
    ConditioningError,
    ConfigError,
    CoverageError,
    DimensionError,
    EmptySubspaceError,
    InvalidParameterError,
    InvalidProbabilityError,
    LayoutError,
    NonHermitianError,
    NumericalContractError,
    TruncationError,
)
from dfsqc.toolkit.errors.exception import DfsqcException

__all__ = [
    "DfsqcException",
    "ConfigError",
    "NumericalContractError",
    "TruncationError",
    "ClosureError",
    "ConditioningError",
    "EmptySubspaceError",
    "DimensionError",
    "NonHermitianError",
    "LayoutError",
    "CoverageError",
    "InvalidProbabilityError",
    "InvalidParameterError",
]
