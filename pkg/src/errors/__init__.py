from .exceptions import (
    QOTError,
    InputError,
    SolverError,
    CheckFailure,
    NegativeWeight,
    LengthMismatch,
    EmptySupport,
    ZeroTotalMass,
    WeightsNotNormalized,
    AllZeroDensity,
    InvalidGrid,
    NonpositiveRadius,
    MissingDensityBounds,
    MissingGeometry,
    DimensionMismatch,
    NonFiniteCost,
    InvalidModulus,
    ZeroRadius,
    ZeroWeightCell,
    TOutOfRange,
    StepSizeOutOfRange,
    ZeroWeights,
    MissingReference,
    NonFiniteIterate,
    COmegaLessThanOne,
    ReferenceNotOptimal,
    ROutOfRange,
    RSampleOutOfRange,
    SingularGram,
    InstanceTooLarge,
    InfeasibleMarginals,
    ConfigError,
)

__all__ = [
    "QOTError",
    "InputError",
    "SolverError",
    "CheckFailure",
    "NegativeWeight",
    "LengthMismatch",
    "EmptySupport",
    "ZeroTotalMass",
    "WeightsNotNormalized",
    "AllZeroDensity",
    "InvalidGrid",
    "NonpositiveRadius",
    "MissingDensityBounds",
    "MissingGeometry",
    "DimensionMismatch",
    "NonFiniteCost",
    "InvalidModulus",
    "ZeroRadius",
    "ZeroWeightCell",
    "TOutOfRange",
    "StepSizeOutOfRange",
    "ZeroWeights",
    "MissingReference",
    "NonFiniteIterate",
    "COmegaLessThanOne",
    "ReferenceNotOptimal",
    "ROutOfRange",
    "RSampleOutOfRange",
    "SingularGram",
    "InstanceTooLarge",
    "InfeasibleMarginals",
    "ConfigError",
]
