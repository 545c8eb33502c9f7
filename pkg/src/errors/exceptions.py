from typing import Any, Optional


class QOTError(Exception):
    """Base class for every error raised by the toolkit."""


class InputError(QOTError, ValueError):
    """The caller supplied data that violates an operation's precondition."""


class SolverError(QOTError, RuntimeError):
    """A numerical routine could not produce a valid result."""


class CheckFailure(QOTError):
    """A verification check did not hold."""


# --- measures -----------------------------------------------------------------
class NegativeWeight(InputError):
    pass


class LengthMismatch(InputError):
    pass


class EmptySupport(InputError):
    pass


class ZeroTotalMass(InputError):
    pass


class WeightsNotNormalized(InputError):
    pass


class AllZeroDensity(InputError):
    pass


class InvalidGrid(InputError):
    pass


class NonpositiveRadius(InputError):
    pass


class MissingDensityBounds(InputError):
    pass


class MissingGeometry(InputError):
    pass


# --- costs --------------------------------------------------------------------
class DimensionMismatch(InputError):
    pass


class NonFiniteCost(InputError):
    pass


class InvalidModulus(InputError):
    pass


class ZeroRadius(SolverError):
    pass


# --- dual core ------------------------------------------------------------------
class ZeroWeightCell(InputError):
    pass


class TOutOfRange(InputError):
    pass


# --- solvers ------------------------------------------------------------------
class StepSizeOutOfRange(InputError):
    pass


class ZeroWeights(InputError):
    pass


class MissingReference(InputError):
    pass


class NonFiniteIterate(SolverError):
    """Raised when an iterate leaves the finite reals; `trace` holds the rows recorded so far."""

    def __init__(self, message: str, trace: Optional[Any] = None):
        super().__init__(message)
        self.trace = trace


# --- constants ----------------------------------------------------------------
class COmegaLessThanOne(InputError):
    pass


class ReferenceNotOptimal(CheckFailure):
    pass


# --- spectral -----------------------------------------------------------------
class ROutOfRange(InputError):
    pass


class RSampleOutOfRange(InputError):
    pass


class SingularGram(SolverError):
    pass


# --- oracle -------------------------------------------------------------------
class InstanceTooLarge(InputError):
    pass


class InfeasibleMarginals(InputError):
    pass


# --- cli ----------------------------------------------------------------------
class ConfigError(InputError):
    pass
