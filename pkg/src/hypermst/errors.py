"""Exception types raised across the package."""


class HyperMSTError(Exception):
    """Base class for all package errors."""


class MalformedEdgeError(HyperMSTError, ValueError):
    """An edge has repeated vertices or the wrong arity."""


class VertexBoundsError(HyperMSTError, IndexError):
    """A vertex index lies outside ``[0, n)``."""


class EmptyUniverseError(HyperMSTError, ValueError):
    """A structure was requested over zero vertices."""


class ExhaustedUniverseError(HyperMSTError, ValueError):
    """More distinct edges were requested than the complete hypergraph has."""


class DomainError(HyperMSTError, ValueError):
    """An argument lies outside the domain of a function."""


class DistributionError(HyperMSTError, ValueError):
    """A weight distribution is inadmissible for the requested uniformity."""


class CheckpointRangeError(HyperMSTError, IndexError):
    """A checkpoint step count exceeds the trace length."""


class CapacityError(HyperMSTError, ValueError):
    """An exhaustive oracle was asked to search too large an instance."""


class NoSpanningSubgraphError(HyperMSTError, ValueError):
    """The given edges do not connect all vertices."""


class NumericalError(HyperMSTError, ArithmeticError):
    """A root finder or quadrature failed to meet its tolerance."""


class VerificationError(HyperMSTError, AssertionError):
    """A deterministic inequality or oracle equivalence was violated."""
