"""Exception hierarchy.

Every domain error derives from :class:`ClusterFoldError`; the CLI reports
the class name and exits with status 2.
"""


class ClusterFoldError(Exception):
    """Base class for all domain errors."""

    @property
    def name(self) -> str:
        return type(self).__name__


# -- Cartan data / matrices -------------------------------------------------

class UnknownLabel(ClusterFoldError, ValueError):
    pass


class RankOutOfRange(ClusterFoldError, ValueError):
    pass


class InvalidCartanMatrix(ClusterFoldError, ValueError):
    pass


class NotFiniteType(ClusterFoldError, ValueError):
    pass


class NotSkewSymmetrizable(ClusterFoldError, ValueError):
    pass


class MalformedQuiver(ClusterFoldError, ValueError):
    pass


class NotBipartite(ClusterFoldError, ValueError):
    pass


class InvalidBipartition(ClusterFoldError, ValueError):
    pass


class DisconnectedDiagram(ClusterFoldError, ValueError):
    pass


class NotAutomorphism(ClusterFoldError, ValueError):
    pass


class NotAdmissible(ClusterFoldError, ValueError):
    pass


class NotSigmaStable(ClusterFoldError, ValueError):
    pass


class IndexOutOfRange(ClusterFoldError, IndexError):
    pass


# -- roots -------------------------------------------------------------------

class NotAlmostPositive(ClusterFoldError, ValueError):
    pass


class IncompleteOrbitClosure(ClusterFoldError, RuntimeError):
    pass


class NotSigmaStableSystem(ClusterFoldError, ValueError):
    pass


class OrbitConstancyViolation(ClusterFoldError, ValueError):
    pass


class NotInTargetSystem(ClusterFoldError, ValueError):
    pass


# -- clusters ------------------------------------------------------------------

class MatrixDiagramMismatch(ClusterFoldError, ValueError):
    pass


class InternalInconsistency(ClusterFoldError, RuntimeError):
    pass


class PathDependence(ClusterFoldError, RuntimeError):
    pass


class MaximalityAnomaly(ClusterFoldError, RuntimeError):
    pass


# -- folding -------------------------------------------------------------------

class OrbitAdjacent(ClusterFoldError, ValueError):
    pass


class SigmaStabilityLost(ClusterFoldError, RuntimeError):
    pass


class NotSigmaStableSeed(ClusterFoldError, ValueError):
    pass


# -- cli -------------------------------------------------------------------------

class IoFailure(ClusterFoldError, OSError):
    pass


class UsageError(ClusterFoldError, ValueError):
    pass
