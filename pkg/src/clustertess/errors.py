"""Exception hierarchy shared by all clustertess modules."""


class ClusterTessError(Exception):
    """Base class for all errors raised by this package."""


class DegenerateSimplex(ClusterTessError):
    """Vertices are affinely dependent within tolerance; no circumball exists."""


class UnsupportedDimension(ClusterTessError):
    """Operation is not implemented for this ambient dimension."""


class NotSimple(ClusterTessError):
    """A simple point configuration (all multiplicities one) was required."""


class BallsOverlap(ClusterTessError):
    """Site balls intersect; the barycentre map needs 2*epsilon below the site spacing."""


class TooFewPoints(ClusterTessError):
    """At least two points are needed."""


class NonSimplicialInput(ClusterTessError):
    """A cluster is not a discrete simplex; run the simplicial check first."""


class DuplicatePoints(ClusterTessError):
    """Chain vertices must be pairwise distinct."""


class EpsilonTooLarge(ClusterTessError):
    """Shift radius must stay below half the minimal lattice spacing."""


class AmbiguousDecomposition(ClusterTessError):
    """More than one integer pair matches the length within the tolerance."""


class ConfigError(ClusterTessError):
    """Invalid run configuration (CLI exit code 1)."""
