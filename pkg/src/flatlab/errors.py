"""Exception types raised across the package."""


class FlatlabError(Exception):
    """Base class for all package-specific errors."""


# --- surface construction ---

class BadPairing(FlatlabError):
    """Half-edge twin/next pointers do not form a valid triangulation."""


class NonClosedTriangle(FlatlabError):
    """A triangle's three vectors do not sum to zero."""


class DegenerateTriangle(FlatlabError):
    """A triangle has non-positive signed area."""


class Disconnected(FlatlabError):
    """The gluing graph is not connected."""


# --- documents ---

class ParseError(FlatlabError):
    """A document could not be parsed."""


class ValidationError(FlatlabError):
    """A parsed document describes an invalid object."""


# --- scanning ---

class BoundTooLarge(FlatlabError):
    """The enumeration safety cap on developed triangles was exceeded."""


class NoConePoints(FlatlabError):
    """The surface has no cone point or marked point to scan from."""


# --- surgery ---

class NotSimpleZeros(FlatlabError):
    """The saddle connection does not join two distinct simple zeros."""


class NotOrderTwo(FlatlabError):
    """The cone point selected for opening does not have the required order."""


class GhostHitsSingularity(FlatlabError):
    """A ghost segment meets a cone point before reaching full length."""


class SegmentHitsSingularity(FlatlabError):
    """A traced geodesic segment meets a cone point before its endpoint."""


class Intersecting(FlatlabError):
    """Cut segments are not pairwise interior-disjoint."""


class SharedZero(FlatlabError):
    """Connections selected for simultaneous collapse share a zero."""


class SharedZeroMismatch(FlatlabError):
    """The two connections of a cherry do not share exactly one zero."""


class NotGeneric(FlatlabError):
    """The surface fails the genericity test required by the operation."""


# --- sampling ---

class SeedNotFound(FlatlabError):
    """No starting origami in the target stratum was found within budget."""


class DegenerationDuringPerturbation(FlatlabError):
    """A period perturbation flipped a triangle orientation."""


# --- statistics ---

class EmptySamples(FlatlabError):
    """An estimator was called with no samples."""


class DimensionMismatch(FlatlabError):
    """Sample vectors and moment orders have different lengths."""


class MixedStrata(FlatlabError):
    """An estimator requires all surfaces to come from one stratum."""
