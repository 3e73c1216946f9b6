"""Exception types shared across the package."""


class NodeCutError(Exception):
    """Base class for all package-specific errors."""


class EdgeListError(NodeCutError):
    """Rejected edge-list input; carries the offending line number."""

    def __init__(self, message, line=None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class ZeroInternalDegree(NodeCutError):
    """The node set has no internal links, so the normalised node cut is undefined."""


class NotANeighbor(NodeCutError):
    """Node is not an external neighbor of the current subgraph."""


class NotAMember(NodeCutError):
    """Node is not a member of the current subgraph."""


class NoFrontier(NodeCutError):
    """The subgraph has no external neighbors left to add."""


class DisconnectedGraph(NodeCutError):
    """The input graph is not connected."""


class WeightedUnsupported(NodeCutError):
    """Operation is defined for unit-weight graphs only."""


class EmptyCut(NodeCutError):
    """Link set has zero total degree in the line graph."""


class TooLarge(NodeCutError):
    """Graph exceeds the exhaustive-enumeration cap."""


class EmptyUnion(NodeCutError):
    """Jaccard distance of two empty sets is undefined."""


class NoLowerCommunity(NodeCutError):
    """No community with a strictly lower cut value exists; stability is undefined."""


class OscillationError(NodeCutError):
    """A greedy run exceeded its phase budget without covering its component."""


class ReportError(NodeCutError):
    """A run report file is missing required structure."""
