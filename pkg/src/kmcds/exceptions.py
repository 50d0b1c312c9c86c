"""Exception hierarchy shared by all solver stages."""


class KMCDSError(Exception):
    """Base class for every error raised by this package."""


class InvalidNodeError(KMCDSError, ValueError):
    """A node id does not belong to the graph."""


class InvalidRootError(KMCDSError, ValueError):
    """The requested root is not a terminal."""


class InvalidPairError(KMCDSError, ValueError):
    """A connectivity query was asked for a node and itself."""


class InvalidCandidateError(KMCDSError, ValueError):
    """A covering candidate is a terminal."""


class PreconditionError(KMCDSError, ValueError):
    """An operation was called outside its documented domain."""


class ParseError(KMCDSError, ValueError):
    """Malformed instance or solution text.

    ``lineno`` is 1-based, or ``None`` when the problem is not tied to a line.
    """

    def __init__(self, message, lineno=None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)


class InfeasibleError(KMCDSError):
    """No feasible solution exists for the requested subproblem."""


class CertificationError(KMCDSError):
    """A solver output failed its final feasibility check (internal bug guard)."""


class SizeLimitError(KMCDSError):
    """An exact routine was called on an instance above its hard size cap."""
