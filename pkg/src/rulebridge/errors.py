"""Shared exception types. Data-level failures raise subclasses of RuleBridgeError
so the CLI can map them to exit code 1."""


class RuleBridgeError(Exception):
    """Base class for all engine-raised errors."""


class DataFormatError(RuleBridgeError):
    """An input file is missing, unparseable, or violates its declared schema."""


class ScorerUnavailableError(RuleBridgeError):
    """A remote scorer could not produce a valid score (transport, protocol,
    or invariant failure)."""


class RevisionConflictError(RuleBridgeError):
    """A document write supplied a revision that does not follow the stored one."""


class UnknownIdError(RuleBridgeError):
    """Lookup of a document id that is not in the store."""


class SyncError(RuleBridgeError):
    """Remote container synchronisation failed; may carry partial progress."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report
