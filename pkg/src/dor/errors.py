"""Exception types shared across the package.

Every error raised on bad input derives from DorError, so callers (the CLI
in particular) can distinguish data problems from genuine bugs.
"""

from __future__ import annotations


class DorError(Exception):
    """Base class for all data and workflow errors."""


class VocabularyError(DorError):
    """A token is outside a closed vocabulary (reuse kind, source type)."""


class ParseError(DorError):
    """A file row is structurally malformed; message names the line."""


class IntegrityError(DorError):
    """A uniqueness or cross-reference invariant is violated."""


class RangeError(DorError):
    """A numeric value is outside its legal range."""


class ReferentialError(DorError):
    """A row references a record that does not exist."""


class SequencingError(DorError):
    """A reading round arrived out of order for its paper."""


class NormalizationError(DorError):
    """Base class for identity canonicalization failures."""


class InvalidDoiError(NormalizationError):
    pass


class InvalidUrlError(NormalizationError):
    pass


class InvalidRepoError(NormalizationError):
    pass


class InvalidTitleError(NormalizationError):
    pass


class ShapeError(DorError):
    """A rating matrix violates its structural invariants."""


class CoverageError(DorError):
    """Too few reading rounds cover a paper for the requested statistic."""


class EmptyDataError(DorError):
    """A statistic was requested over an empty data set."""


class SyncError(DorError):
    """Issue-tracker synchronization stopped partway through.

    Carries the packet id at which the failure occurred and the report of
    the progress made before it.
    """

    def __init__(self, message: str, packet_id: int, report) -> None:
        super().__init__(message)
        self.packet_id = packet_id
        self.report = report
