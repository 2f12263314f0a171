"""Exception hierarchy.

InputError covers everything caused by bad user input (malformed files,
degenerate point sets); the CLI maps it to exit code 2.  VerificationError
covers internal certificate failures (a construction whose claimed counts
could not be validated, a rearrangement that broke an invariant); the CLI
maps those, and any other unexpected exception, to exit code 1.
"""


class KedgesError(Exception):
    pass


class InputError(KedgesError):
    pass


class PointFileError(InputError):
    pass


class GeneralPositionError(InputError):
    """Raised when an operation requires general position and collinear
    triples exist; carries the offending index triples."""

    def __init__(self, message, triples=()):
        super().__init__(message)
        self.triples = tuple(triples)


class DirectionTieError(InputError):
    """Two point pairs span parallel lines and no tie-break was requested;
    carries the list of clashing pair groups."""

    def __init__(self, message, groups=()):
        super().__init__(message)
        self.groups = tuple(groups)


class VerificationError(KedgesError):
    pass


class RearrangementError(VerificationError):
    pass
