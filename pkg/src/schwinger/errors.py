"""Exception hierarchy.

Every error carries a stable ``code`` used by the command line front end
when it reports failures as JSON.
"""


class SchwingerError(Exception):
    code = "SchwingerError"

    def __init__(self, detail=""):
        super().__init__(detail)
        self.detail = detail


class MalformedInput(SchwingerError, ValueError):
    code = "MalformedInput"


class DuplicateLabel(SchwingerError, ValueError):
    code = "DuplicateLabel"


class EmptyOutcomeSet(SchwingerError, ValueError):
    code = "EmptyOutcomeSet"


class IndexOutOfRange(SchwingerError, IndexError):
    code = "IndexOutOfRange"


class NotComposable(SchwingerError, ValueError):
    code = "NotComposable"


class OutcomeSetMismatch(SchwingerError, ValueError):
    code = "OutcomeSetMismatch"


class DimensionMismatch(SchwingerError, ValueError):
    code = "DimensionMismatch"


class NotOrthonormal(SchwingerError, ValueError):
    code = "NotOrthonormal"


class NotUnitary(SchwingerError, ValueError):
    code = "NotUnitary"


class ZeroVector(SchwingerError, ValueError):
    code = "ZeroVector"


class InvalidTomogram(SchwingerError, ValueError):
    code = "InvalidTomogram"


class NotInformationallyComplete(SchwingerError, ValueError):
    code = "NotInformationallyComplete"


class InconsistentTomograms(SchwingerError, ValueError):
    code = "InconsistentTomograms"


class EmptyCascade(SchwingerError, ValueError):
    code = "EmptyCascade"
