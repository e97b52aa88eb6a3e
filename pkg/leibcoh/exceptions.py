class LeibcohError(ValueError):
    """Base class for all errors raised by leibcoh."""

    code = "error"


class ContractViolation(LeibcohError):
    """An argument has the wrong shape or type for the operation."""

    code = "contract_violation"


class ContainmentError(LeibcohError):
    """A subspace is not contained in the ambient space it was paired with."""

    code = "not_contained"


class WellDefinednessError(LeibcohError):
    """A linear map does not preserve the subspaces of a quotient."""

    code = "not_well_defined"


class UnsupportedKindError(LeibcohError):
    """The operation does not apply to this kind of algebra."""

    code = "unsupported_kind"


class GradingError(LeibcohError):
    """A structure constant violates degree additivity."""

    code = "grading"


class PreconditionError(LeibcohError):
    """A mathematical precondition of an operation failed."""

    code = "precondition"

    def __init__(self, message: str, code: str = None) -> None:
        super().__init__(message)
        if code is not None:
            self.code = code


class CatalogError(LeibcohError):
    """Unknown catalog entry, invalid parameters or mismatched algebra."""

    code = "catalog"


class Cancelled(LeibcohError):
    """A computation was cancelled through its cancellation token."""

    code = "cancelled"


class InputError(LeibcohError):
    """Base class for errors in user supplied files."""

    code = "input"


class MissingFileError(InputError):
    code = "missing_file"


class MalformedJSONError(InputError):
    code = "malformed_json"


class UnknownLabelError(InputError):
    code = "unknown_label"


class CoefficientError(InputError):
    code = "unparsable_coefficient"


class FormatError(InputError):
    code = "bad_format"


class WindowRelativeWarning(UserWarning):
    """A result was computed on a degree window and holds only relative to it."""
