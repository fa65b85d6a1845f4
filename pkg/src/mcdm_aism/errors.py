"""Exception hierarchy shared by every stage of the pipeline."""


class MCDMError(Exception):
    """Base class for data and contract errors raised by this package."""


class ParseError(MCDMError):
    pass


class DuplicateIdError(MCDMError):
    pass


class EmptyInputError(MCDMError):
    pass


class ShapeError(MCDMError):
    pass


class RangeError(MCDMError):
    pass


class DegenerateError(MCDMError):
    pass


class CycleError(MCDMError):
    pass


class NotFoundError(MCDMError):
    pass


class InternalError(MCDMError):
    """Broken invariant inside the package rather than bad input."""
