"""Exception taxonomy shared by the whole package.

The CLI maps these onto exit codes: InputError -> 1, CapacityError -> 2,
InternalInconsistencyError -> 3.
"""


class InputError(ValueError):
    """Malformed input or an unmet documented precondition."""


class CapacityError(InputError):
    """A desk-scale size cap was exceeded."""


class MoveError(InputError):
    """A reduction move was requested on a graph that does not admit it."""


class InternalInconsistencyError(RuntimeError):
    """The implementation contradicted itself; never a user error."""
