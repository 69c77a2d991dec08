"""Exception types shared across the engine."""


class EngineError(Exception):
    """Base class for engine failures."""

    code = "engine"


class DatasetError(EngineError):
    """A dataset directory failed to load or validate."""

    code = "dataset"

    def __init__(self, message, path=None, line=None):
        if path is not None:
            suffix = f" ({path}:{line})" if line is not None else f" ({path})"
            message = message + suffix
        super().__init__(message)
        self.path = path
        self.line = line


class NotFoundError(EngineError):
    """A referenced node, edge, dataset or session does not exist."""

    code = "not_found"


class PreconditionError(EngineError):
    """An operation's precondition does not hold for the current state."""

    code = "precondition"


class OpError(EngineError):
    """An operation payload is malformed or names an unknown operation."""

    code = "validation"


class BatchOpError(OpError):
    """One operation in a batch failed; the whole batch was rolled back."""

    def __init__(self, message, op_index, code=None):
        super().__init__(message)
        self.op_index = op_index
        if code is not None:
            self.code = code
