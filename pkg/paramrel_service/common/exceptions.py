"""exception classes for paramrel_service (file formats and artifacts)"""


class ParamrelServiceException(Exception):
    pass


class FormatError(ParamrelServiceException):
    """a binary file does not follow its format; `offset` is where reading failed"""

    def __init__(self, message: str, *, offset: int):
        super().__init__(f"{message} (at byte {offset})")
        self.offset = offset


class CheckpointCorrupted(FormatError):
    pass


class CheckpointMismatch(ParamrelServiceException):
    """a valid checkpoint whose tensors do not fit the model being restored"""


class EmitError(ParamrelServiceException):
    def __init__(self, path, reason: str):
        super().__init__(f"could not write {path}: {reason}")
        self.path = path


class GradientCheckFailed(ParamrelServiceException):
    pass
