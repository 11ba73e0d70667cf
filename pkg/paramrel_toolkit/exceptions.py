"""exception classes for paramrel_toolkit"""


class ParamrelToolkitException(Exception):
    """base class for paramrel_toolkit exceptions"""


###
# usage problems


class UsageError(ParamrelToolkitException):
    """called with arguments outside an operation's contract"""


class DimensionError(UsageError):
    """tensor shapes do not conform"""


class ConfigError(ParamrelToolkitException):
    """invalid configuration value (names the offending key)"""

    def __init__(self, key: str, message: str):
        super().__init__(f"{key}: {message}")
        self.key = key
        self.message = message


###
# numerical problems


class DataError(ParamrelToolkitException):
    """data values unusable (e.g. nonfinite sender sample)"""


class SingularInverse(ParamrelToolkitException):
    """inverse bayesian update would leave a non-positive precision"""


class UndefinedMetric(ParamrelToolkitException):
    """metric undefined for the given inputs (e.g. single-class labels)"""


class NonFiniteLoss(ParamrelToolkitException):
    """a loss term went nan or inf during training"""

    def __init__(self, breakdown):
        super().__init__(f"non-finite loss: {breakdown}")
        self.breakdown = breakdown
