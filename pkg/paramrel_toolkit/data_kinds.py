import enum


@enum.unique
class DataKind(enum.Enum):
    """the two families of input distribution a flow can carry

    config files use the member values
    >>> DataKind("discrete")
    <DataKind.DISCRETE: 'discrete'>
    """

    CONTINUOUS = "continuous"
    """gaussian input distribution; parameters are a mean and a shared precision"""
    DISCRETE = "discrete"
    """categorical input distribution; parameters are per-dimension class probabilities"""
