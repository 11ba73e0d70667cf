import paramrel_toolkit.data_kinds
import paramrel_toolkit.flows.continuous
import paramrel_toolkit.flows.discrete
import paramrel_toolkit.model.config
import paramrel_toolkit.model.latent
import paramrel_toolkit.nn.layers
import paramrel_toolkit.nn.params
import paramrel_toolkit.nn.tensor
import paramrel_toolkit.objective
import paramrel_toolkit.schedules
from paramrel_toolkit.tests._doctest import load_doctests


load_tests = load_doctests(
    paramrel_toolkit.data_kinds,
    paramrel_toolkit.flows.continuous,
    paramrel_toolkit.flows.discrete,
    paramrel_toolkit.model.config,
    paramrel_toolkit.model.latent,
    paramrel_toolkit.nn.layers,
    paramrel_toolkit.nn.params,
    paramrel_toolkit.nn.tensor,
    paramrel_toolkit.objective,
    paramrel_toolkit.schedules,
)
