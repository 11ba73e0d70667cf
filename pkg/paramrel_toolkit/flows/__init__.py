"""input, sender, output and receiver distributions for continuous and discrete data,
with the bayesian update, its inverse, and the flow distribution
"""

from ._base import (
    BayesianFlow,
    SenderSample,
)
from .continuous import (
    ContinuousParams,
    bayes_update_continuous,
    flow_mean_continuous,
    inverse_update_continuous,
    kl_sender_receiver_continuous,
    prior_continuous,
    sample_flow_continuous,
    sample_sender_continuous,
)
from .discrete import (
    DiscreteParams,
    bayes_update_discrete,
    flow_mean_discrete,
    inverse_update_discrete,
    kl_sender_receiver_discrete_mc,
    one_hot,
    prior_discrete,
    receiver_log_density_discrete,
    sample_flow_discrete,
    sample_sender_discrete,
    sender_log_density_discrete,
    sender_mean_discrete,
)
from .families import (
    ContinuousFlow,
    DiscreteFlow,
    flow_for,
)


__all__ = (
    "BayesianFlow",
    "ContinuousFlow",
    "ContinuousParams",
    "DiscreteFlow",
    "DiscreteParams",
    "SenderSample",
    "bayes_update_continuous",
    "bayes_update_discrete",
    "flow_for",
    "flow_mean_continuous",
    "flow_mean_discrete",
    "inverse_update_continuous",
    "inverse_update_discrete",
    "kl_sender_receiver_continuous",
    "kl_sender_receiver_discrete_mc",
    "one_hot",
    "prior_continuous",
    "prior_discrete",
    "receiver_log_density_discrete",
    "sample_flow_continuous",
    "sample_flow_discrete",
    "sample_sender_continuous",
    "sample_sender_discrete",
    "sender_log_density_discrete",
    "sender_mean_discrete",
)
