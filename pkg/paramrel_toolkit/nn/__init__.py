"""the numerical substrate: float64 tensors with reverse-mode gradients, layers, adam"""

from .gradcheck import grad_check
from .layers import (
    AdaGN,
    Linear,
    ada_gn,
    effective_groups,
    group_norm,
    linear_forward,
    silu,
    time_embed,
)
from .optim import (
    AdamState,
    adam_step,
)
from .params import ParamStore
from .tensor import (
    Tensor,
    as_tensor,
    backward,
    concat,
    matmul,
)


__all__ = (
    "AdaGN",
    "AdamState",
    "Linear",
    "ParamStore",
    "Tensor",
    "ada_gn",
    "adam_step",
    "as_tensor",
    "backward",
    "concat",
    "effective_groups",
    "grad_check",
    "group_norm",
    "linear_forward",
    "matmul",
    "silu",
    "time_embed",
)
