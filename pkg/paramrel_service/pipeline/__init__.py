"""procedures over a model: training, generation, reverse sampling and what builds on it"""

from .heatmap import (
    FlowHeatmap,
    export_flow_heatmap,
)
from .latents import (
    Interpolation,
    InterpolationMode,
    Traversal,
    interpolate,
    lerp,
    slerp,
    traverse,
)
from .reverse import (
    decode,
    encode_series,
    noise_code,
    reconstruct,
    reverse_sample,
)
from .sampling import (
    Generation,
    ZMode,
    generate,
)
from .training import (
    METRICS_HEADER,
    StepDraws,
    TrainConfig,
    TrainingResult,
    batch_objective,
    draw_step_noise,
    objective_grad_check,
    run_training,
    train_step,
)
from .trajectory import (
    Trajectory,
    TrajectoryStep,
)


__all__ = (
    "METRICS_HEADER",
    "FlowHeatmap",
    "Generation",
    "Interpolation",
    "InterpolationMode",
    "StepDraws",
    "TrainConfig",
    "TrainingResult",
    "Trajectory",
    "TrajectoryStep",
    "Traversal",
    "ZMode",
    "batch_objective",
    "decode",
    "draw_step_noise",
    "encode_series",
    "export_flow_heatmap",
    "generate",
    "interpolate",
    "lerp",
    "noise_code",
    "objective_grad_check",
    "reconstruct",
    "reverse_sample",
    "run_training",
    "slerp",
    "train_step",
    "traverse",
)
