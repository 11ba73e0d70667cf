"""toy datasets with known factors and the scores computed against them"""

from .metrics import (
    FactorScore,
    ReconstructionMetric,
    auroc,
    informativeness,
    reconstruction_error,
)
from .probes import (
    OMITTED,
    ProbeResult,
    binarize_factor,
    latent_probe,
    probe_factors,
)
from .synthetic import (
    FactorDataset,
    SyntheticKind,
    make_synthetic,
)


__all__ = (
    "OMITTED",
    "FactorDataset",
    "FactorScore",
    "ProbeResult",
    "ReconstructionMetric",
    "SyntheticKind",
    "auroc",
    "binarize_factor",
    "informativeness",
    "latent_probe",
    "make_synthetic",
    "probe_factors",
    "reconstruction_error",
)
