import paramrel_service.common.config
import paramrel_service.common.emit
import paramrel_service.common.rng
import paramrel_service.evaluation.metrics
import paramrel_service.evaluation.probes
import paramrel_service.pipeline.latents
from paramrel_toolkit.tests._doctest import load_doctests


# for some reason this variable name matters
load_tests = load_doctests(
    paramrel_service.common.config,
    paramrel_service.common.emit,
    paramrel_service.common.rng,
    paramrel_service.evaluation.metrics,
    paramrel_service.evaluation.probes,
    paramrel_service.pipeline.latents,
)
