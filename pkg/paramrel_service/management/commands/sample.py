import math

from paramrel_service.common.rng import Stream
from paramrel_service.pipeline import (
    ZMode,
    encode_series,
    generate,
)
from paramrel_toolkit.data_kinds import DataKind

from ._base import RunCommand


class Command(RunCommand):
    help = "generate samples (samples.pgm) and the first sample's estimates per step (trajectory.pgm)"

    def add_run_arguments(self, parser):
        parser.add_argument("--n", type=int, help="number of samples (sample.n)")
        parser.add_argument(
            "--z-mode",
            choices=[_mode.value for _mode in ZMode],
            help="latent at each step: prior draws, encoder draws, or one fixed latent (sample.z_mode)",
        )
        parser.add_argument(
            "--z-index",
            type=int,
            help="fixed mode: example whose latent at probe.t_probe is held (sample.z_index)",
        )

    def handle_run(self, context, options):
        _config = context.config
        _n = options["n"] if options["n"] is not None else _config["sample.n"]
        _z_mode = ZMode(options["z_mode"] or _config["sample.z_mode"])
        _z_fixed = None
        if _z_mode is ZMode.FIXED:
            _index = (
                options["z_index"] if options["z_index"] is not None else _config["sample.z_index"]
            )
            _series = encode_series(
                context.model,
                context.schedule,
                context.example(_index)[None],
                context.streams.generator(Stream.REVERSE),
            )
            _z_fixed = _series[_config.t_probe][0]
        _generation = generate(
            context.model,
            context.schedule,
            _n,
            context.streams.generator(Stream.SAMPLE),
            _z_mode,
            z_fixed=_z_fixed,
        )
        context.write_grid("samples.pgm", _generation.samples, math.ceil(math.sqrt(_n)))
        _estimates = [_step.estimate[0] for _step in _generation.trajectory.steps]
        if context.model.kind is DataKind.DISCRETE:
            _estimates = [_probs[..., 1] for _probs in _estimates]
        context.write_grid("trajectory.pgm", _estimates, len(_estimates))
        self.stdout.write(f"{_n} samples ({_z_mode.value} latents) in {context.out_dir}")
