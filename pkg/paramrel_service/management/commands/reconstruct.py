import numpy as np

from paramrel_service.common.emit import write_csv
from paramrel_service.common.rng import Stream
from paramrel_service.evaluation import (
    ReconstructionMetric,
    reconstruction_error,
)
from paramrel_service.pipeline import reconstruct
from paramrel_toolkit.data_kinds import DataKind

from ._base import RunCommand


class Command(RunCommand):
    """reverse-sample the first examples to their noise codes and decode them again

    each reverse chain starts from a flow draw at `t = 0` (the `reconstruct`
    stream); reconstruction.pgm alternates rows of originals and
    reconstructions; reconstruction.csv holds MSE (continuous) or bit
    accuracy (discrete)
    """

    help = "reconstruct examples through reverse sampling and decoding"

    def add_run_arguments(self, parser):
        parser.add_argument("--n", type=int, help="number of examples (sample.n)")
        parser.add_argument(
            "--z-step",
            type=int,
            help="decode every step with the latent the reverse chain recorded at this step",
        )

    def handle_run(self, context, options):
        _n = min(
            options["n"] if options["n"] is not None else context.config["sample.n"],
            context.data.samples.shape[0],
        )
        _x = context.data.samples[:_n]
        _xhat = reconstruct(
            context.model,
            context.schedule,
            _x,
            context.streams.generator(Stream.RECONSTRUCT),
            z_step=options["z_step"],
        )
        _metric = (
            ReconstructionMetric.MSE
            if context.model.kind is DataKind.CONTINUOUS
            else ReconstructionMetric.BIT_ACCURACY
        )
        _value = reconstruction_error(_x, _xhat, _metric)
        _columns = min(_n, 8)
        _blank = np.full((_columns, _x.shape[1]), context.value_range[0])
        _pairs = []
        for _start in range(0, _n, _columns):
            for _rows in (_x, _xhat):
                _chunk = _rows[_start : _start + _columns]
                _pairs.extend(_chunk)
                _pairs.extend(_blank[: _columns - len(_chunk)])
        context.write_grid("reconstruction.pgm", np.asarray(_pairs), _columns)
        write_csv(
            ("metric", "value", "std", "config_hash"),
            [(_metric.value, _value, "", context.config.config_hash)],
            context.output_path("reconstruction.csv"),
        )
        self.stdout.write(f"{_metric.value} {_value:.6f} over {_n} examples")
