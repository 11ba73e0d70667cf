from paramrel_service.common.emit import write_csv
from paramrel_service.common.rng import Stream
from paramrel_service.evaluation import (
    OMITTED,
    probe_factors,
)
from paramrel_toolkit import exceptions

from ._base import RunCommand


PROBE_HEADER = ("metric", "value", "std", "config_hash")


class Command(RunCommand):
    """logistic probes of the encoder-mean latents at probe.t_probe, one per known factor

    each factor is split at the middle of its range; rows also carry a
    label-permuted control and the factor's linear informativeness
    (`NA` when the factor never varies)
    """

    help = "score how well latents predict the data's known factors (probe.csv)"

    def handle_run(self, context, options):
        if context.data.factors is None:
            raise exceptions.UsageError(
                "probing needs known factors: synthetic data or an IDX label file"
            )
        _model = context.model
        _t = context.config.t_probe
        _theta = _model.flow.flow_mean(context.data.samples, _t, context.schedule)
        _z = _model.encode(_theta, _t).mean.data
        _seed = int(context.streams.generator(Stream.PROBE).integers(2**31))
        _rows = probe_factors(
            _z,
            context.data.factors,
            context.data.factor_names,
            folds=context.config["probe.folds"],
            seed=_seed,
        )
        _hash = context.config.config_hash
        write_csv(
            PROBE_HEADER,
            [{**_row, "config_hash": _hash} for _row in _rows],
            context.output_path("probe.csv"),
        )
        for _row in _rows:
            _value = _row["value"]
            self.stdout.write(
                f"{_row['metric']}: {_value if _value == OMITTED else format(_value, '.4f')}"
            )
