from paramrel_service.common.checkpoint import save_checkpoint
from paramrel_service.common.emit import write_csv
from paramrel_service.common.rng import Stream
from paramrel_service.pipeline import (
    METRICS_HEADER,
    TrainConfig,
    run_training,
)

from ._base import RunCommand
from ._context import (
    CHECKPOINT_NAME,
    METRICS_NAME,
)


class Command(RunCommand):
    """train a model; the run directory gets the resolved config, per-step metrics and
    the final checkpoint (with --run, training continues from that run's checkpoint)
    """

    help = "train a model on the configured data"
    expects_trained_model = False

    def handle_run(self, context, options):
        _train_config = TrainConfig.from_run_config(context.config)
        _out_dir = context.out_dir
        _result = run_training(
            context.model,
            context.schedule,
            context.data.samples,
            _train_config,
            context.streams.generator(Stream.TRAIN),
        )
        write_csv(METRICS_HEADER, _result.step_rows, context.output_path(METRICS_NAME))
        save_checkpoint(context.model.store, context.output_path(CHECKPOINT_NAME))
        _final = _result.epoch_means[-1].total if _result.epoch_means else float("nan")
        self.stdout.write(f"trained {_result.steps} steps; final epoch mean loss {_final:.6f}")
        self.stdout.write(self.style.SUCCESS(str(_out_dir)))
