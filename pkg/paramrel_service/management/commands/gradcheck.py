from paramrel_service.common.emit import write_csv
from paramrel_service.common.exceptions import GradientCheckFailed
from paramrel_service.common.rng import Stream
from paramrel_service.pipeline import objective_grad_check
from paramrel_toolkit.data_kinds import DataKind

from ._base import RunCommand


TOLERANCE = 1e-4


class Command(RunCommand):
    """backprop against central differences through the full objective, per data kind

    gradcheck.csv holds (kind, max_relative_error)
    """

    help = "compare backprop with central differences through the full objective on a tiny model"
    expects_trained_model = False

    def handle_run(self, context, options):
        _rngs = context.streams.spawn(Stream.GRADCHECK, len(DataKind))
        _errors = {
            _kind.value: objective_grad_check(_kind, _rng)
            for _kind, _rng in zip(DataKind, _rngs)
        }
        write_csv(
            ("kind", "max_relative_error"),
            _errors.items(),
            context.output_path("gradcheck.csv"),
        )
        for _kind, _error in _errors.items():
            self.stdout.write(f"{_kind}: max relative error {_error:.3e}")
        _failed = [_kind for _kind, _error in _errors.items() if not _error < TOLERANCE]
        if _failed:
            raise GradientCheckFailed(
                f"gradient check above {TOLERANCE:g} for: {', '.join(_failed)}"
            )
