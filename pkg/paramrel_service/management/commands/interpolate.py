from paramrel_service.common.rng import Stream
from paramrel_service.pipeline import (
    InterpolationMode,
    interpolate,
)

from ._base import RunCommand


class Command(RunCommand):
    help = "decode a walk between the noise codes of two examples (interpolation.pgm)"

    def add_run_arguments(self, parser):
        parser.add_argument("--a", type=int, default=0, help="index of the first example")
        parser.add_argument("--b", type=int, default=1, help="index of the second example")
        parser.add_argument(
            "--mode",
            choices=[_mode.value for _mode in InterpolationMode],
            default=InterpolationMode.SLERP.value,
        )
        parser.add_argument("--steps", type=int, default=8, help="points on the walk, ends included")

    def handle_run(self, context, options):
        _result = interpolate(
            context.model,
            context.schedule,
            context.example(options["a"]),
            context.example(options["b"]),
            InterpolationMode(options["mode"]),
            options["steps"],
            context.streams.generator(Stream.REVERSE),
        )
        context.write_grid("interpolation.pgm", _result.outputs, options["steps"])
        self.stdout.write(
            f"{_result.mode.value} interpolation of examples {options['a']} and {options['b']}"
            f" over {options['steps']} points"
        )
