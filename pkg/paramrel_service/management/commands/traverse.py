from paramrel_service.common.rng import Stream
from paramrel_service.pipeline import traverse
from paramrel_service.pipeline.latents import TRAVERSAL_RANGE

from ._base import RunCommand


class Command(RunCommand):
    help = "sweep one latent coordinate of an example and decode each point (traversal.pgm)"

    def add_run_arguments(self, parser):
        parser.add_argument("--dim", type=int, default=0, help="latent coordinate to sweep")
        parser.add_argument("--min", dest="lo", type=float, default=TRAVERSAL_RANGE[0])
        parser.add_argument("--max", dest="hi", type=float, default=TRAVERSAL_RANGE[1])
        parser.add_argument("--m", dest="steps", type=int, default=7, help="points in the sweep")
        parser.add_argument("--index", type=int, default=0, help="example to traverse from")
        parser.add_argument(
            "--z-step", type=int, help="step whose reverse-chain latent is held (default T/2)"
        )

    def handle_run(self, context, options):
        _result = traverse(
            context.model,
            context.schedule,
            context.example(options["index"]),
            options["dim"],
            options["lo"],
            options["hi"],
            options["steps"],
            z_step=options["z_step"],
            rng=context.streams.generator(Stream.REVERSE),
        )
        context.write_grid("traversal.pgm", _result.outputs, options["steps"])
        self.stdout.write(
            f"latent {options['dim']} over [{options['lo']:g}, {options['hi']:g}]"
            f" in {options['steps']} points"
        )
