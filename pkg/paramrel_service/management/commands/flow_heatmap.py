from paramrel_service.common.emit import write_csv
from paramrel_service.common.rng import Stream
from paramrel_service.pipeline import export_flow_heatmap

from ._base import RunCommand


class Command(RunCommand):
    """tabulate the continuous flow distribution of one scalar input

    heatmap.csv holds (t, mu, log_density) per bin centre and step;
    trajectories.csv holds (trajectory, t, mu) for sequential update runs
    """

    help = "export the flow distribution of a scalar input as CSV"
    expects_trained_model = False

    def add_run_arguments(self, parser):
        parser.add_argument("--x0", type=float, help="the scalar input (heatmap.x0)")

    def handle_run(self, context, options):
        _config = context.config
        _x0 = options["x0"] if options["x0"] is not None else _config["heatmap.x0"]
        _heatmap = export_flow_heatmap(
            _x0,
            context.schedule,
            bins=_config["heatmap.bins"],
            n_trajectories=_config["heatmap.trajectories"],
            rng=context.streams.generator(Stream.HEATMAP),
        )
        write_csv(
            ("t", "mu", "log_density"),
            _heatmap.density_rows(),
            context.output_path("heatmap.csv"),
        )
        write_csv(
            ("trajectory", "t", "mu"),
            _heatmap.trajectory_rows(),
            context.output_path("trajectories.csv"),
        )
        self.stdout.write(
            f"{_heatmap.ts.size} steps x {_heatmap.centers.size} bins,"
            f" {_heatmap.trajectories.shape[0]} trajectories in {context.out_dir}"
        )
