import contextlib
import csv
import io
import shutil
import tempfile
from pathlib import Path
from unittest import mock

import numpy as np
from django.core.management import call_command
from django.core.management.base import CommandError
from django.test import SimpleTestCase

from paramrel_service.cli import main
from paramrel_service.common.checkpoint import MAGIC
from paramrel_service.common.config import parse_config
from paramrel_service.pipeline import reconstruct


_TINY_RUN = (
    "--set", "data.n=400",
    "--set", "train.epochs=1",
    "--set", "train.batch_size=100",
    "--set", "model.hidden=16",
    "--set", "model.latent_dim=2",
    "--set", "schedule.T=3",
)  # fmt: skip


def _main(*argv) -> tuple[int, str, str]:
    _stdout, _stderr = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(_stdout), contextlib.redirect_stderr(_stderr):
        _code = main(list(argv))
    return _code, _stdout.getvalue(), _stderr.getvalue()


def _call(name: str, *argv) -> str:
    _stdout = io.StringIO()
    call_command(name, *argv, stdout=_stdout, stderr=io.StringIO())
    return _stdout.getvalue()


def _rows(path: Path) -> list[list[str]]:
    with path.open(newline="") as _file:
        return list(csv.reader(_file))


class TestExitCodes(SimpleTestCase):
    def test_no_arguments(self):
        _code, _stdout, _ = _main()
        self.assertEqual(_code, 1)
        self.assertIn("flow_heatmap", _stdout)

    def test_help(self):
        self.assertEqual(_main("--help")[0], 0)

    def test_unknown_command(self):
        _code, _, _stderr = _main("deploy")
        self.assertEqual(_code, 1)
        self.assertIn("Unknown command", _stderr)

    def test_unknown_option(self):
        _code, _, _stderr = _main("train", "--bogus")
        self.assertEqual(_code, 1)
        self.assertIn("--bogus", _stderr)

    def test_unknown_config_key(self):
        _code, _, _stderr = _main("train", "--set", "nope=1")
        self.assertEqual(_code, 1)
        self.assertIn("nope", _stderr)

    def test_run_and_config_together(self):
        with tempfile.TemporaryDirectory() as _tmp:
            _code, _, _ = _main("probe", "--run", _tmp, "--config", f"{_tmp}/config.txt")
        self.assertEqual(_code, 1)

    def test_dashed_command_name(self):
        with tempfile.TemporaryDirectory() as _tmp:
            _code, _, _ = _main("flow-heatmap", "--x0", "0.5", "--out", _tmp)
            self.assertTrue((Path(_tmp) / "heatmap.csv").is_file())
        self.assertEqual(_code, 0)

    def test_bad_call_raises_usage_error(self):
        with self.assertRaises(CommandError) as _context:
            _call("train", "--bogus")
        self.assertEqual(_context.exception.returncode, 1)


class TestStandaloneCommands(SimpleTestCase):
    def setUp(self):
        self._tmp = tempfile.TemporaryDirectory()
        self.addCleanup(self._tmp.cleanup)
        self._out = Path(self._tmp.name)

    def test_gradcheck(self):
        _stdout = _call("gradcheck", "--seed", "7", "--out", self._out)
        self.assertIn("continuous: max relative error", _stdout)
        self.assertIn("discrete: max relative error", _stdout)
        _rows_out = _rows(self._out / "gradcheck.csv")
        self.assertEqual(_rows_out[0], ["kind", "max_relative_error"])
        self.assertEqual([_row[0] for _row in _rows_out[1:]], ["continuous", "discrete"])
        self.assertTrue((self._out / "config.txt").is_file())

    def test_flow_heatmap(self):
        _call("flow_heatmap", "--x0", "0.5", "--out", self._out)
        _density = _rows(self._out / "heatmap.csv")
        _paths = _rows(self._out / "trajectories.csv")
        self.assertEqual(_density[0], ["t", "mu", "log_density"])
        self.assertEqual(len(_density), 1 + 11 * 200)
        self.assertEqual(_density[1][0], "10")
        self.assertEqual(_paths[0], ["trajectory", "t", "mu"])
        self.assertEqual(len(_paths), 1 + 10 * 11)
        self.assertTrue((self._out / "config.txt").is_file())

    def test_flow_heatmap_needs_continuous_data(self):
        with self.assertRaises(CommandError) as _context:
            _call("flow_heatmap", "--set", "data.source=shapes_binary", "--out", self._out)
        self.assertEqual(_context.exception.returncode, 1)
        self.assertIn("continuous", str(_context.exception))


class TestTrainedRun(SimpleTestCase):
    @classmethod
    def setUpClass(cls):
        super().setUpClass()
        cls._tmp = tempfile.TemporaryDirectory()
        cls.run_dir = Path(cls._tmp.name) / "train"
        cls.train_stdout = _call("train", "--seed", "0", "--out", cls.run_dir, *_TINY_RUN)

    @classmethod
    def tearDownClass(cls):
        cls._tmp.cleanup()
        super().tearDownClass()

    def _out(self, name: str) -> Path:
        return Path(self._tmp.name) / name

    def _assert_run_config(self, out: Path):
        self.assertEqual(
            parse_config(out / "config.txt", []).config_hash,
            parse_config(self.run_dir / "config.txt", []).config_hash,
        )

    def test_training_writes_run(self):
        self.assertIn("trained 4 steps", self.train_stdout)
        for _name in ("config.txt", "metrics.csv", "checkpoint.prlc", "run.log"):
            self.assertTrue((self.run_dir / _name).is_file(), _name)
        _metrics = _rows(self.run_dir / "metrics.csv")
        self.assertEqual(
            _metrics[0], ["step", "flow_kl", "latent_rate", "mmd", "distortion", "total"]
        )
        self.assertEqual([_row[0] for _row in _metrics[1:]], ["1", "2", "3", "4"])

    def test_reconstruct(self):
        _stdout = _call(
            "reconstruct", "--run", self.run_dir, "--out", self._out("rec"), "--n", "4"
        )
        self.assertTrue(_stdout.startswith("mse "))
        _rows_out = _rows(self._out("rec") / "reconstruction.csv")
        self.assertEqual(_rows_out[0], ["metric", "value", "std", "config_hash"])
        self.assertEqual(_rows_out[1][0], "mse")
        self.assertTrue(
            (self._out("rec") / "reconstruction.pgm").read_bytes().startswith(b"P5\n")
        )
        self._assert_run_config(self._out("rec"))

    def test_reconstruct_starts_from_a_flow_draw(self):
        with mock.patch(
            "paramrel_service.management.commands.reconstruct.reconstruct", wraps=reconstruct
        ) as _reconstruct:
            _call("reconstruct", "--run", self.run_dir, "--out", self._out("drawn"), "--n", "2")
        self.assertIsInstance(_reconstruct.call_args.args[3], np.random.Generator)
        _call("reconstruct", "--run", self.run_dir, "--out", self._out("redrawn"), "--n", "2")
        self.assertEqual(
            (self._out("drawn") / "reconstruction.csv").read_bytes(),
            (self._out("redrawn") / "reconstruction.csv").read_bytes(),
        )

    def test_probe(self):
        _call("probe", "--run", self.run_dir, "--out", self._out("probe"))
        _metrics = [_row[0] for _row in _rows(self._out("probe") / "probe.csv")[1:]]
        self.assertIn("auroc_intensity", _metrics)
        self.assertIn("auroc_intensity_permuted", _metrics)
        self.assertIn("informativeness_x", _metrics)
        self._assert_run_config(self._out("probe"))

    def test_sample_and_walks(self):
        _cases = {
            "sample": ("--n", "4"),
            "interpolate": ("--a", "0", "--b", "1", "--steps", "3"),
            "traverse": ("--dim", "1", "--m", "3"),
        }
        _images = {
            "sample": "samples.pgm",
            "interpolate": "interpolation.pgm",
            "traverse": "traversal.pgm",
        }
        for _command, _options in _cases.items():
            with self.subTest(_command):
                _out = self._out(_command)
                _call(_command, "--run", self.run_dir, "--out", _out, *_options)
                self.assertTrue((_out / _images[_command]).is_file())
                self._assert_run_config(_out)

    def test_traverse_rejects_bad_dimension(self):
        with self.assertRaises(CommandError) as _context:
            _call("traverse", "--run", self.run_dir, "--out", self._out("bad"), "--dim", "5")
        self.assertEqual(_context.exception.returncode, 1)

    def test_broken_checkpoint_is_a_runtime_failure(self):
        _broken = self._out("broken")
        _broken.mkdir()
        shutil.copy(self.run_dir / "config.txt", _broken / "config.txt")
        (_broken / "checkpoint.prlc").write_bytes(MAGIC)
        _code, _, _stderr = _main(
            "probe", "--run", str(_broken), "--out", str(self._out("broken-probe"))
        )
        self.assertEqual(_code, 2)
        self.assertIn("checkpoint", _stderr)

    def test_same_seed_same_checkpoint(self):
        _again = self._out("again")
        _call("train", "--seed", "0", "--out", _again, *_TINY_RUN)
        for _name in ("checkpoint.prlc", "metrics.csv", "config.txt"):
            self.assertEqual(
                (_again / _name).read_bytes(), (self.run_dir / _name).read_bytes(), _name
            )
