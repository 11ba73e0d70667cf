import unittest

import numpy as np

from paramrel_service.evaluation import (
    OMITTED,
    SyntheticKind,
    auroc,
    binarize_factor,
    informativeness,
    latent_probe,
    make_synthetic,
    probe_factors,
    reconstruction_error,
)
from paramrel_toolkit import exceptions
from paramrel_toolkit.data_kinds import DataKind


class TestSynthetic(unittest.TestCase):
    def test_same_seed_same_data(self):
        _first = make_synthetic("blobs_continuous", 200, 3)
        _second = make_synthetic(SyntheticKind.BLOBS_CONTINUOUS, 200, 3)
        np.testing.assert_array_equal(_first.samples, _second.samples)
        np.testing.assert_array_equal(_first.factors, _second.factors)

    def test_factor_values_well_covered(self):
        for _kind in SyntheticKind:
            with self.subTest(_kind):
                _data = make_synthetic(_kind, 200, 0)
                self.assertEqual(_data.samples.shape, (200, 64))
                self.assertEqual(_data.factor_names, _kind.factor_names)
                for _column in _data.factors.T:
                    self.assertGreaterEqual(np.bincount(_column).min(), 20)

    def test_blob_intensity_shows(self):
        _data = make_synthetic(SyntheticKind.BLOBS_CONTINUOUS, 400, 1)
        self.assertIs(_data.data_kind, DataKind.CONTINUOUS)
        self.assertTrue(np.all((_data.samples >= -1) & (_data.samples <= 1)))
        _peaks = _data.samples.max(axis=1)
        _bright = _data.factor("intensity") == 1
        self.assertGreater(_peaks[_bright].mean() - _peaks[~_bright].mean(), 0.5)

    def test_shapes_are_binary(self):
        _data = make_synthetic(SyntheticKind.SHAPES_BINARY, 200, 2)
        self.assertIs(_data.data_kind, DataKind.DISCRETE)
        self.assertTrue(np.all(np.isin(_data.samples, (0, 1))))
        _lit = _data.samples.sum(axis=1)
        _square = _data.factor("shape") == 0
        np.testing.assert_array_equal(_lit[_square], 9)
        np.testing.assert_array_equal(_lit[~_square], 5)

    def test_errors(self):
        with self.assertRaises(exceptions.UsageError):
            make_synthetic("spirals", 200, 0)
        with self.assertRaises(exceptions.UsageError):
            make_synthetic(SyntheticKind.SHAPES_BINARY, 199, 0)
        with self.assertRaises(exceptions.UsageError):
            make_synthetic(SyntheticKind.SHAPES_BINARY, 200, 0).factor("colour")


class TestAuroc(unittest.TestCase):
    def test_perfect_and_tied(self):
        self.assertEqual(auroc([0.1, 0.2, 0.8, 0.9], [0, 0, 1, 1]), 1.0)
        self.assertEqual(auroc([0.9, 0.8, 0.2, 0.1], [0, 0, 1, 1]), 0.0)
        self.assertEqual(auroc([0.5, 0.5, 0.5, 0.5], [0, 1, 0, 1]), 0.5)

    def test_random_scores(self):
        _rng = np.random.default_rng(0)
        _value = auroc(_rng.normal(size=10_000), _rng.integers(0, 2, size=10_000))
        self.assertLess(abs(_value - 0.5), 0.02)

    def test_rank_invariance(self):
        _rng = np.random.default_rng(1)
        _scores = _rng.normal(size=300)
        _labels = (_scores + _rng.normal(size=300) > 0).astype(int)
        _value = auroc(_scores, _labels)
        self.assertEqual(auroc(np.exp(_scores), _labels), _value)
        self.assertEqual(auroc(3.0 * _scores - 7.0, _labels), _value)

    def test_errors(self):
        with self.assertRaises(exceptions.UndefinedMetric):
            auroc([0.1, 0.2], [1, 1])
        with self.assertRaises(exceptions.UsageError):
            auroc([0.1, 0.2], [0, 2])
        with self.assertRaises(exceptions.DimensionError):
            auroc([0.1, 0.2, 0.3], [0, 1])


class TestReconstructionError(unittest.TestCase):
    def test_metrics(self):
        self.assertEqual(reconstruction_error([[0.0, 1.0]], [[0.0, 1.0]], "mse"), 0.0)
        self.assertEqual(reconstruction_error([[0.0, 2.0]], [[1.0, 0.0]], "mse"), 2.5)
        self.assertEqual(
            reconstruction_error([[0, 1, 1, 0]], [[0, 1, 0, 0]], "bit_accuracy"), 0.75
        )

    def test_errors(self):
        with self.assertRaises(exceptions.DimensionError):
            reconstruction_error(np.zeros((2, 3)), np.zeros((3, 2)), "mse")
        with self.assertRaises(exceptions.UsageError):
            reconstruction_error([0.5, 1.0], [0, 1], "bit_accuracy")
        with self.assertRaises(ValueError):
            reconstruction_error([0, 1], [0, 1], "psnr")


class TestInformativeness(unittest.TestCase):
    def setUp(self):
        _rng = np.random.default_rng(2)
        self._factors = _rng.integers(0, 4, size=(2000, 2))
        self._noise = _rng.normal(size=(2000, 2))

    def test_identity_latent(self):
        _scores = informativeness(self._factors, self._factors, ["a", "b"])
        self.assertEqual([_s.factor for _s in _scores], ["a", "b"])
        for _score in _scores:
            self.assertGreater(_score.score, 0.99)

    def test_independent_latent(self):
        for _score in informativeness(self._noise, self._factors):
            self.assertLess(_score.score, 0.1)

    def test_decreases_with_noise(self):
        _scores = [
            informativeness(self._factors + _scale * self._noise, self._factors)[0].score
            for _scale in (0.1, 1.0, 10.0)
        ]
        self.assertGreater(_scores[0], _scores[1])
        self.assertGreater(_scores[1], _scores[2])

    def test_constant_factor_omitted(self):
        _factors = np.column_stack([self._factors[:, 0], np.full(2000, 3)])
        with self.assertLogs("paramrel_service.evaluation.metrics", "WARNING"):
            _scores = informativeness(self._noise, _factors, ["a", "flat"])
        self.assertFalse(_scores[0].omitted)
        self.assertTrue(_scores[1].omitted)


class TestLatentProbe(unittest.TestCase):
    def test_separable(self):
        _rng = np.random.default_rng(3)
        _labels = np.arange(400) % 2
        _z = _labels[:, None] + 0.01 * _rng.normal(size=(400, 1))
        _result = latent_probe(_z, _labels)
        self.assertEqual(_result.mean, 1.0)
        self.assertEqual(_result.std, 0.0)
        self.assertEqual(len(_result.fold_aurocs), 5)

    def test_noise_is_chance(self):
        _rng = np.random.default_rng(4)
        _result = latent_probe(_rng.normal(size=(2000, 2)), np.arange(2000) % 2, seed=1)
        self.assertGreaterEqual(_result.mean, 0.45)
        self.assertLessEqual(_result.mean, 0.55)

    def test_same_seed_same_folds(self):
        _rng = np.random.default_rng(5)
        _z, _labels = _rng.normal(size=(300, 2)), np.arange(300) % 2
        self.assertEqual(latent_probe(_z, _labels, seed=2), latent_probe(_z, _labels, seed=2))

    def test_errors(self):
        _z = np.zeros((150, 2))
        with self.assertRaises(exceptions.UsageError):
            latent_probe(_z, np.arange(150) % 2)
        with self.assertRaises(exceptions.UndefinedMetric):
            latent_probe(_z, np.ones(150))
        with self.assertRaises(exceptions.DimensionError):
            latent_probe(_z, np.arange(149) % 2)

    def test_binarize(self):
        np.testing.assert_array_equal(binarize_factor([0, 1, 2]), [0, 1, 1])
        np.testing.assert_array_equal(binarize_factor([5, 5]), [1, 1])


class TestProbeFactors(unittest.TestCase):
    def test_rows(self):
        _rng = np.random.default_rng(6)
        _factors = np.column_stack([np.arange(400) % 4, _rng.permutation(np.arange(400) % 4)])
        _z = _factors + 0.1 * _rng.normal(size=_factors.shape)
        _rows = probe_factors(_z, _factors, ("x", "y"))
        self.assertEqual(
            [_row["metric"] for _row in _rows],
            [
                "auroc_x",
                "auroc_x_permuted",
                "auroc_y",
                "auroc_y_permuted",
                "informativeness_x",
                "informativeness_y",
            ],
        )
        _by_metric = {_row["metric"]: _row for _row in _rows}
        self.assertGreater(_by_metric["auroc_x"]["value"], 0.95)
        self.assertLess(abs(_by_metric["auroc_x_permuted"]["value"] - 0.5), 0.15)
        self.assertEqual(_by_metric["informativeness_y"]["std"], "")

    def test_constant_factor_marked(self):
        _rng = np.random.default_rng(7)
        _factors = np.column_stack([np.arange(400) % 2, np.zeros(400, dtype=int)])
        with self.assertLogs("paramrel_service.evaluation", "WARNING"):
            _rows = probe_factors(_rng.normal(size=(400, 2)), _factors, ("x", "flat"))
        self.assertEqual(
            [_row["metric"] for _row in _rows],
            ["auroc_x", "auroc_x_permuted", "informativeness_x", "informativeness_flat"],
        )
        self.assertEqual(_rows[-1]["value"], OMITTED)
        self.assertIsInstance(_rows[-2]["value"], float)


if __name__ == "__main__":
    unittest.main()
