import unittest

import numpy as np

from paramrel_toolkit import exceptions
from paramrel_toolkit.data_kinds import DataKind
from paramrel_toolkit.flows import (
    bayes_update_continuous,
    prior_continuous,
)
from paramrel_toolkit.schedules import (
    AccuracySchedule,
    alpha_at,
    beta_at,
    gamma_at,
    info_time,
)


class TestInfoTime(unittest.TestCase):
    def setUp(self):
        self._sched = AccuracySchedule(T=10, kind=DataKind.CONTINUOUS)

    def test_endpoints_and_midpoint(self):
        self.assertEqual(float(info_time(self._sched, 10)), 0.0)
        self.assertEqual(float(info_time(self._sched, 0)), 1.0)
        self.assertEqual(float(info_time(self._sched, 5)), 0.5)

    def test_out_of_range(self):
        for _t in (-1, 11):
            with self.assertRaises(exceptions.UsageError):
                info_time(self._sched, _t)
        with self.assertRaises(exceptions.UsageError):
            alpha_at(self._sched, 0)


class TestBeta(unittest.TestCase):
    def test_zero_at_prior(self):
        for _kind in DataKind:
            self.assertEqual(float(beta_at(AccuracySchedule(T=7, kind=_kind), 7)), 0.0)

    def test_continuous_closed_form(self):
        _sched = AccuracySchedule(T=4, kind=DataKind.CONTINUOUS, sigma1=0.5)
        self.assertAlmostEqual(float(beta_at(_sched, 0)), 3.0, places=12)

    def test_discrete_closed_form(self):
        _sched = AccuracySchedule(T=4, kind=DataKind.DISCRETE, beta1=4.0)
        self.assertEqual(float(beta_at(_sched, 2)), 1.0)

    def test_invalid_parameters(self):
        with self.assertRaises(exceptions.ConfigError):
            AccuracySchedule(T=0, kind=DataKind.CONTINUOUS)
        with self.assertRaises(exceptions.ConfigError):
            AccuracySchedule(T=5, kind=DataKind.CONTINUOUS, sigma1=1.5)
        with self.assertRaises(exceptions.ConfigError):
            AccuracySchedule(T=5, kind=DataKind.DISCRETE, beta1=0.0)


class TestAlpha(unittest.TestCase):
    def test_telescoping(self):
        _rng = np.random.default_rng(0)
        for _ in range(20):
            for _sched in (
                AccuracySchedule(
                    T=int(_rng.integers(1, 200)),
                    kind=DataKind.CONTINUOUS,
                    sigma1=float(_rng.uniform(0.001, 0.9)),
                ),
                AccuracySchedule(
                    T=int(_rng.integers(1, 200)),
                    kind=DataKind.DISCRETE,
                    beta1=float(_rng.uniform(0.1, 10.0)),
                ),
            ):
                _alphas = alpha_at(_sched, np.arange(1, _sched.T + 1))
                self.assertTrue(np.all(_alphas > 0))
                self.assertAlmostEqual(
                    float(np.sum(_alphas)), float(beta_at(_sched, 0)), delta=1e-10 * max(1.0, float(beta_at(_sched, 0)))
                )

    def test_discrete_difference_of_squares(self):
        _T, _c = 6, 0.25
        _sched = AccuracySchedule(T=_T, kind=DataKind.DISCRETE, beta1=_T * _T * _c)
        for _t in range(1, _T + 1):
            _i = _T - _t + 1
            self.assertAlmostEqual(float(alpha_at(_sched, _t)), _c * (2 * _i - 1), places=12)


class TestGamma(unittest.TestCase):
    def test_values(self):
        _sched = AccuracySchedule(T=4, kind=DataKind.CONTINUOUS, sigma1=0.5)
        self.assertEqual(float(gamma_at(_sched, 4)), 0.0)
        self.assertAlmostEqual(float(gamma_at(_sched, 0)), 0.75, places=12)

    def test_increases_as_steps_count_down(self):
        _sched = AccuracySchedule(T=50, kind=DataKind.CONTINUOUS)
        _gammas = gamma_at(_sched, np.arange(50, -1, -1))
        self.assertTrue(np.all(np.diff(_gammas) > 0))
        self.assertTrue(np.all(_gammas < 1))

    def test_discrete_has_no_gamma(self):
        with self.assertRaises(exceptions.UsageError):
            gamma_at(AccuracySchedule(T=4, kind=DataKind.DISCRETE), 2)


class TestPrecisionBookkeeping(unittest.TestCase):
    def test_updated_precision_matches_accumulated_accuracy(self):
        _sched = AccuracySchedule(T=10, kind=DataKind.CONTINUOUS)
        _rng = np.random.default_rng(1)
        _params = prior_continuous(3)
        for _t in _sched.steps:
            _params = bayes_update_continuous(_params, _rng.normal(size=3), alpha_at(_sched, _t))
            self.assertAlmostEqual(
                float(_params.rho), 1.0 + float(beta_at(_sched, _t - 1)), delta=1e-10 * float(_params.rho)
            )


if __name__ == "__main__":
    unittest.main()
