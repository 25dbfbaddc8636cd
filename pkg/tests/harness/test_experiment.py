

import os
import unittest

import numpy as np
from lxml import etree

from fracdiff import config, utils
from fracdiff.estimators.estimate_series import EstimatorKind
from fracdiff.harness.config import ExperimentConfig
from fracdiff.harness.csv_io import csv_read
from fracdiff.harness.experiment import run_experiment

BASELINES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "data", "baselines.xml")

MONOMIAL_EXPERIMENT = """<?xml version="1.0" encoding="utf-8"?>
<experiment schema_version="1">
    <signal name="monomial">
        <p>1</p>
    </signal>
    <grid>
        <t_start>0</t_start>
        <dt>0.01</dt>
        <count>201</count>
    </grid>{noise}
    <runs>
        <run>
            <kind>minimal_integer</kind>
            <alpha>1</alpha>
            <T>0.1</T>
        </run>
        <run>
            <kind>minimal_fractional</kind>
            <alpha>1</alpha>
            <T>0.1</T>
        </run>
        <run>
            <kind>affine_fractional</kind>
            <alpha>1.0005</alpha>
            <T>0.1</T>
        </run>
    </runs>
</experiment>
"""

SQRT_EXPERIMENT = """<?xml version="1.0" encoding="utf-8"?>
<experiment schema_version="1">
    <signal name="monomial">
        <p>0.5</p>
    </signal>
    <grid>
        <t_start>0</t_start>
        <dt>0.01</dt>
        <count>201</count>
    </grid>
    <runs>
        <run>
            <kind>minimal_integer</kind>
            <alpha>1</alpha>
            <T>0.1</T>
        </run>
        <run>
            <kind>minimal_fractional</kind>
            <alpha>1.5</alpha>
            <T>0.1</T>
        </run>
    </runs>
</experiment>
"""

NOISE = """
    <noise>
        <snr_db>30</snr_db>
        <seed>7</seed>
    </noise>"""


def monomial_config(noisy: bool = False):
    return ExperimentConfig.from_string(MONOMIAL_EXPERIMENT.format(noise=NOISE if noisy else ""))


class TestRunExperimentMonomial(unittest.TestCase):
    def setUp(self):
        self.temp = utils.TempDirectoryPath()
        self.directory = self.temp.__enter__()

    def tearDown(self):
        self.temp.__exit__(None, None, None)

    def test_run_experiment___linear_signal___first_order_estimates_exact_to_trapezoid(self):
        result = run_experiment(monomial_config(), output_directory=self.directory)
        integer, fractional = result.runs[0], result.runs[1]

        self.assertFalse(integer.failed)
        self.assertEqual(integer.metrics.lag_samples, 0)
        self.assertAlmostEqual(integer.metrics.rmse_aligned, 2.0 / 10 ** 2, places=9)

        self.assertFalse(fractional.failed)
        self.assertTrue(fractional.reference.converged)
        self.assertAlmostEqual(fractional.metrics.rmse_aligned, 2.0 / 10 ** 2, places=9)
        self.assertLessEqual(fractional.metrics.lag_samples, fractional.metrics.max_shift)

    def test_run_experiment___startup_interval___excluded_from_metrics(self):
        result = run_experiment(monomial_config(), output_directory=self.directory)
        integer = result.runs[0]
        self.assertEqual(integer.reference.excluded_count, 50)
        # 191 estimates anchored at 0 .. 1.9, of which 0 .. 0.49 precede the startup time
        self.assertEqual(integer.metrics.count, 141)
        self.assertEqual(csv_read(os.path.join(integer.directory, "reference.csv")).count, 201)

    def test_run_experiment___derivative_unbounded_at_start___failed_runs_reported(self):
        result = run_experiment(ExperimentConfig.from_string(SQRT_EXPERIMENT), output_directory=self.directory)
        self.assertEqual(len(result.failed_runs), 2)
        for run in result.runs:
            self.assertIn("InvalidSignal", run.error)
            self.assertIsNone(run.metrics)

    def test_run_experiment___near_integer_affine___failed_run_reported(self):
        result = run_experiment(monomial_config(), output_directory=self.directory)
        failed = result.runs[2]
        self.assertTrue(failed.failed)
        self.assertIn("NearIntegerOrder", failed.error)
        self.assertIsNone(failed.metrics)
        self.assertEqual(result.failed_runs, [failed])

        metrics = etree.parse(os.path.join(failed.directory, "metrics.xml")).getroot()
        self.assertEqual(metrics.get("status"), "failed")
        report = etree.parse(result.report_path).getroot()
        self.assertEqual(report.find("runs").get("failed"), "1")
        self.assertEqual([run.get("status") for run in report.find("runs")], ["ok", "ok", "failed"])

    def test_run_experiment___output_tree___expected_files(self):
        result = run_experiment(monomial_config(noisy=True), output_directory=self.directory)
        files = utils.list_file_paths(self.directory, absolute=False)
        for name in (
            "report.xml",
            "signal_clean.csv",
            "signal_noisy.csv",
            os.path.join("run_0_minimal_integer_a1_T0.1", "estimate.csv"),
            os.path.join("run_0_minimal_integer_a1_T0.1", "reference.csv"),
            os.path.join("run_0_minimal_integer_a1_T0.1", "metrics.xml"),
            os.path.join("run_2_affine_fractional_a1.0005_T0.1", "metrics.xml"),
        ):
            self.assertIn(name, files)
        self.assertAlmostEqual(result.achieved_snr_db, 30.0, places=6)
        self.assertEqual(csv_read(os.path.join(self.directory, "signal_clean.csv")).count, 201)
        self.assertEqual(csv_read(os.path.join(self.directory, "run_0_minimal_integer_a1_T0.1", "estimate.csv")).count, 191)

    def test_run_experiment___repeated___byte_identical_outputs(self):
        with utils.TempDirectoryPath() as other:
            run_experiment(monomial_config(noisy=True), output_directory=self.directory)
            run_experiment(monomial_config(noisy=True), output_directory=other, workers=3)
            files = utils.list_file_paths(self.directory, absolute=False)
            self.assertEqual(files, utils.list_file_paths(other, absolute=False))
            for name in files:
                with open(os.path.join(self.directory, name), "rb") as a, open(os.path.join(other, name), "rb") as b:
                    self.assertEqual(a.read(), b.read(), msg=name)

    def test_run_experiment___bad_workers___raises_TypeError(self):
        with self.assertRaises(TypeError):
            run_experiment(monomial_config(), output_directory=self.directory, workers=0)


class TestRunExperimentNoisyExpSin(unittest.TestCase):
    """ exp(0.2 t) sin(5 t) with the half and 0.7 order estimators: the affine estimator trades bias for a shorter delay. """

    @classmethod
    def setUpClass(cls):
        cls.temp = utils.TempDirectoryPath()
        directory = cls.temp.__enter__()
        path = os.path.join(config.experiments_directory, "noisy_exp_sin.xml")

        cls.noisy = run_experiment(ExperimentConfig.from_string(path), output_directory=os.path.join(directory, "noisy"))
        clean_config = ExperimentConfig.from_string(path).remove_section("noise")
        cls.clean = run_experiment(clean_config, output_directory=os.path.join(directory, "clean"))

    @classmethod
    def tearDownClass(cls):
        cls.temp.__exit__(None, None, None)

    def _runs(self, result, alpha):
        runs = {run.spec.kind: run for run in result.runs if run.spec.params.alpha == alpha}
        return runs[EstimatorKind.MINIMAL_FRACTIONAL], runs[EstimatorKind.AFFINE_FRACTIONAL]

    def test_noisy_exp_sin___all_runs___succeed_with_converged_references(self):
        for result in (self.clean, self.noisy):
            self.assertEqual(result.failed_runs, [])
            for run in result.runs:
                self.assertTrue(run.reference.converged, msg=run.spec.label)
                self.assertTrue(run.metrics.ok, msg=run.spec.label)

    def test_noisy_exp_sin___noise___calibrated(self):
        self.assertIsNone(self.clean.achieved_snr_db)
        self.assertAlmostEqual(self.noisy.achieved_snr_db, 28.07, places=6)

    def test_noisy_exp_sin___clean___affine_lead_shorter_than_minimal(self):
        for alpha in (0.5, 0.7):
            minimal, affine = self._runs(self.clean, alpha)
            self.assertLess(affine.metrics.lag_samples, minimal.metrics.lag_samples, msg=f"alpha={alpha}")

    def test_noisy_exp_sin___noisy___affine_lead_shorter_than_minimal(self):
        for alpha in (0.5, 0.7):
            minimal, affine = self._runs(self.noisy, alpha)
            self.assertLess(affine.metrics.lag_samples, minimal.metrics.lag_samples, msg=f"alpha={alpha}")

    def test_noisy_exp_sin___clean___affine_smaller_raw_error(self):
        for alpha in (0.5, 0.7):
            minimal, affine = self._runs(self.clean, alpha)
            self.assertLess(affine.metrics.rmse_raw, minimal.metrics.rmse_raw, msg=f"alpha={alpha}")

    def test_noisy_exp_sin___clean___within_recorded_baselines(self):
        experiment = etree.parse(BASELINES).getroot().find("experiment")
        tolerance = float(experiment.get("tolerance"))
        runs = {(run.spec.kind.value, run.spec.params.alpha): run for run in self.clean.runs}
        for baseline in experiment.iter("run"):
            run = runs[(baseline.get("kind"), float(baseline.get("alpha")))]
            limit = float(baseline.get("rmse_aligned")) * (1.0 + tolerance)
            self.assertLessEqual(run.metrics.rmse_aligned, limit, msg=run.spec.label)

    def _noise_response(self, run, clean_run):
        noisy = csv_read(os.path.join(run.directory, "estimate.csv")).values
        clean = csv_read(os.path.join(clean_run.directory, "estimate.csv")).values
        return float(np.sqrt(np.mean((noisy - clean) ** 2)))

    def test_noisy_exp_sin___noisy___affine_amplifies_noise(self):
        for alpha in (0.5, 0.7):
            minimal, affine = self._runs(self.noisy, alpha)
            clean_minimal, clean_affine = self._runs(self.clean, alpha)
            self.assertGreater(self._noise_response(affine, clean_affine), self._noise_response(minimal, clean_minimal), msg=f"alpha={alpha}")


if __name__ == "__main__":
    unittest.main()
