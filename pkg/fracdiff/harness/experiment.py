

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Dict, List, Optional

from lxml import etree

import fracdiff
from fracdiff import utils
from fracdiff.config.logging import log
from fracdiff.estimators.classes import EstimatorError
from fracdiff.estimators.estimate_series import EstimateSeries, EstimatorKind
from fracdiff.estimators.estimators import sliding_estimate
from fracdiff.fraccalc.classes import FraccalcError
from fracdiff.fraccalc.fraccalc import jumarie_reference
from fracdiff.fraccalc.reference_curve import ReferenceCurve
from fracdiff.harness import errors
from fracdiff.harness.config.experiment_config import ExperimentConfig
from fracdiff.harness.csv_io import csv_write
from fracdiff.harness.metrics import lag_and_rmse
from fracdiff.harness.run_metrics import RunMetrics
from fracdiff.harness.run_spec import ReferenceSettings, RunSpec
from fracdiff.signals.classes import SignalError
from fracdiff.signals.expressions import Expression
from fracdiff.signals.sampled_signal import SampledSignal
from fracdiff.signals.signals import add_noise, sample_expression
from fracdiff.specfun.classes import SpecfunError


@dataclass(frozen=True, eq=False)
class RunResult:
    """ The outcome of one run. A failed run carries its error message and no metrics. """
    spec: RunSpec
    directory: str
    metrics: Optional[RunMetrics] = None
    reference: Optional[ReferenceCurve] = None
    error: Optional[str] = None

    @property
    def failed(self):
        return self.error is not None


@dataclass(frozen=True, eq=False)
class ExperimentResult:
    directory: str
    runs: List[RunResult]
    achieved_snr_db: Optional[float] = None

    @property
    def failed_runs(self):
        return [run for run in self.runs if run.failed]

    @property
    def report_path(self):
        return os.path.join(self.directory, "report.xml")


def reference_curve(expression: Expression, spec: RunSpec, clean: SampledSignal, settings: ReferenceSettings):
    """ Returns the reference derivative of the clean signal on its grid.

    Integer orders use the signal's classical derivative. Fractional orders use the Grunwald-Letnikov oracle at
    step dt / h_divisor, returned unconverged rather than raised so the caller can mark the run as failed.
    """
    times = clean.times
    order = spec.params.order
    if spec.kind is EstimatorKind.MINIMAL_INTEGER:
        values = expression.derivative(int(order.alpha))(times)
        return ReferenceCurve(times=times, values=values, h=0.0, discrepancy=0.0, tolerance=settings.tolerance, startup=settings.startup)

    return jumarie_reference(
        f=expression,
        fn_deriv=expression.derivative(order.n),
        order=order,
        grid=times,
        h=clean.dt / settings.h_divisor,
        tolerance=settings.tolerance,
        startup=settings.startup,
        raise_unconverged=False,
    )


def _write_metrics(path: str, spec: RunSpec, metrics: Optional[RunMetrics], reference: Optional[ReferenceCurve], error: Optional[str]):
    element = _run_element(spec, metrics, reference, error)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(utils.xml_to_string(element))


def _run_element(spec: RunSpec, metrics: Optional[RunMetrics], reference: Optional[ReferenceCurve], error: Optional[str]):
    element = etree.Element("run")
    element.set("index", str(spec.index))
    element.set("label", spec.label)
    element.set("status", "failed" if error is not None else "ok")

    parameters = etree.SubElement(element, "parameters")
    for name, value in (
        ("kind", spec.kind.value),
        ("alpha", repr(spec.params.alpha)),
        ("n", str(spec.params.n)),
        ("k", repr(spec.params.k)),
        ("mu", repr(spec.params.mu)),
        ("T", repr(spec.params.T)),
        ("m", str(spec.params.m)),
        ("window", spec.params.window),
    ):
        etree.SubElement(parameters, name).text = value

    if reference is not None:
        oracle = etree.SubElement(element, "reference")
        oracle.set("converged", str(reference.converged).lower())
        oracle.set("discrepancy", repr(float(reference.discrepancy)))
        oracle.set("tolerance", repr(float(reference.tolerance)))
        oracle.set("excluded_points", str(reference.excluded_count))
    if metrics is not None:
        element.append(metrics.to_element())
    if error is not None:
        etree.SubElement(element, "error").text = error

    return element


def _execute_run(spec: RunSpec, observed: SampledSignal, reference: ReferenceCurve, directory: str):
    run_directory = os.path.join(directory, spec.label)
    os.makedirs(run_directory, exist_ok=True)

    metrics = None
    error = None
    try:
        series = sliding_estimate(observed, spec.params, spec.kind)
        csv_write(os.path.join(run_directory, "estimate.csv"), series)
        csv_write(os.path.join(run_directory, "reference.csv"), reference)
        if not reference.converged:
            error = f"oracle discrepancy {reference.discrepancy:.3e} exceeds tolerance {reference.tolerance:.3e}"
        else:
            # Grid points before startup stay in reference.csv but are left out of the metrics
            start = reference.excluded_count
            tail = SampledSignal(t_start=observed.time_at(start), dt=observed.dt, values=reference.values[start:])
            metrics = lag_and_rmse(series.since(reference.startup), tail)
            if not metrics.ok:
                error = f"lag of {metrics.lag_samples} samples is implausible for {metrics.count} estimates"
    except (EstimatorError, FraccalcError, SpecfunError, SignalError, errors.SpanMismatch) as e:
        error = f"{e.__class__.__name__}: {e}"

    if error is not None:
        log.error(f"\n\trun: {spec.label}\n\terror: {error}")
    else:
        log.info(f"\n\trun: {spec.label}\n\tlag: {metrics.lag_samples}\n\trmse aligned: {metrics.rmse_aligned}")

    _write_metrics(os.path.join(run_directory, "metrics.xml"), spec, metrics, reference, error)

    return RunResult(spec=spec, directory=run_directory, metrics=metrics, reference=reference, error=error)


def _report(cfg: ExperimentConfig, results: List[RunResult], target_snr_db: Optional[float], achieved_snr_db: Optional[float]):
    root = etree.Element("report")
    root.set("version", fracdiff.__version__)
    root.set("schema_version", cfg.schema_version)

    expression = cfg.signal_expression()
    signal = etree.SubElement(root, "signal")
    signal.set("name", expression.name)
    t_start, dt, count = cfg.grid()
    for name, value in (("t_start", repr(t_start)), ("dt", repr(dt)), ("count", str(count))):
        etree.SubElement(signal, name).text = value

    if target_snr_db is not None:
        noise = etree.SubElement(root, "noise")
        etree.SubElement(noise, "target_snr_db").text = repr(target_snr_db)
        etree.SubElement(noise, "achieved_snr_db").text = repr(float(achieved_snr_db))

    runs = etree.SubElement(root, "runs")
    runs.set("failed", str(sum(result.failed for result in results)))
    for result in results:
        runs.append(_run_element(result.spec, result.metrics, result.reference, result.error))

    return root


def run_experiment(cfg: ExperimentConfig, output_directory: Optional[str] = None, workers: int = 1):
    """ Runs every configured estimator on the (optionally noisy) sampled signal and writes the study's data files.

    Output tree:
        signal_clean.csv, signal_noisy.csv (with noise)
        run_<index>_<kind>_a<alpha>_T<T>/estimate.csv, reference.csv, metrics.xml
        report.xml

    Reference curves are computed once per derivative order. Oracle non-convergence and estimator failures mark
    the run as failed rather than aborting the experiment. Metrics only score estimates anchored at or after the
    reference startup time.

    Args:
        cfg (ExperimentConfig): The experiment configuration.
        output_directory (str, optional): Default None. Overrides the configured output directory.
        workers (int, optional): Default 1. Number of threads running independent runs.

    Returns:
        result (ExperimentResult): The per-run results, ordered by run index.

    Raises:
        fracdiff.harness.errors.ConfigError: If the configuration is invalid.
    """
    if not isinstance(cfg, ExperimentConfig):
        raise TypeError(cfg)
    if isinstance(workers, bool) or not isinstance(workers, int) or workers < 1:
        raise TypeError(workers)

    cfg.validate()
    directory = os.path.abspath(output_directory or cfg.output_directory())
    os.makedirs(directory, exist_ok=True)
    log.info(f"\n\texperiment: {directory}\n\truns: {len(cfg.run_specs())}\n\tworkers: {workers}")

    expression = cfg.signal_expression()
    t_start, dt, count = cfg.grid()
    clean = sample_expression(expression, t_start, dt, count)
    csv_write(os.path.join(directory, "signal_clean.csv"), clean)

    spec = cfg.noise_spec()
    observed, achieved = clean, None
    if spec is not None:
        observed, achieved = add_noise(clean, spec)
        csv_write(os.path.join(directory, "signal_noisy.csv"), observed)
        log.info(f"\n\ttarget snr: {spec.target_snr_db}\n\tachieved snr: {achieved}")

    settings = cfg.reference_settings()
    run_specs = cfg.run_specs()
    references: Dict[tuple, ReferenceCurve] = {}
    reference_errors: Dict[tuple, str] = {}
    for run_spec in run_specs:
        key = (run_spec.kind is EstimatorKind.MINIMAL_INTEGER, run_spec.params.alpha)
        if key in references or key in reference_errors:
            continue
        try:
            references[key] = reference_curve(expression, run_spec, clean, settings)
        except (FraccalcError, SpecfunError, SignalError) as e:
            reference_errors[key] = f"{e.__class__.__name__}: {e}"

    def execute(run_spec: RunSpec):
        key = (run_spec.kind is EstimatorKind.MINIMAL_INTEGER, run_spec.params.alpha)
        if key in reference_errors:
            run_directory = os.path.join(directory, run_spec.label)
            os.makedirs(run_directory, exist_ok=True)
            _write_metrics(os.path.join(run_directory, "metrics.xml"), run_spec, None, None, reference_errors[key])
            return RunResult(spec=run_spec, directory=run_directory, error=reference_errors[key])
        return _execute_run(run_spec, observed, references[key], directory)

    if workers == 1:
        results = [execute(run_spec) for run_spec in run_specs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            # map preserves input order
            results = list(executor.map(execute, run_specs))

    report = _report(cfg, results, None if spec is None else spec.target_snr_db, achieved)
    result = ExperimentResult(directory=directory, runs=results, achieved_snr_db=achieved)
    with open(result.report_path, "w", encoding="utf-8", newline="\n") as f:
        f.write(utils.xml_to_string(report))
    log.info(f"\n\treport: {result.report_path}\n\tfailed runs: {len(result.failed_runs)}")

    return result
