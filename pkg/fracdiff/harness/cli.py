

import argparse
import os
import sys
from typing import List, Optional

import fracdiff
from fracdiff import config, utils
from fracdiff.config.logging import log, set_console_level
from fracdiff.estimators.estimate_series import EstimatorKind
from fracdiff.estimators.estimator_params import WINDOWS, EstimatorParams
from fracdiff.estimators.estimators import sliding_estimate
from fracdiff.fraccalc.frac_order import FracOrder
from fracdiff.fraccalc.fraccalc import jumarie_reference
from fracdiff.harness import errors, validate
from fracdiff.harness.config.experiment_config import ExperimentConfig
from fracdiff.harness.csv_io import csv_write
from fracdiff.harness.experiment import run_experiment
from fracdiff.signals.expressions import create_expression
from fracdiff.signals.noise_spec import NoiseSpec
from fracdiff.signals.signals import add_noise, sample_expression


def parse_signal(text: str):
    """ Splits "name" or "name:key=value,key=value" into the name and a parameter dict. """
    name, _, arguments = text.partition(":")
    parameters = {}
    for argument in filter(None, (a.strip() for a in arguments.split(","))):
        key, separator, value = argument.partition("=")
        if not separator:
            raise errors.ConfigError(f"expected key=value, got {argument!r}", field="--signal")
        parameters[key.strip()] = value.strip()
    return name.strip(), parameters


def resolve_config_path(value: str):
    """ Returns value if it is a file, otherwise the packaged experiment of that name. """
    if os.path.isfile(value):
        return value
    packaged = os.path.join(config.experiments_directory, f"{value}.xml")
    if os.path.isfile(packaged):
        return packaged
    raise errors.ConfigError(f"no such file or packaged experiment, packaged experiments are {config.packaged_experiments()}", field=value)


class ArgumentParser(argparse.ArgumentParser):
    """ Raises ConfigError on bad arguments instead of exiting, so they map to exit code 1 like any configuration error. """

    def error(self, message: str):
        self.print_usage(sys.stderr)
        raise errors.ConfigError(message, field="arguments")


def _add_grid_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--signal", default="exp_sin", help="Signal name with optional parameters, e.g. monomial:p=2. Default exp_sin.")
    parser.add_argument("--alpha", type=float, required=True, help="Derivative order alpha > 0.")
    parser.add_argument("--n", type=int, default=None, help="Integer part marker, ceil(alpha) - 1 when omitted.")
    parser.add_argument("--dt", type=float, default=1e-3, help="Sampling step. Default 0.001.")
    parser.add_argument("--t-start", type=float, default=0.0, help="First sample time. Default 0.")
    parser.add_argument("--count", type=int, default=4001, help="Number of samples. Default 4001.")
    parser.add_argument("--out", default=".", help="Output directory. Default the working directory.")


def build_parser():
    parser = ArgumentParser(prog="fracdiff", description="Jacobi sliding window estimators of fractional derivatives.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {fracdiff.__version__}")
    parser.add_argument("--log-level", default=None, help="Console log level, e.g. warning. Default from fracdiff_console_level, else info.")
    subparsers = parser.add_subparsers(dest="command", required=True)

    estimate = subparsers.add_parser("estimate", help="Run one estimator on a sampled test signal.")
    _add_grid_arguments(estimate)
    estimate.add_argument("--k", type=float, default=0.0)
    estimate.add_argument("--mu", type=float, default=0.0)
    estimate.add_argument("--T", type=float, required=True, help="Window length, an integer multiple of --dt.")
    estimate.add_argument("--snr-db", type=float, default=None, help="Add noise at this SNR in dB.")
    estimate.add_argument("--seed", type=int, default=0)
    estimate.add_argument("--kind", choices=["minimal", "affine", "integer"], default="minimal")
    estimate.add_argument("--window", choices=list(WINDOWS), default="forward")

    experiment = subparsers.add_parser("experiment", help="Run a study from an XML configuration.")
    experiment.add_argument("config", help="Configuration file path, or the name of a packaged experiment such as noisy_exp_sin.")
    experiment.add_argument("--out", default=None, help="Output directory, overriding the configuration.")
    experiment.add_argument("--workers", type=int, default=1, help="Threads running independent runs. Default 1.")

    oracle = subparsers.add_parser("oracle", help="Compute a reference derivative curve only.")
    _add_grid_arguments(oracle)
    oracle.add_argument("--h-divisor", type=int, default=10, help="Oracle step dt / h_divisor. Default 10.")
    oracle.add_argument("--tolerance", type=float, default=1e-3)
    oracle.add_argument("--startup", type=float, default=0.5)

    validation = subparsers.add_parser("validate", help="Run property suites and print an XML report.")
    validation.add_argument("suite", nargs="?", default="all", choices=list(validate.SUITES) + ["all"])

    return parser


def command_estimate(args: argparse.Namespace):
    name, parameters = parse_signal(args.signal)
    clean = sample_expression(name, args.t_start, args.dt, args.count, parameters)
    observed = clean
    if args.snr_db is not None:
        observed, achieved = add_noise(clean, NoiseSpec(target_snr_db=args.snr_db, seed=args.seed))
        log.info(f"\n\tachieved snr: {achieved}")
        csv_write(os.path.join(args.out, "signal_noisy.csv"), observed)
    csv_write(os.path.join(args.out, "signal_clean.csv"), clean)

    params = EstimatorParams.for_signal_step(order=FracOrder(args.alpha, args.n), k=args.k, mu=args.mu, T=args.T, dt=args.dt, window=args.window)
    series = sliding_estimate(observed, params, EstimatorKind.parse(args.kind))
    path = csv_write(os.path.join(args.out, "estimate.csv"), series)
    print(path)

    return 0


def command_experiment(args: argparse.Namespace):
    cfg = ExperimentConfig.from_string(resolve_config_path(args.config))
    result = run_experiment(cfg, output_directory=args.out, workers=args.workers)
    print(result.report_path)

    if result.failed_runs:
        raise errors.FailedRun(f"{len(result.failed_runs)} of {len(result.runs)} runs failed: {[run.spec.label for run in result.failed_runs]}")
    return 0


def command_oracle(args: argparse.Namespace):
    name, parameters = parse_signal(args.signal)
    clean = sample_expression(name, args.t_start, args.dt, args.count, parameters)
    expression = create_expression(name, parameters)
    order = FracOrder(args.alpha, args.n)

    curve = jumarie_reference(
        f=expression,
        fn_deriv=expression.derivative(order.n),
        order=order,
        grid=clean.times,
        h=args.dt / args.h_divisor,
        tolerance=args.tolerance,
        startup=args.startup,
    )
    path = csv_write(os.path.join(args.out, "reference.csv"), curve)
    print(path)

    return 0


def command_validate(args: argparse.Namespace):
    checks = validate.validate(args.suite)
    report = validate.report(checks, args.suite)
    sys.stdout.write(utils.xml_to_string(report))

    return 0 if report.get("passed") == "true" else 2


COMMANDS = {
    "estimate": command_estimate,
    "experiment": command_experiment,
    "oracle": command_oracle,
    "validate": command_validate,
}


def main(argv: Optional[List[str]] = None):
    """ Runs the command line interface and returns the exit code: 0 success, 1 validation or configuration error, 2 numerical failure. """
    try:
        args = build_parser().parse_args(argv)
    except errors.ConfigError as e:
        log.error(f"\n\t{e}")
        return errors.exit_code(e)

    if args.log_level is not None:
        try:
            set_console_level(args.log_level)
        except ValueError as e:
            log.error(f"\n\t{e}")
            return 1

    try:
        return COMMANDS[args.command](args)
    except (
        fracdiff.specfun.classes.SpecfunError,
        fracdiff.fraccalc.classes.FraccalcError,
        fracdiff.estimators.classes.EstimatorError,
        fracdiff.signals.classes.SignalError,
        fracdiff.harness.classes.HarnessError,
    ) as e:
        log.error(f"\n\tcommand: {args.command}\n\t{e.__class__.__name__}: {e}")
        return errors.exit_code(e)
