

from fracdiff.harness import classes, errors
from fracdiff.harness.config import ExperimentConfig, Parameter, Section
from fracdiff.harness.csv_io import csv_read, csv_write
from fracdiff.harness.experiment import ExperimentResult, RunResult, run_experiment
from fracdiff.harness.metrics import lag_and_rmse
from fracdiff.harness.run_metrics import RunMetrics
from fracdiff.harness.run_spec import ReferenceSettings, RunSpec
from fracdiff.harness import validate
