

import os
import pathlib
import platform
import tempfile

__version__ = "0.1.0"

_OPERATING_SYSTEM = platform.system()
_PYTHON_VERSION = platform.python_version()
_ROOT = os.path.dirname(__file__)
_TEMPDIR = str(pathlib.Path(os.environ.get("fracdiff_tempdir", tempfile.gettempdir())).joinpath("fracdiff").resolve())

from fracdiff import config, utils
from fracdiff import specfun, fraccalc, estimators, signals, harness
from fracdiff.estimators.estimators import affine_fractional_estimate, sliding_estimate
from fracdiff.fraccalc.frac_order import FracOrder
from fracdiff.estimators.estimator_params import EstimatorParams
from fracdiff.signals.sampled_signal import SampledSignal
