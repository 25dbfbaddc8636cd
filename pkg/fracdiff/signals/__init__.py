

from fracdiff.signals import classes, errors
from fracdiff.signals.expressions import Expression, as_expression, constant, create_expression, exp_sin, expressions, frac_taylor, monomial
from fracdiff.signals.noise_spec import NoiseSpec
from fracdiff.signals.sampled_signal import SampledSignal
from fracdiff.signals.signals import add_noise, draw_noise, sample_expression, snr_db
