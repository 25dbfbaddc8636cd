

import math
from typing import Optional, Tuple, Union

import numpy as np

from fracdiff import utils
from fracdiff.config.logging import log
from fracdiff.signals import errors
from fracdiff.signals.expressions import Expression, as_expression, create_expression
from fracdiff.signals.noise_spec import NoiseSpec
from fracdiff.signals.sampled_signal import SampledSignal


def sample_expression(expr: Union[str, Expression], t_start: float, dt: float, count: int, parameters: Optional[dict] = None):
    """ Samples a test signal at t_start + i * dt, i = 0 .. count - 1.

    Args:
        expr (Union[str, Expression]): A registry name (exp_sin, monomial, constant, frac_taylor), an Expression, or a FracTaylorSignal.
        t_start (float): The first sample time.
        dt (float): The sampling step, dt > 0.
        count (int): The number of samples, count >= 1.
        parameters (dict, optional): Default None. Parameters for a signal given by name.

    Returns:
        signal (SampledSignal): The samples.

    Raises:
        fracdiff.signals.errors.UnknownExpression: If expr names no registered signal.
        fracdiff.signals.errors.InvalidSignal: If count < 1 or dt <= 0.
    """
    if isinstance(expr, str):
        expression = create_expression(expr, parameters)
    else:
        expression = as_expression(expr)
    if isinstance(count, bool) or not isinstance(count, (int, np.integer)):
        raise TypeError(count)
    if count < 1:
        raise errors.InvalidSignal(f"count must be positive, got {count}")

    times = float(t_start) + np.arange(count, dtype=np.float64) * float(dt)
    values = np.broadcast_to(np.asarray(expression(times), dtype=np.float64), times.shape)
    log.debug(f"\n\tsignal: {expression!r}\n\tt_start: {t_start}\n\tdt: {dt}\n\tcount: {count}")

    return SampledSignal(t_start=t_start, dt=dt, values=values)


def draw_noise(spec: NoiseSpec, count: int):
    """ Returns count unit variance Gaussian deviates from the generator seeded by spec.seed. """
    if not isinstance(spec, NoiseSpec):
        raise TypeError(spec)
    generator = np.random.Generator(np.random.PCG64(spec.seed))
    return generator.standard_normal(count)


def _energy(values: Union[SampledSignal, np.ndarray], name: str):
    if isinstance(values, SampledSignal):
        values = values.values
    values = utils.as_float_array(values, name)
    return values, float(np.dot(values, values))


def snr_db(y: Union[SampledSignal, np.ndarray], noise: Union[SampledSignal, np.ndarray]):
    """ Returns 10 log10(sum y**2 / sum noise**2), with y the noisy signal.

    Raises:
        fracdiff.signals.errors.LengthMismatch: If y and noise differ in length.
        fracdiff.signals.errors.ZeroNoiseEnergy: If the noise is identically zero.
    """
    y_values, y_energy = _energy(y, "y")
    noise_values, noise_energy = _energy(noise, "noise")
    if y_values.size != noise_values.size:
        raise errors.LengthMismatch(f"y and noise differ in length: {y_values.size} != {noise_values.size}")
    if noise_energy == 0.0:
        raise errors.ZeroNoiseEnergy("the noise has zero energy, the SNR is infinite")
    if y_energy == 0.0:
        return -math.inf

    return 10.0 * math.log10(y_energy / noise_energy)


def add_noise(x: SampledSignal, spec: NoiseSpec) -> Tuple[SampledSignal, float]:
    """ Adds seeded white Gaussian noise sigma * g to x, sigma solving

        10**(snr / 10) = sum (x + sigma g)**2 / sum (sigma g)**2

    exactly for the realised draw g, i.e. the positive root of (r - 1) G sigma**2 - 2 C sigma - X = 0 with
    r = 10**(snr / 10), G = sum g**2, X = sum x**2, C = sum x g.

    Args:
        x (SampledSignal): The clean signal.
        spec (NoiseSpec): The target SNR and seed.

    Returns:
        y, achieved_snr_db (Tuple[SampledSignal, float]): The noisy signal and its SNR by the same formula.

    Raises:
        fracdiff.signals.errors.DegenerateSignal: If x has zero energy.
    """
    if not isinstance(x, SampledSignal):
        raise TypeError(x)
    if not isinstance(spec, NoiseSpec):
        raise TypeError(spec)

    clean = x.values
    clean_energy = float(np.dot(clean, clean))
    if clean_energy == 0.0:
        raise errors.DegenerateSignal("the clean signal has zero energy")

    g = draw_noise(spec, x.count)
    ratio = 10.0 ** (spec.target_snr_db / 10.0)
    noise_energy = float(np.dot(g, g))
    cross = float(np.dot(clean, g))
    sigma = (cross + math.sqrt(cross ** 2 + (ratio - 1.0) * noise_energy * clean_energy)) / ((ratio - 1.0) * noise_energy)

    noise = sigma * g
    y = x.with_values(clean + noise)
    achieved = snr_db(y, noise)
    log.debug(f"\n\ttarget snr: {spec.target_snr_db}\n\tseed: {spec.seed}\n\tsigma: {sigma}\n\tachieved snr: {achieved}")

    return y, achieved
