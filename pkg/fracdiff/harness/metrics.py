

import math

import numpy as np

from fracdiff.config.logging import log
from fracdiff.estimators.estimate_series import EstimateSeries
from fracdiff.harness import errors
from fracdiff.harness.run_metrics import RunMetrics
from fracdiff.signals.sampled_signal import SampledSignal

# Tolerance, in samples, for estimate anchors to fall on the reference grid
_ALIGNMENT_TOLERANCE = 1e-6


def lag_and_rmse(estimate: EstimateSeries, reference: SampledSignal):
    """ Measures the time shift of an estimate curve against a reference and the RMSE before and after removing it.

    Forward window estimates anticipate the reference, so estimate[i] is compared with the reference s samples later;
    backward window estimates are compared with the reference s samples earlier. The shift s ranges over
    0 .. min(m, available reference samples) and ties resolve to the smallest s.

    Args:
        estimate (EstimateSeries): The estimates.
        reference (SampledSignal): The reference on the same step, covering the estimate's span.

    Returns:
        metrics (RunMetrics): The metrics.

    Raises:
        fracdiff.harness.errors.SpanMismatch: If the reference is off the estimate's uniform grid or does not cover it.
    """
    if not isinstance(estimate, EstimateSeries):
        raise TypeError(estimate)
    if not isinstance(reference, SampledSignal):
        raise TypeError(reference)
    if not reference.uniform:
        raise errors.SpanMismatch("the reference sample times are not uniformly spaced")

    dt = estimate.params.dt
    if not math.isclose(dt, reference.dt, rel_tol=1e-9):
        raise errors.SpanMismatch(f"estimate step {dt} differs from reference step {reference.dt}")
    count = len(estimate)
    if count == 0:
        raise errors.SpanMismatch("the estimate is empty")

    position = (estimate.t0s[0] - reference.t_start) / reference.dt
    first = int(round(position))
    if abs(position - first) > _ALIGNMENT_TOLERANCE:
        raise errors.SpanMismatch(f"estimate anchors are off the reference grid by {position - first} samples")
    if first < 0 or first + count > reference.count:
        raise errors.SpanMismatch(f"reference samples 0..{reference.count - 1} do not cover estimate samples {first}..{first + count - 1}")

    forward = estimate.params.window == "forward"
    available = reference.count - (first + count) if forward else first
    max_shift = min(estimate.params.m, available)
    step = 1 if forward else -1

    values = estimate.values
    rmse = np.empty(max_shift + 1, dtype=np.float64)
    for shift in range(max_shift + 1):
        start = first + step * shift
        error = values - reference.values[start:start + count]
        rmse[shift] = math.sqrt(float(np.mean(error * error)))

    # argmin returns the first minimum, i.e. the smallest shift
    lag = int(np.argmin(rmse))
    start = first + step * lag
    max_abs = float(np.max(np.abs(values - reference.values[start:start + count])))

    if lag == max_shift and max_shift > 0:
        log.warning(f"\n\tlag: {lag}\n\tthe best shift lies on the search boundary")

    metrics = RunMetrics(
        rmse_raw=float(rmse[0]),
        lag_samples=lag,
        rmse_aligned=float(rmse[lag]),
        max_abs_err_aligned=max_abs,
        direction="lead" if forward else "lag",
        max_shift=max_shift,
        count=count,
    )
    log.debug(f"\n\trmse raw: {metrics.rmse_raw}\n\tlag: {lag}\n\trmse aligned: {metrics.rmse_aligned}\n\tmax shift: {max_shift}")

    return metrics
