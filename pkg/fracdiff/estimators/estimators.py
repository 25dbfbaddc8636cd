

import functools
import math
from typing import Callable, Union

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy import special

from fracdiff import specfun, utils
from fracdiff.config.logging import log
from fracdiff.estimators import errors
from fracdiff.estimators.estimate_series import EstimateSeries, EstimatorKind
from fracdiff.estimators.estimator_params import EstimatorParams
from fracdiff.estimators.kernel_table import KernelTable
from fracdiff.fraccalc.frac_order import FracOrder
from fracdiff.signals.sampled_signal import SampledSignal
from fracdiff.specfun.jacobi_params import JacobiParams

# Smallest alpha - n accepted by the affine estimator
AFFINE_GUARD = 1e-3
# Relative tolerance when binding T = m * dt to a signal's step
_BINDING_RTOL = 1e-12
# Tolerance, in samples, for an anchor time to count as on the grid
_ANCHOR_TOLERANCE = 1e-6


@functools.lru_cache(maxsize=64)
def _kernel_table(alpha: float, n: int, k: float, mu: float, T: float, m: int):
    """ Builds the table of the estimator whose kernel is w_(mu,k) * P_(n+1) and whose scale is

        (n + 1)! / T**alpha * Gamma(alpha - n) / B(alpha + 1 + k, n + mu + 2)

    The integer estimator of order N is the case alpha = N, n = N - 1, so both kinds share this code path.
    """
    degree = n + 1
    if m < degree + 1:
        raise errors.InvalidParameters(f"m must be at least {degree + 1} to resolve a degree {degree} kernel, got {m}")

    jacobi = JacobiParams(n=degree, mu=mu, k=k)
    taus = np.arange(m + 1, dtype=np.float64) / m
    qweights = np.full(m + 1, 1.0 / m)
    qweights[0] = qweights[-1] = 0.5 / m

    if min(k, mu) < 0:
        # Singular weight at an endpoint: sample the kernel at the cell midpoints instead
        midpoints = (np.arange(m, dtype=np.float64) + 0.5) / m
        midpoint_kvals = specfun.jacobi_weight(jacobi, midpoints) * specfun.jacobi_eval(jacobi, midpoints)
        kvals = np.empty(m + 1, dtype=np.float64)
        kvals[0] = midpoint_kvals[0]
        kvals[-1] = midpoint_kvals[-1]
        kvals[1:-1] = 0.5 * (midpoint_kvals[:-1] + midpoint_kvals[1:])
        rule = "midpoint"
    else:
        kvals = specfun.jacobi_weight(jacobi, taus) * specfun.jacobi_eval(jacobi, taus)
        rule = "trapezoid"

    log_scale = (
        specfun.ln_gamma(degree + 1.0)
        - alpha * math.log(T)
        + specfun.ln_gamma(alpha - n)
        - special.betaln(alpha + 1.0 + k, n + mu + 2.0)
    )
    log.debug(f"\n\talpha: {alpha}\n\tn: {n}\n\tk: {k}\n\tmu: {mu}\n\tT: {T}\n\tm: {m}\n\trule: {rule}\n\tlog scale: {log_scale}")

    return KernelTable(taus=taus, qweights=qweights, kvals=kvals, scale=math.exp(log_scale), rule=rule)


def _validate_exponents(k: float, mu: float, T: float):
    for name, value in (("k", k), ("mu", mu), ("T", T)):
        if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)):
            raise TypeError(value)
        if not math.isfinite(value):
            raise errors.InvalidParameters(f"{name} must be finite, got {value}")
    if k <= -1 or mu <= -1:
        raise errors.InvalidParameters(f"k and mu must exceed -1, got k={k}, mu={mu}")
    if T <= 0:
        raise errors.InvalidParameters(f"T must be positive, got {T}")


def minimal_integer_kernel(n: int, k: float, mu: float, T: float, m: int):
    """ Returns the kernel table of the minimal Jacobi estimator of the integer derivative of order n.

    The kernel is w_(mu,k) * P_n and the scale n! / T**n / B(n + k + 1, n + mu + 1).

    Args:
        n (int): The derivative order, n >= 0.
        k (float): Weight exponent of tau, k > -1.
        mu (float): Weight exponent of 1 - tau, mu > -1.
        T (float): Window length, T > 0.
        m (int): Number of quadrature intervals, m >= n + 1.

    Returns:
        table (KernelTable): The shared, read-only table.

    Raises:
        fracdiff.estimators.errors.InvalidParameters: If a parameter is out of its domain.
    """
    if isinstance(n, bool) or not isinstance(n, (int, np.integer)):
        raise TypeError(n)
    if isinstance(m, bool) or not isinstance(m, (int, np.integer)):
        raise TypeError(m)
    if n < 0:
        raise errors.InvalidParameters(f"n must be non-negative, got {n}")
    _validate_exponents(k, mu, T)

    return _kernel_table(float(n), int(n) - 1, float(k), float(mu), float(T), int(m))


def minimal_fractional_kernel(p: EstimatorParams):
    """ Returns the kernel table of the minimal Jacobi estimator of the fractional derivative of order alpha.

    The kernel is w_(mu,k) * P_(n+1) and the scale (n + 1)! / T**alpha * Gamma(alpha - n) / B(alpha + 1 + k, n + mu + 2).
    At alpha = n + 1 the table is the integer table of order n + 1.

    Raises:
        fracdiff.estimators.errors.InvalidParameters: If p.m < n + 2.
    """
    if not isinstance(p, EstimatorParams):
        raise TypeError(p)

    return _kernel_table(p.alpha, p.n, p.k, p.mu, p.T, p.m)


def affine_lambda(alpha: float, k: float, n: int):
    """ Returns the affine coefficient (2 alpha - n + 1 + k) / (alpha - n).

    Raises:
        fracdiff.estimators.errors.NearIntegerOrder: If alpha - n < 1e-3.
    """
    gap = float(alpha) - n
    if gap < AFFINE_GUARD:
        log.error(f"\n\talpha: {alpha}\n\tn: {n}\n\tguard: {AFFINE_GUARD}")
        raise errors.NearIntegerOrder(f"alpha - n = {gap} is below {AFFINE_GUARD}; the affine coefficient diverges as alpha approaches n")

    return (2.0 * alpha - n + 1.0 + k) / gap


def quadrature_apply(table: KernelTable, samples: Union[np.ndarray, list]):
    """ Returns scale * sum_i qweights[i] * kvals[i] * samples[i].

    Raises:
        fracdiff.estimators.errors.LengthMismatch: If samples do not match the table's nodes.
    """
    if not isinstance(table, KernelTable):
        raise TypeError(table)
    samples = utils.as_float_array(samples, "samples")
    if samples.size != table.taus.size:
        raise errors.LengthMismatch(f"expected {table.taus.size} samples, got {samples.size}")

    return float(table.scale * np.dot(table.coefficients, samples))


def _check_binding(y: SampledSignal, p: EstimatorParams):
    if not isinstance(y, SampledSignal):
        raise TypeError(y)
    if not isinstance(p, EstimatorParams):
        raise TypeError(p)
    if not y.uniform:
        raise errors.GridMisalignment("the signal's sample times are not uniformly spaced")
    if not math.isclose(p.m * y.dt, p.T, rel_tol=_BINDING_RTOL):
        raise errors.GridMisalignment(f"T={p.T} does not equal m * dt = {p.m} * {y.dt}")


def _window_samples(y: SampledSignal, p: EstimatorParams, t0: float):
    """ Returns the m + 1 samples at t0 + T * tau_i (forward) or t0 - T * tau_i (backward). """
    _check_binding(y, p)

    position = (float(t0) - y.t_start) / y.dt
    index = int(round(position))
    if abs(position - index) > _ANCHOR_TOLERANCE:
        raise errors.GridMisalignment(f"t0={t0} is not on the grid t_start={y.t_start}, dt={y.dt}")

    start, stop = (index, index + p.m) if p.window == "forward" else (index - p.m, index)
    if start < 0 or stop > y.count - 1:
        raise errors.WindowOutOfRange(f"the {p.window} window at t0={t0} needs samples {start}..{stop}, signal has 0..{y.count - 1}")

    samples = y.values[start:stop + 1]
    if p.window == "backward":
        samples = samples[::-1]

    return samples


def _integer_order(p: EstimatorParams):
    if not p.order.is_integer:
        raise errors.InvalidParameters(f"the integer estimator needs an integer alpha, got {p.alpha}")
    return int(p.alpha)


def _estimate(kind: EstimatorKind, p: EstimatorParams, apply: Callable[[KernelTable], Union[float, np.ndarray]]):
    """ Evaluates one estimator kind, apply mapping a kernel table to its quadrature over the window(s). """
    if kind is EstimatorKind.MINIMAL_INTEGER:
        order = _integer_order(p)
        value = apply(minimal_integer_kernel(order, p.k, p.mu, p.T, p.m))
        if p.window == "backward" and order % 2 == 1:
            value = -value
        return value

    if p.window == "backward":
        raise errors.InvalidParameters("backward windows are only defined for the integer estimator")

    if kind is EstimatorKind.MINIMAL_FRACTIONAL:
        return apply(minimal_fractional_kernel(p))

    lam = affine_lambda(p.alpha, p.k, p.n)
    first = apply(minimal_fractional_kernel(p.replace(mu=p.mu + 1.0)))
    second = apply(minimal_fractional_kernel(p.replace(k=p.k + 1.0)))
    return lam * first + (1.0 - lam) * second


def minimal_integer_estimate(y: SampledSignal, n: int, k: float, mu: float, T: float, m: int, t0: float, window: str = "forward"):
    """ Returns the minimal Jacobi estimate of the n-th integer derivative of y at t0, for n >= 0. """
    table = minimal_integer_kernel(n, k, mu, T, m)
    if window not in ("forward", "backward"):
        raise errors.InvalidParameters(f"unknown window {window!r}")

    # n = 0 has no FracOrder, so the window is read through a first order parameter set of the same geometry
    geometry = EstimatorParams(order=FracOrder(1.0), k=k, mu=mu, T=T, m=m, window=window)
    value = quadrature_apply(table, _window_samples(y, geometry, t0))

    if window == "backward" and n % 2 == 1:
        value = -value
    return value


def minimal_fractional_estimate(y: SampledSignal, p: EstimatorParams, t0: float):
    """ Returns the minimal Jacobi estimate of the derivative of order p.alpha of y at t0.

    Raises:
        fracdiff.estimators.errors.WindowOutOfRange: If the window [t0, t0 + T] leaves the signal.
        fracdiff.estimators.errors.GridMisalignment: If t0 or T do not fall on the signal's grid.
        fracdiff.estimators.errors.InvalidParameters: If p.window is "backward".
    """
    samples = _window_samples(y, p, t0)
    return float(_estimate(EstimatorKind.MINIMAL_FRACTIONAL, p, lambda table: quadrature_apply(table, samples)))


def affine_fractional_estimate(y: SampledSignal, p: EstimatorParams, t0: float):
    """ Returns the affine Jacobi estimate lam * E(k, mu + 1) + (1 - lam) * E(k + 1, mu) at t0.

    Both minimal estimates are computed over the same m + 1 samples, so the result equals the combination of
    separately computed minimal_fractional_estimate values bit for bit.

    Raises:
        fracdiff.estimators.errors.NearIntegerOrder: If alpha - n < 1e-3.
        fracdiff.estimators.errors.WindowOutOfRange: If the window [t0, t0 + T] leaves the signal.
        fracdiff.estimators.errors.GridMisalignment: If t0 or T do not fall on the signal's grid.
    """
    if not isinstance(p, EstimatorParams):
        raise TypeError(p)
    affine_lambda(p.alpha, p.k, p.n)
    samples = _window_samples(y, p, t0)

    return float(_estimate(EstimatorKind.AFFINE_FRACTIONAL, p, lambda table: quadrature_apply(table, samples)))


def sliding_estimate(y: SampledSignal, p: EstimatorParams, kind: Union[EstimatorKind, str]):
    """ Estimates the derivative at every grid time with a complete window.

    Forward windows anchor estimates at t0 = t_start .. t_end - T, backward windows at t_start + T .. t_end.
    Each kernel table is built once and applied to all windows as one matrix product.

    Args:
        y (SampledSignal): The sampled signal, bound to p through T = m * dt.
        p (EstimatorParams): The estimator parameters.
        kind (Union[EstimatorKind, str]): The estimator kind.

    Returns:
        series (EstimateSeries): The estimates and their anchors.

    Raises:
        fracdiff.estimators.errors.SignalTooShort: If y holds fewer than m + 1 samples.
        fracdiff.estimators.errors.GridMisalignment: If T differs from m * dt.
    """
    kind = EstimatorKind.parse(kind)
    _check_binding(y, p)
    if y.count < p.m + 1:
        raise errors.SignalTooShort(f"a window needs {p.m + 1} samples, signal has {y.count}")

    windows = sliding_window_view(y.values, p.m + 1)
    first = 0
    if p.window == "backward":
        windows = windows[:, ::-1]
        first = p.m

    values = _estimate(kind, p, lambda table: (windows @ table.coefficients) * table.scale)
    t0s = y.t_start + (first + np.arange(windows.shape[0], dtype=np.float64)) * y.dt
    log.debug(f"\n\tkind: {kind.value}\n\talpha: {p.alpha}\n\tk: {p.k}\n\tmu: {p.mu}\n\tT: {p.T}\n\tm: {p.m}\n\twindow: {p.window}\n\testimates: {t0s.size}")

    return EstimateSeries(t0s=t0s, values=values, params=p, kind=kind)


def _minimal_response(alpha: float, n: int, k: float, mu: float, T: float, beta: float):
    if beta + k + 1.0 <= 0:
        raise errors.InvalidParameters(f"the response needs beta + k + 1 > 0, got beta={beta}, k={k}")
    log_ratio = special.betaln(beta + k + 1.0, n + mu + 2.0) - special.betaln(alpha + 1.0 + k, n + mu + 2.0)

    # 1 / Gamma(beta - n) vanishes at integer beta <= n: those powers are annihilated
    return float(T ** (beta - alpha) * specfun.gamma(alpha - n) * special.rgamma(beta - n) * math.exp(log_ratio))


def monomial_response(p: EstimatorParams, beta: float, kind: Union[EstimatorKind, str]):
    """ Returns the exact (continuous) estimate produced on the signal x(t0 + t) = t**beta / Gamma(beta + 1).

    For the minimal estimators this is

        T**(beta - alpha) * Gamma(alpha - n) / Gamma(beta - n) * B(beta + k + 1, n + mu + 2) / B(alpha + 1 + k, n + mu + 2)

    which is 1 at beta = alpha and 0 at integer beta <= n. The affine response vanishes at beta = 2 alpha - n.

    Args:
        p (EstimatorParams): The estimator parameters (m and window are not used).
        beta (float): The power, beta + k + 1 > 0.
        kind (Union[EstimatorKind, str]): The estimator kind.

    Returns:
        response (float): The estimate.
    """
    if not isinstance(p, EstimatorParams):
        raise TypeError(p)
    kind = EstimatorKind.parse(kind)
    beta = float(beta)

    if kind is EstimatorKind.MINIMAL_INTEGER:
        order = _integer_order(p)
        return _minimal_response(float(order), order - 1, p.k, p.mu, p.T, beta)
    if kind is EstimatorKind.MINIMAL_FRACTIONAL:
        return _minimal_response(p.alpha, p.n, p.k, p.mu, p.T, beta)

    lam = affine_lambda(p.alpha, p.k, p.n)
    first = _minimal_response(p.alpha, p.n, p.k, p.mu + 1.0, p.T, beta)
    second = _minimal_response(p.alpha, p.n, p.k + 1.0, p.mu, p.T, beta)
    return lam * first + (1.0 - lam) * second
