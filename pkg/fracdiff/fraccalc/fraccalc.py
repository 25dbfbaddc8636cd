

import math
from typing import Callable, Optional, Union

import numpy as np
from scipy import signal, special

from fracdiff import specfun, utils
from fracdiff.config.logging import log
from fracdiff.fraccalc import errors
from fracdiff.fraccalc.frac_order import FracOrder
from fracdiff.fraccalc.frac_taylor_signal import FracTaylorSignal
from fracdiff.fraccalc.reference_curve import ReferenceCurve

# Extra Grunwald-Letnikov terms beyond ceil(t / h), covering the alpha h shift of the nodes
_EXTRA_TERMS = 64
# Relative tolerance for treating a grid step as an integer multiple of the oracle step
_STEP_RATIO_RTOL = 1e-9


def _evaluate(f: Callable, nodes: np.ndarray):
    """ Calls f on an array of nodes, falling back to a per-node loop for scalar-only callables. Scalar returns are broadcast. """
    try:
        values = np.asarray(f(nodes), dtype=np.float64)
    except (TypeError, ValueError):
        values = np.array([float(f(node)) for node in nodes], dtype=np.float64)

    return np.broadcast_to(values, nodes.shape).astype(np.float64)


def _causal_increment(f: Callable):
    """ Returns g(tau) = f(tau) - f(0) for tau >= 0 and 0 for tau < 0, vectorised over numpy arrays. """
    f0 = float(_evaluate(f, np.zeros(1))[0])

    def g(nodes: np.ndarray):
        nodes = np.asarray(nodes, dtype=np.float64)
        values = np.zeros_like(nodes)
        causal = nodes >= 0.0
        if np.any(causal):
            values[causal] = _evaluate(f, nodes[causal]) - f0
        return values

    return g


def _validate_positive(value: float, name: str):
    if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)):
        raise TypeError(value)
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise errors.DomainError(f"{name} must be a finite positive real, got {value}")
    return value


def _default_terms(t: float, h: float):
    return int(math.ceil(t / h)) + _EXTRA_TERMS


def rl_monomial(p: float, alpha: float, t: float):
    """ Returns the Riemann-Liouville derivative of order alpha of t**p, based at 0:

        Gamma(p + 1) / Gamma(p + 1 - alpha) * t**(p - alpha)

    The value is 0 when p + 1 - alpha is zero or a negative integer.

    Args:
        p (float): The monomial power, p >= 0.
        alpha (float): The derivative order, alpha > 0.
        t (float): The time, t > 0.

    Returns:
        value (float): The derivative at t.

    Raises:
        fracdiff.fraccalc.errors.DomainError: If t <= 0, p < 0, or alpha <= 0.
    """
    t = _validate_positive(t, "t")
    alpha = _validate_positive(alpha, "alpha")
    if isinstance(p, bool) or not isinstance(p, (int, float, np.integer, np.floating)):
        raise TypeError(p)
    p = float(p)
    if not math.isfinite(p) or p < 0:
        raise errors.DomainError(f"p must be a finite non-negative real, got {p}")

    return float(specfun.gamma(p + 1.0) * special.rgamma(p + 1.0 - alpha) * t ** (p - alpha))


def gl_fractional_difference(f: Callable, alpha: float, t: float, h: float, terms: Optional[int] = None):
    """ Shifted Grunwald-Letnikov approximation of the Jumarie derivative of order alpha at t.

        h**(-alpha) * sum_i (-1)**i binom(alpha, i) g(t + (alpha - i) h),  i = 0 .. terms

    where g(tau) = f(tau) - f(0) for tau >= 0 and 0 for tau < 0. The method is first order in h.

    Args:
        f (Callable): The signal, accepting a numpy array of times. A scalar return is broadcast.
        alpha (float): The derivative order, alpha > 0.
        t (float): The time, t >= 0.
        h (float): The step, h > 0.
        terms (int, optional): Default ceil(t / h) + 64. Number of terms after the first.

    Returns:
        value (float): The approximation.

    Raises:
        fracdiff.fraccalc.errors.DomainError: If alpha <= 0, h <= 0, t < 0, or terms < 0.
    """
    alpha = _validate_positive(alpha, "alpha")
    h = _validate_positive(h, "h")
    if isinstance(t, bool) or not isinstance(t, (int, float, np.integer, np.floating)) or not math.isfinite(t):
        raise TypeError(t)
    t = float(t)
    if t < 0:
        raise errors.DomainError(f"t must be non-negative, got {t}")
    if terms is None:
        terms = _default_terms(t, h)
    if isinstance(terms, bool) or not isinstance(terms, (int, np.integer)):
        raise TypeError(terms)
    if terms < 0:
        raise errors.DomainError(f"terms must be non-negative, got {terms}")

    g = _causal_increment(f)
    nodes = t + (alpha - np.arange(terms + 1, dtype=np.float64)) * h
    weights = specfun.gen_binomial_array(alpha, int(terms) + 1)
    samples = g(nodes)

    # Terms whose nodes fall before 0 vanish, so the sum is only truncated if the last node is still causal
    if nodes[-1] >= 0.0:
        tail = abs(weights[-1]) * (terms / alpha) * float(np.max(np.abs(samples))) / h ** alpha
        log.debug(f"\n\talpha: {alpha}\n\tt: {t}\n\th: {h}\n\tterms: {terms}\n\ttail estimate: {tail}")

    return float(np.dot(weights, samples) / h ** alpha)


def _gl_uniform_grid(g: Callable, alpha: float, t_start: float, count: int, ratio: int, h: float, terms: int):
    """ Evaluates the shifted Grunwald-Letnikov sum at t_start + j * ratio * h for j = 0 .. count - 1 as one FFT convolution.

    The nodes of every output point lie on the fine grid t_start + (l + alpha) h, l = -terms .. (count - 1) * ratio.
    """
    l_min = -terms
    fine = np.arange(l_min, (count - 1) * ratio + 1, dtype=np.float64)
    samples = g(t_start + (fine + alpha) * h)
    weights = specfun.gen_binomial_array(alpha, terms + 1)

    convolved = signal.fftconvolve(samples, weights, mode="full")
    indices = np.arange(count) * ratio - l_min

    return convolved[indices] / h ** alpha


def _gl_curve(g: Callable, alpha: float, times: np.ndarray, h: float, terms: int, ratio: Optional[int]):
    if ratio is not None:
        return _gl_uniform_grid(g, alpha, float(times[0]), times.size, ratio, h, terms)

    weights = specfun.gen_binomial_array(alpha, terms + 1)
    offsets = (alpha - np.arange(terms + 1, dtype=np.float64)) * h
    return np.array([np.dot(weights, g(t + offsets)) for t in times]) / h ** alpha


def _uniform_ratio(times: np.ndarray, h: float):
    """ Returns the integer r with grid step = r * h (and h / 2 steps 2r), or None if the grid is not uniform in such steps. """
    if times.size < 2:
        return None
    steps = np.diff(times)
    step = float(steps[0])
    if step <= 0 or not np.allclose(steps, step, rtol=_STEP_RATIO_RTOL, atol=0.0):
        return None
    ratio = step / h
    rounded = int(round(ratio))
    if rounded < 1 or abs(ratio - rounded) > _STEP_RATIO_RTOL * rounded:
        return None
    return rounded


def jumarie_reference(
    f: Callable,
    fn_deriv: Optional[Callable],
    order: FracOrder,
    grid: Union[np.ndarray, list],
    h: float,
    terms: Optional[int] = None,
    tolerance: float = 1e-3,
    startup: float = 0.0,
    raise_unconverged: bool = True,
):
    """ Computes oracle values of the Jumarie derivative of order alpha on a grid.

    The fractional part gamma = alpha - n is applied by the shifted Grunwald-Letnikov sum to fn_deriv, the n-th
    integer derivative of f (f itself when n = 0). The sum is evaluated at steps h and h / 2; the returned values
    are the Richardson extrapolation 2 r(h / 2) - r(h), and the relative discrepancy between r(h) and r(h / 2) over
    times >= startup is the convergence gate.

    Uniform grids whose step is an integer multiple of h are evaluated with a single FFT convolution per step size.

    Args:
        f (Callable): The signal.
        fn_deriv (Optional[Callable]): The n-th derivative of f. Required when n > 0.
        order (FracOrder): The derivative order.
        grid (Union[np.ndarray, list]): Increasing times, all >= 0.
        h (float): The coarse oracle step, h > 0.
        terms (int, optional): Default ceil(max(grid) / h) + 64. Terms at step h; twice as many are used at h / 2.
        tolerance (float, optional): Default 1e-3. Maximum allowed relative discrepancy.
        startup (float, optional): Default 0.0. Grid times below startup are excluded from the gate.
        raise_unconverged (bool, optional): Default True. Raise NonConvergence instead of returning an unconverged curve.

    Returns:
        curve (ReferenceCurve): The oracle values and convergence data.

    Raises:
        fracdiff.fraccalc.errors.InvalidOrder: If n > 0 and fn_deriv is None.
        fracdiff.fraccalc.errors.DomainError: If the grid is empty, decreasing or has negative times.
        fracdiff.fraccalc.errors.NonConvergence: If the discrepancy exceeds tolerance and raise_unconverged is True.
    """
    if not isinstance(order, FracOrder):
        raise TypeError(order)
    h = _validate_positive(h, "h")
    tolerance = _validate_positive(tolerance, "tolerance")

    times = utils.as_float_array(grid, "grid")
    if times.size == 0:
        raise errors.DomainError("grid must not be empty")
    if np.any(~np.isfinite(times)) or np.any(times < 0.0):
        raise errors.DomainError("grid times must be finite and non-negative")
    if np.any(np.diff(times) <= 0.0):
        raise errors.DomainError("grid times must be strictly increasing")

    if order.n == 0:
        target = f if fn_deriv is None else fn_deriv
    elif fn_deriv is None:
        raise errors.InvalidOrder(f"order alpha={order.alpha} needs the derivative of order n={order.n}")
    else:
        target = fn_deriv

    if terms is None:
        terms = _default_terms(float(times[-1]), h)
    if isinstance(terms, bool) or not isinstance(terms, (int, np.integer)) or terms < 0:
        raise errors.DomainError(f"terms must be a non-negative integer, got {terms}")
    terms = int(terms)

    g = _causal_increment(target)
    ratio = _uniform_ratio(times, h)
    log.debug(f"\n\talpha: {order.alpha}\n\tgamma: {order.gamma}\n\th: {h}\n\tterms: {terms}\n\tpoints: {times.size}\n\tfft: {ratio is not None}")

    coarse = _gl_curve(g, order.gamma, times, h, terms, ratio)
    fine = _gl_curve(g, order.gamma, times, h / 2.0, 2 * terms, None if ratio is None else 2 * ratio)

    gated = times >= startup
    if np.any(gated):
        scale = max(float(np.max(np.abs(fine[gated]))), np.finfo(np.float64).tiny)
        discrepancy = float(np.max(np.abs(coarse[gated] - fine[gated]))) / scale
    else:
        discrepancy = 0.0

    curve = ReferenceCurve(
        times=times,
        values=2.0 * fine - coarse,
        h=h,
        discrepancy=discrepancy,
        tolerance=tolerance,
        startup=float(startup),
    )

    if not curve.converged:
        log.error(f"\n\talpha: {order.alpha}\n\th: {h}\n\tdiscrepancy: {discrepancy}\n\ttolerance: {tolerance}")
        if raise_unconverged:
            raise errors.NonConvergence(f"oracle discrepancy {discrepancy:.3e} exceeds tolerance {tolerance:.3e} at h={h}")
    else:
        log.debug(f"\n\talpha: {order.alpha}\n\th: {h}\n\tdiscrepancy: {discrepancy}")

    return curve


def jumarie_from_rl(rl_value: float, f0: float, alpha: float, t: float):
    """ Converts a Riemann-Liouville derivative value to the Jumarie derivative, for 0 < alpha < 1:

        rl_value - f0 * t**(-alpha) / Gamma(1 - alpha)

    Raises:
        fracdiff.fraccalc.errors.DomainError: If alpha is not in (0, 1) or t <= 0.
    """
    alpha = _validate_positive(alpha, "alpha")
    t = _validate_positive(t, "t")
    if alpha >= 1.0:
        raise errors.DomainError(f"the Riemann-Liouville to Jumarie conversion needs 0 < alpha < 1, got {alpha}")

    return float(rl_value) - float(f0) * t ** (-alpha) / specfun.gamma(1.0 - alpha)


def frac_taylor_eval(sig: FracTaylorSignal, t: Union[float, np.ndarray]):
    """ Evaluates a fractional Taylor signal at offsets t >= 0 from its anchor t0.

    Args:
        sig (FracTaylorSignal): The signal.
        t (Union[float, np.ndarray]): Offset(s) from sig.t0.

    Returns:
        value (Union[float, np.ndarray]): float for scalar t, otherwise an array.

    Raises:
        fracdiff.fraccalc.errors.DomainError: If any offset is negative.
    """
    if not isinstance(sig, FracTaylorSignal):
        raise TypeError(sig)
    was_scalar = np.ndim(t) == 0
    offsets = utils.as_float_array(t, "t")
    if np.any(offsets < 0.0):
        raise errors.DomainError(f"offsets must be non-negative, got minimum {offsets.min()}")

    alpha = sig.order.alpha
    values = np.zeros_like(offsets)
    for j, coefficient in enumerate(sig.c):
        values += coefficient * offsets ** j / math.factorial(j)
    values += sig.c_alpha * offsets ** alpha / specfun.gamma(alpha + 1.0)
    if sig.c_2an is not None:
        beta = sig.beta_2an
        values += sig.c_2an * offsets ** beta / specfun.gamma(beta + 1.0)

    if was_scalar:
        return float(values[0])
    return values
