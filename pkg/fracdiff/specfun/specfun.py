

import math
from typing import Union

import numpy as np
from scipy import special

from fracdiff import utils
from fracdiff.config.logging import log
from fracdiff.specfun import errors
from fracdiff.specfun.jacobi_params import JacobiParams

# Gamma(171.62...) is the largest value below the double precision maximum
_GAMMA_OVERFLOW_THRESHOLD = 171.6


def _validate_real(x, name: str = "x"):
    if isinstance(x, bool) or not isinstance(x, (int, float, np.integer, np.floating)):
        raise TypeError(x)
    x = float(x)
    if not math.isfinite(x):
        raise errors.DomainError(f"{name} must be finite, got {x}")
    return x


def gamma(x: float):
    """ Returns the Gamma function at a real argument.

    Args:
        x (float): The argument, not zero or a negative integer.

    Returns:
        value (float): Gamma(x).

    Raises:
        fracdiff.specfun.errors.PoleError: If x is zero or a negative integer.
        fracdiff.specfun.errors.GammaOverflowError: If x exceeds the overflow threshold.
    """
    x = _validate_real(x)

    if x <= 0 and utils.is_integer(x):
        raise errors.PoleError(f"Gamma has a pole at {x}")
    if x > _GAMMA_OVERFLOW_THRESHOLD:
        raise errors.GammaOverflowError(f"Gamma({x}) overflows, threshold is {_GAMMA_OVERFLOW_THRESHOLD}")

    value = float(special.gamma(x))
    if not math.isfinite(value):
        raise errors.GammaOverflowError(f"Gamma({x}) is not finite")

    return value


def ln_gamma(x: float):
    """ Returns the natural logarithm of Gamma(x) for x > 0.

    Args:
        x (float): The argument, x > 0.

    Returns:
        value (float): ln Gamma(x).

    Raises:
        fracdiff.specfun.errors.DomainError: If x <= 0.
    """
    x = _validate_real(x)

    if x <= 0:
        raise errors.DomainError(f"ln_gamma is defined for x > 0, got {x}")

    return float(special.gammaln(x))


def beta(a: float, b: float):
    """ Returns the beta function B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b), computed in log space.

    Args:
        a (float): First argument, a > 0.
        b (float): Second argument, b > 0.

    Returns:
        value (float): B(a, b).

    Raises:
        fracdiff.specfun.errors.DomainError: If a <= 0 or b <= 0.
    """
    a = _validate_real(a, "a")
    b = _validate_real(b, "b")

    if a <= 0 or b <= 0:
        raise errors.DomainError(f"beta is defined for positive arguments, got a={a}, b={b}")

    return float(np.exp(special.betaln(a, b)))


def gen_binomial(a: float, j: int):
    """ Returns the generalised binomial coefficient Gamma(a + 1) / (Gamma(j + 1) Gamma(a - j + 1)).

    Pole cases are resolved by their finite limits:
        - a a non-negative integer and j > a: 0.
        - a a negative integer: (-1)**j * C(j - a - 1, j).

    Args:
        a (float): The real upper argument.
        j (int): The non-negative integer lower argument.

    Returns:
        value (float): binom(a, j).
    """
    a = _validate_real(a, "a")
    if isinstance(j, bool) or not isinstance(j, (int, np.integer)):
        raise TypeError(j)
    j = int(j)
    if j < 0:
        raise errors.DomainError(f"j must be non-negative, got {j}")

    if utils.is_integer(a):
        a_int = int(a)
        if a_int >= 0:
            # math.comb returns 0 when j > a
            return float(math.comb(a_int, j))
        return float((-1) ** j * math.comb(j - a_int - 1, j))

    sign = special.gammasgn(a + 1) * special.gammasgn(a - j + 1)
    log_magnitude = special.gammaln(a + 1) - special.gammaln(j + 1) - special.gammaln(a - j + 1)

    return float(sign * np.exp(log_magnitude))


def gen_binomial_array(a: float, count: int):
    """ Returns the signed coefficients (-1)**i * binom(a, i) for i = 0 .. count - 1.

    Built with the product recurrence w_i = w_(i-1) * (i - 1 - a) / i, which is exact in the integer case
    (all coefficients beyond a vanish) and avoids Gamma ratios for large i.

    Args:
        a (float): The real upper argument.
        count (int): Number of coefficients, count >= 1.

    Returns:
        weights (np.ndarray): Array of length count.
    """
    a = _validate_real(a, "a")
    if isinstance(count, bool) or not isinstance(count, (int, np.integer)):
        raise TypeError(count)
    if count < 1:
        raise errors.DomainError(f"count must be positive, got {count}")

    i = np.arange(1, count, dtype=np.float64)
    factors = np.empty(count, dtype=np.float64)
    factors[0] = 1.0
    factors[1:] = (i - 1.0 - a) / i

    return np.cumprod(factors)


def _as_unit_interval(tau: Union[float, np.ndarray]):
    was_scalar = np.ndim(tau) == 0
    taus = utils.as_float_array(tau, "tau")

    if np.any(~np.isfinite(taus)) or np.any(taus < 0.0) or np.any(taus > 1.0):
        raise errors.DomainError(f"tau must lie in [0, 1], got range [{taus.min()}, {taus.max()}]")

    return taus, was_scalar


def jacobi_eval(p: JacobiParams, tau: Union[float, np.ndarray]):
    """ Evaluates the Jacobi polynomial of degree p.n on [0, 1] by the explicit sum

        sum_j binom(n + mu, j) * binom(n + k, n - j) * (tau - 1)**(n - j) * tau**j,  j = 0 .. n

    Args:
        p (JacobiParams): Degree and exponents.
        tau (Union[float, np.ndarray]): Evaluation point(s) in [0, 1].

    Returns:
        value (Union[float, np.ndarray]): float for scalar tau, otherwise an array shaped like tau.

    Raises:
        fracdiff.specfun.errors.DomainError: If any tau lies outside [0, 1].
    """
    if not isinstance(p, JacobiParams):
        raise TypeError(p)
    taus, was_scalar = _as_unit_interval(tau)

    values = np.zeros_like(taus)
    for j in range(p.n + 1):
        coefficient = gen_binomial(p.n + p.mu, j) * gen_binomial(p.n + p.k, p.n - j)
        values += coefficient * (taus - 1.0) ** (p.n - j) * taus ** j

    if was_scalar:
        return float(values[0])
    return values


def jacobi_weight(p: JacobiParams, tau: Union[float, np.ndarray]):
    """ Evaluates the Jacobi weight (1 - tau)**mu * tau**k.

    Endpoints are allowed when the corresponding exponent is non-negative: 0**0 is 1 and 0**positive is 0.

    Args:
        p (JacobiParams): Exponents mu and k (the degree is ignored).
        tau (Union[float, np.ndarray]): Evaluation point(s) in [0, 1].

    Returns:
        value (Union[float, np.ndarray]): float for scalar tau, otherwise an array.

    Raises:
        fracdiff.specfun.errors.DomainError: If any tau lies outside [0, 1].
        fracdiff.specfun.errors.SingularEndpointError: If tau = 1 with mu < 0, or tau = 0 with k < 0.
    """
    if not isinstance(p, JacobiParams):
        raise TypeError(p)
    taus, was_scalar = _as_unit_interval(tau)

    if p.mu < 0 and np.any(taus == 1.0):
        log.debug(f"\n\tmu: {p.mu}\n\tk: {p.k}\n\tsingular endpoint: 1")
        raise errors.SingularEndpointError(f"weight is singular at tau=1 for mu={p.mu}")
    if p.k < 0 and np.any(taus == 0.0):
        log.debug(f"\n\tmu: {p.mu}\n\tk: {p.k}\n\tsingular endpoint: 0")
        raise errors.SingularEndpointError(f"weight is singular at tau=0 for k={p.k}")

    values = (1.0 - taus) ** p.mu * taus ** p.k

    if was_scalar:
        return float(values[0])
    return values
