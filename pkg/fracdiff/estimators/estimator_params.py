

import dataclasses
import math
from dataclasses import dataclass

import numpy as np

from fracdiff import utils
from fracdiff.estimators import errors
from fracdiff.fraccalc.frac_order import FracOrder

WINDOWS = ("forward", "backward")


def _validate_real(value, name: str):
    if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)):
        raise TypeError(value)
    value = float(value)
    if not math.isfinite(value):
        raise errors.InvalidParameters(f"{name} must be finite, got {value}")
    return value


@dataclass(frozen=True)
class EstimatorParams:
    """ Parameters of a Jacobi sliding window estimator.

    Args:
        order (FracOrder): The derivative order alpha and its integer part n.
        k (float): Exponent of tau in the weight, k > -1.
        mu (float): Exponent of 1 - tau in the weight, mu > -1.
        T (float): Window length in seconds, T > 0.
        m (int): Quadrature intervals per window; the window holds m + 1 samples.
        window (str, optional): Default "forward". "forward" uses [t0, t0 + T], "backward" uses [t0 - T, t0].

    Raises:
        fracdiff.estimators.errors.InvalidParameters: If any parameter is out of its domain.
    """
    order: FracOrder
    k: float
    mu: float
    T: float
    m: int
    window: str = "forward"

    def __post_init__(self):
        if not isinstance(self.order, FracOrder):
            raise TypeError(self.order)
        k = _validate_real(self.k, "k")
        mu = _validate_real(self.mu, "mu")
        T = _validate_real(self.T, "T")
        if k <= -1 or mu <= -1:
            raise errors.InvalidParameters(f"k and mu must exceed -1, got k={k}, mu={mu}")
        if T <= 0:
            raise errors.InvalidParameters(f"T must be positive, got {T}")
        if isinstance(self.m, bool) or not isinstance(self.m, (int, np.integer, float, np.floating)) or not utils.is_integer(self.m):
            raise TypeError(self.m)
        if int(self.m) < 1:
            raise errors.InvalidParameters(f"m must be a positive integer, got {self.m}")
        if self.window not in WINDOWS:
            raise errors.InvalidParameters(f"window must be one of {WINDOWS}, got {self.window}")

        object.__setattr__(self, "k", k)
        object.__setattr__(self, "mu", mu)
        object.__setattr__(self, "T", T)
        object.__setattr__(self, "m", int(self.m))

    @property
    def alpha(self):
        return self.order.alpha

    @property
    def n(self):
        return self.order.n

    @property
    def dt(self):
        """ The sampling step T / m the parameters are bound to. """
        return self.T / self.m

    def replace(self, **changes):
        return dataclasses.replace(self, **changes)

    @classmethod
    def for_signal_step(cls, order: FracOrder, k: float, mu: float, T: float, dt: float, window: str = "forward"):
        """ Builds parameters with m = T / dt, which must be an integer up to rounding.

        Raises:
            fracdiff.estimators.errors.GridMisalignment: If T is not an integer multiple of dt.
        """
        ratio = float(T) / float(dt)
        m = int(round(ratio))
        if m < 1 or not math.isclose(m * float(dt), float(T), rel_tol=1e-9):
            raise errors.GridMisalignment(f"T={T} is not an integer multiple of dt={dt}")

        return cls(order=order, k=k, mu=mu, T=T, m=m, window=window)
