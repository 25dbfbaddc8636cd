

import math
from typing import Callable, Optional, Sequence, Union

import numpy as np
from scipy import special

from fracdiff import utils
from fracdiff.fraccalc.frac_order import FracOrder
from fracdiff.fraccalc.frac_taylor_signal import FracTaylorSignal
from fracdiff.fraccalc.fraccalc import frac_taylor_eval
from fracdiff.signals import errors


class Expression:
    """ A named test signal x(t), evaluated on numpy arrays, with its classical derivatives. """

    def __init__(self, name: str, parameters: Optional[dict] = None):
        self.name = name
        self.parameters = parameters or {}

    def __repr__(self):
        arguments = ", ".join(f"{key}={value!r}" for key, value in self.parameters.items())
        return f"{self.name}({arguments})"

    def __call__(self, t: Union[float, np.ndarray]):
        raise NotImplementedError

    def derivative(self, order: int):
        """ Returns a callable evaluating the derivative of the given integer order (order 0 is the signal itself). """
        raise NotImplementedError

    @staticmethod
    def _validate_order(order: int):
        if isinstance(order, bool) or not isinstance(order, (int, np.integer)):
            raise TypeError(order)
        if order < 0:
            raise errors.InvalidSignal(f"derivative order must be non-negative, got {order}")
        return int(order)


class exp_sin(Expression):
    """ x(t) = exp(a t) sin(b t), the default a = 0.2, b = 5. """

    def __init__(self, a: float = 0.2, b: float = 5.0):
        self.a = float(a)
        self.b = float(b)
        super().__init__(name=self.__class__.__name__, parameters={"a": self.a, "b": self.b})

    def __call__(self, t):
        t = np.asarray(t, dtype=np.float64)
        return np.exp(self.a * t) * np.sin(self.b * t)

    def derivative(self, order: int):
        order = self._validate_order(order)
        radius = math.hypot(self.a, self.b)
        phase = math.atan2(self.b, self.a)

        def derivative(t):
            t = np.asarray(t, dtype=np.float64)
            return radius ** order * np.exp(self.a * t) * np.sin(self.b * t + order * phase)

        return derivative


class monomial(Expression):
    """ x(t) = t**p for t >= 0, p >= 0. """

    def __init__(self, p: float):
        self.p = float(p)
        if not math.isfinite(self.p) or self.p < 0:
            raise errors.InvalidSignal(f"p must be a finite non-negative real, got {p}")
        super().__init__(name=self.__class__.__name__, parameters={"p": self.p})

    def _times(self, t):
        t = np.asarray(t, dtype=np.float64)
        if not utils.is_integer(self.p) and np.any(t < 0.0):
            raise errors.InvalidSignal(f"t**{self.p} is not real for negative t")
        return t

    def __call__(self, t):
        return self._times(t) ** self.p

    def derivative(self, order: int):
        order = self._validate_order(order)
        # 1 / Gamma vanishes at the poles, so derivatives beyond an integer power are 0
        factor = special.gamma(self.p + 1.0) * special.rgamma(self.p + 1.0 - order)

        def derivative(t):
            t = self._times(t)
            if factor == 0.0:
                return np.zeros_like(t)
            if self.p < order and np.any(t == 0.0):
                raise errors.InvalidSignal(f"the derivative of order {order} of t**{self.p} is unbounded at t=0")
            return factor * t ** (self.p - order)

        return derivative


class constant(Expression):
    def __init__(self, c: float):
        self.c = float(c)
        super().__init__(name=self.__class__.__name__, parameters={"c": self.c})

    def __call__(self, t):
        return np.full_like(np.asarray(t, dtype=np.float64), self.c)

    def derivative(self, order: int):
        order = self._validate_order(order)
        if order == 0:
            return self

        def derivative(t):
            return np.zeros_like(np.asarray(t, dtype=np.float64))

        return derivative


class frac_taylor(Expression):
    """ A truncated fractional Taylor signal anchored at t0, defined for t >= t0.

    Args:
        alpha (float): The fractional order.
        c (Sequence[float]): The n + 1 integer order coefficients.
        c_alpha (float): The coefficient of t**alpha / Gamma(alpha + 1).
        c_2an (float, optional): Default None. The coefficient of t**(2 alpha - n) / Gamma(2 alpha - n + 1).
        t0 (float, optional): Default 0.0. The anchor time.
        n (int, optional): Default None. The integer part marker, ceil(alpha) - 1.
    """

    def __init__(self, alpha: float, c: Sequence[float], c_alpha: float, c_2an: Optional[float] = None, t0: float = 0.0, n: Optional[int] = None):
        if np.ndim(c) == 0:
            c = (c,)
        self.signal = FracTaylorSignal(t0=t0, order=FracOrder(alpha, n), c=tuple(c), c_alpha=c_alpha, c_2an=c_2an)
        parameters = {"alpha": self.signal.order.alpha, "c": self.signal.c, "c_alpha": self.signal.c_alpha, "t0": self.signal.t0}
        if c_2an is not None:
            parameters["c_2an"] = self.signal.c_2an
        super().__init__(name=self.__class__.__name__, parameters=parameters)

    @classmethod
    def from_signal(cls, sig: FracTaylorSignal):
        if not isinstance(sig, FracTaylorSignal):
            raise TypeError(sig)
        return cls(alpha=sig.order.alpha, c=sig.c, c_alpha=sig.c_alpha, c_2an=sig.c_2an, t0=sig.t0, n=sig.order.n)

    def _offsets(self, t):
        offsets = np.asarray(t, dtype=np.float64) - self.signal.t0
        if np.any(offsets < 0.0):
            raise errors.InvalidSignal(f"frac_taylor is defined for t >= t0 = {self.signal.t0}")
        return offsets

    def __call__(self, t):
        return np.asarray(frac_taylor_eval(self.signal, self._offsets(t)), dtype=np.float64).reshape(np.shape(t))

    def derivative(self, order: int):
        order = self._validate_order(order)
        sig = self.signal
        terms = [(coefficient, float(j)) for j, coefficient in enumerate(sig.c)]
        terms.append((sig.c_alpha, sig.order.alpha))
        if sig.c_2an is not None:
            terms.append((sig.c_2an, sig.beta_2an))

        def derivative(t):
            offsets = self._offsets(t)
            values = np.zeros_like(offsets)
            for coefficient, power in terms:
                # d^order t**power / Gamma(power + 1) = t**(power - order) / Gamma(power - order + 1)
                reciprocal = special.rgamma(power - order + 1.0)
                if reciprocal == 0.0:
                    continue
                if power < order and coefficient != 0.0 and np.any(offsets == 0.0):
                    raise errors.InvalidSignal(f"the derivative of order {order} of t**{power} is unbounded at t0={sig.t0}")
                values += coefficient * reciprocal * offsets ** (power - order)
            return values

        return derivative


def expressions():
    """ Returns the registry of test signals, keyed by name. """
    return {cls.__name__: cls for cls in Expression.__subclasses__()}


def _parse_value(key: str, value):
    if not isinstance(value, str):
        return value
    if key == "n":
        return int(value)
    items = value.replace(";", " ").split()
    if key == "c" or len(items) > 1:
        return tuple(float(item) for item in items)
    return float(value)


def create_expression(name: str, parameters: Optional[dict] = None):
    """ Instantiates a registered test signal. String parameter values are parsed, "c" of frac_taylor as a
    whitespace or semicolon separated list.

    Raises:
        fracdiff.signals.errors.UnknownExpression: If no signal is registered under name.
        fracdiff.signals.errors.InvalidSignal: If the parameters do not fit the signal.
    """
    registry = expressions()
    if name not in registry:
        raise errors.UnknownExpression(f"unknown signal {name!r}, expected one of {sorted(registry)}")

    try:
        arguments = {key: _parse_value(key, value) for key, value in (parameters or {}).items()}
        return registry[name](**arguments)
    except (TypeError, ValueError) as e:
        if isinstance(e, errors.SignalError):
            raise
        raise errors.InvalidSignal(f"invalid parameters for {name}: {parameters} ({e})") from e


def as_expression(expr: Union[str, Expression, Callable]):
    """ Accepts a registry name, an Expression, or a FracTaylorSignal. """
    if isinstance(expr, Expression):
        return expr
    if isinstance(expr, FracTaylorSignal):
        return frac_taylor.from_signal(expr)
    if isinstance(expr, str):
        return create_expression(expr)
    raise TypeError(expr)
