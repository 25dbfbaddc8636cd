

import math
from dataclasses import dataclass
from typing import Optional, Tuple

from fracdiff.fraccalc import errors
from fracdiff.fraccalc.frac_order import FracOrder


@dataclass(frozen=True)
class FracTaylorSignal:
    """ An exact truncated fractional Taylor signal anchored at t0:

        x(t0 + t) = sum_j c[j] t**j / j!  +  c_alpha t**alpha / Gamma(alpha + 1)  [ + c_2an t**(2 alpha - n) / Gamma(2 alpha - n + 1) ]

    Args:
        t0 (float): The anchor time in seconds.
        order (FracOrder): The derivative order alpha and its integer part n.
        c (Tuple[float, ...]): The n + 1 integer order derivatives x^(j)(t0).
        c_alpha (float): The derivative value x^(alpha)(t0) that estimators should recover.
        c_2an (Optional[float], optional): Default None. The coefficient x^(2 alpha - n)(t0) of the next term.
    """
    t0: float
    order: FracOrder
    c: Tuple[float, ...]
    c_alpha: float
    c_2an: Optional[float] = None

    def __post_init__(self):
        if not isinstance(self.order, FracOrder):
            raise TypeError(self.order)

        c = tuple(float(value) for value in self.c)
        if len(c) != self.order.n + 1:
            raise errors.DomainError(f"c must hold n + 1 = {self.order.n + 1} coefficients, got {len(c)}")
        if not all(math.isfinite(value) for value in c + (self.t0, self.c_alpha)):
            raise errors.DomainError("t0, c and c_alpha must be finite")

        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "c_alpha", float(self.c_alpha))
        if self.c_2an is not None:
            object.__setattr__(self, "c_2an", float(self.c_2an))

    @property
    def beta_2an(self):
        """ The exponent 2 alpha - n of the second fractional term. """
        return 2.0 * self.order.alpha - self.order.n
