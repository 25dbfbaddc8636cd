

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from fracdiff import utils
from fracdiff.fraccalc import errors


@dataclass(frozen=True)
class FracOrder:
    """ A fractional derivative order alpha > 0 with integer part marker n, n < alpha <= n + 1.

    n defaults to ceil(alpha) - 1, so alpha = n + 1 exactly when alpha is a positive integer.

    Args:
        alpha (float): The derivative order, alpha > 0.
        n (int, optional): Default None. If given it must equal ceil(alpha) - 1.

    Raises:
        fracdiff.fraccalc.errors.InvalidOrder: If alpha <= 0 or n is inconsistent with alpha.
    """
    alpha: float
    n: Optional[int] = None

    def __post_init__(self):
        if isinstance(self.alpha, bool) or not isinstance(self.alpha, (int, float, np.integer, np.floating)):
            raise TypeError(self.alpha)
        alpha = float(self.alpha)
        if not math.isfinite(alpha) or alpha <= 0:
            raise errors.InvalidOrder(f"alpha must be a finite positive real, got {self.alpha}")

        expected = math.ceil(alpha) - 1
        if self.n is None:
            n = expected
        else:
            if isinstance(self.n, bool) or not utils.is_integer(self.n) or int(self.n) != expected:
                raise errors.InvalidOrder(f"n must satisfy n < alpha <= n + 1, got alpha={alpha}, n={self.n}")
            n = int(self.n)

        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "n", n)

    @property
    def gamma(self):
        """ The fractional step alpha - n, in (0, 1]. """
        return self.alpha - self.n

    @property
    def is_integer(self):
        """ True when alpha is the positive integer n + 1. """
        return self.alpha == self.n + 1
