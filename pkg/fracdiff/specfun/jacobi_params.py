

from dataclasses import dataclass

import numpy as np

from fracdiff import utils
from fracdiff.specfun import errors


@dataclass(frozen=True)
class JacobiParams:
    """ Degree and exponents of a Jacobi polynomial on [0, 1] with weight (1 - tau)**mu * tau**k.

    Args:
        n (int): The polynomial degree, n >= 0.
        mu (float): Exponent of (1 - tau), mu > -1.
        k (float): Exponent of tau, k > -1.

    Raises:
        fracdiff.specfun.errors.DomainError: If n < 0, mu <= -1 or k <= -1.
    """
    n: int
    mu: float
    k: float

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, float, np.integer, np.floating)) or not utils.is_integer(self.n):
            raise TypeError(self.n)
        if self.n < 0:
            raise errors.DomainError(f"n must be non-negative, got {self.n}")
        if not self.mu > -1:
            raise errors.DomainError(f"mu must be > -1, got {self.mu}")
        if not self.k > -1:
            raise errors.DomainError(f"k must be > -1, got {self.k}")

        # Normalise integral floats such as 2.0 to int
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "mu", float(self.mu))
        object.__setattr__(self, "k", float(self.k))
