

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True, eq=False)
class ReferenceCurve:
    """ Oracle values of a Jumarie derivative on a time grid, with the h versus h / 2 convergence gate.

    Args:
        times (np.ndarray): The grid times.
        values (np.ndarray): Richardson extrapolated derivative values 2 r(h / 2) - r(h).
        h (float): The coarser oracle step.
        discrepancy (float): max |r(h) - r(h / 2)| / max |r(h / 2)| over times >= startup.
        tolerance (float): The gate applied to discrepancy.
        startup (float): Times below startup are excluded from the gate (but still reported in values).
    """
    times: np.ndarray
    values: np.ndarray
    h: float
    discrepancy: float
    tolerance: float
    startup: float

    @property
    def converged(self):
        return bool(self.discrepancy <= self.tolerance)

    @property
    def excluded_count(self):
        """ Number of grid points before startup, excluded from the convergence gate. """
        return int(np.count_nonzero(self.times < self.startup))
