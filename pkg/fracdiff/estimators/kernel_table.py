

from dataclasses import dataclass, field

import numpy as np

from fracdiff.estimators import errors

RULES = ("trapezoid", "midpoint")


@dataclass(frozen=True, eq=False)
class KernelTable:
    """ Precomputed quadrature of an estimator kernel on the m + 1 nodes tau_i = i / m of the unit window.

    An estimate is scale * sum_i qweights[i] * kvals[i] * y(t0 + T * taus[i]). The arrays are read-only,
    so a table may be shared between threads.

    Args:
        taus (np.ndarray): The nodes i / m.
        qweights (np.ndarray): Composite trapezoid weights, summing to 1.
        kvals (np.ndarray): Kernel values at the nodes. For the midpoint rule these are averages of the kernel
            at the adjacent cell midpoints, which turns the trapezoid sum into a midpoint sum over
            linearly interpolated samples.
        scale (float): The constant prefactor of the estimator.
        rule (str, optional): Default "trapezoid". "trapezoid" or "midpoint".
    """
    taus: np.ndarray
    qweights: np.ndarray
    kvals: np.ndarray
    scale: float
    rule: str = "trapezoid"
    coefficients: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        arrays = []
        for name in ("taus", "qweights", "kvals"):
            array = np.array(getattr(self, name), dtype=np.float64, copy=True)
            if array.ndim != 1:
                raise errors.LengthMismatch(f"{name} must be one dimensional")
            array.setflags(write=False)
            object.__setattr__(self, name, array)
            arrays.append(array)

        if len({array.size for array in arrays}) != 1 or arrays[0].size < 2:
            raise errors.LengthMismatch(f"taus, qweights and kvals must share a length of at least 2, got {[a.size for a in arrays]}")
        if not np.all(np.isfinite(self.kvals)):
            raise errors.InvalidParameters("kernel values must be finite at every node")
        if not np.isclose(np.sum(self.qweights), 1.0, rtol=0.0, atol=1e-12):
            raise errors.InvalidParameters(f"quadrature weights must sum to 1, got {np.sum(self.qweights)}")
        if not np.isfinite(self.scale):
            raise errors.InvalidParameters(f"scale must be finite, got {self.scale}")
        if self.rule not in RULES:
            raise errors.InvalidParameters(f"rule must be one of {RULES}, got {self.rule}")

        coefficients = self.qweights * self.kvals
        coefficients.setflags(write=False)
        object.__setattr__(self, "scale", float(self.scale))
        object.__setattr__(self, "coefficients", coefficients)

    @property
    def m(self):
        return self.taus.size - 1
