

import enum
from dataclasses import dataclass

import numpy as np

from fracdiff import utils
from fracdiff.estimators import errors
from fracdiff.estimators.estimator_params import EstimatorParams


class EstimatorKind(str, enum.Enum):
    MINIMAL_INTEGER = "minimal_integer"
    MINIMAL_FRACTIONAL = "minimal_fractional"
    AFFINE_FRACTIONAL = "affine_fractional"

    @classmethod
    def parse(cls, value):
        """ Accepts an EstimatorKind, its value, or the short names "integer", "minimal" and "affine". """
        if isinstance(value, cls):
            return value
        aliases = {"integer": cls.MINIMAL_INTEGER, "minimal": cls.MINIMAL_FRACTIONAL, "affine": cls.AFFINE_FRACTIONAL}
        try:
            return aliases.get(value) or cls(value)
        except ValueError:
            raise errors.InvalidParameters(f"unknown estimator kind {value!r}, expected one of {[kind.value for kind in cls]} or {list(aliases)}")


@dataclass(frozen=True, eq=False)
class EstimateSeries:
    """ Estimates anchored at the times t0s, one per admissible window. """
    t0s: np.ndarray
    values: np.ndarray
    params: EstimatorParams
    kind: EstimatorKind

    def __post_init__(self):
        t0s = utils.as_float_array(self.t0s, "t0s").copy()
        values = utils.as_float_array(self.values, "values").copy()
        if t0s.size != values.size:
            raise errors.LengthMismatch(f"t0s and values differ in length: {t0s.size} != {values.size}")
        if np.any(np.diff(t0s) <= 0.0):
            raise errors.InvalidParameters("t0s must be strictly increasing")
        t0s.setflags(write=False)
        values.setflags(write=False)
        object.__setattr__(self, "t0s", t0s)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "kind", EstimatorKind.parse(self.kind))

    def __len__(self):
        return int(self.values.size)

    def since(self, t: float):
        """ Returns the estimates anchored at t0 >= t. """
        keep = self.t0s >= t
        return EstimateSeries(t0s=self.t0s[keep], values=self.values[keep], params=self.params, kind=self.kind)
