import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from fracdiff import utils
from fracdiff.signals import errors

# Largest distance, in steps, of a stored sample time from t_start + i * dt on a uniform signal
_UNIFORM_TOLERANCE = 1e-6


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """ Sampled values, the sample i taken at t_start + i * dt.

    Times are computed as t_start + i * dt (never by repeated addition) unless sample_times is given, as for a
    signal read back from a file, in which case the stored times are returned as they are. The arrays are read-only.

    Args:
        t_start (float): Time of the first sample in seconds.
        dt (float): Sampling step in seconds, dt > 0.
        values (np.ndarray): The samples, at least one.
        sample_times (np.ndarray, optional): Default None. Stored sample times, strictly increasing from t_start.

    Raises:
        fracdiff.signals.errors.InvalidSignal: If dt <= 0, the values are empty, or anything is not finite.
        fracdiff.signals.errors.LengthMismatch: If sample_times and values differ in length.
    """
    t_start: float
    dt: float
    values: np.ndarray
    sample_times: Optional[np.ndarray] = None

    def __post_init__(self):
        for name in ("t_start", "dt"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, (int, float, np.integer, np.floating)):
                raise TypeError(value)
            if not math.isfinite(value):
                raise errors.InvalidSignal(f"{name} must be finite, got {value}")
        if self.dt <= 0:
            raise errors.InvalidSignal(f"dt must be positive, got {self.dt}")

        values = np.array(utils.as_float_array(self.values, "values"), dtype=np.float64, copy=True)
        if values.size == 0:
            raise errors.InvalidSignal("values must not be empty")
        if np.any(~np.isfinite(values)):
            raise errors.InvalidSignal("values must be finite")
        values.setflags(write=False)

        object.__setattr__(self, "t_start", float(self.t_start))
        object.__setattr__(self, "dt", float(self.dt))
        object.__setattr__(self, "values", values)

        if self.sample_times is not None:
            sample_times = np.array(utils.as_float_array(self.sample_times, "sample_times"), dtype=np.float64, copy=True)
            if sample_times.size != values.size:
                raise errors.LengthMismatch(f"sample_times and values differ in length: {sample_times.size} != {values.size}")
            if np.any(~np.isfinite(sample_times)) or np.any(np.diff(sample_times) <= 0.0):
                raise errors.InvalidSignal("sample_times must be finite and strictly increasing")
            if sample_times[0] != self.t_start:
                raise errors.InvalidSignal(f"the first sample time {sample_times[0]} differs from t_start={self.t_start}")
            sample_times.setflags(write=False)
            object.__setattr__(self, "sample_times", sample_times)

    def __len__(self):
        return int(self.values.size)

    @property
    def count(self):
        return len(self)

    @property
    def times(self):
        if self.sample_times is not None:
            return self.sample_times
        return self.t_start + np.arange(self.count, dtype=np.float64) * self.dt

    @property
    def uniform(self):
        """ False when stored sample times stray from t_start + i * dt by more than 1e-6 steps. """
        if self.sample_times is None:
            return True
        grid = self.t_start + np.arange(self.count, dtype=np.float64) * self.dt
        return bool(np.all(np.abs(self.sample_times - grid) <= _UNIFORM_TOLERANCE * self.dt))

    @property
    def t_end(self):
        """ Time of the last sample. """
        return self.time_at(self.count - 1)

    def time_at(self, index: int):
        # Past the last sample the grid formula applies
        if self.sample_times is not None and 0 <= index < self.count:
            return float(self.sample_times[index])
        return self.t_start + index * self.dt

    def with_values(self, values: np.ndarray):
        """ Returns a signal on the same grid holding other values. """
        return SampledSignal(t_start=self.t_start, dt=self.dt, values=values, sample_times=self.sample_times)
