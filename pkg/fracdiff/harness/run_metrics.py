

from dataclasses import dataclass

from lxml import etree


@dataclass(frozen=True)
class RunMetrics:
    """ Error metrics of an estimate curve against a reference curve.

    Args:
        rmse_raw (float): RMSE with no shift.
        lag_samples (int): The RMSE minimising shift s >= 0, in samples.
        rmse_aligned (float): RMSE at that shift.
        max_abs_err_aligned (float): Maximum absolute error at that shift.
        direction (str): "lead" when the estimate at t is compared with the reference at t + s (forward windows),
            "lag" when compared with the reference at t - s (backward windows).
        max_shift (int): The largest shift searched.
        count (int): Number of compared points.
    """
    rmse_raw: float
    lag_samples: int
    rmse_aligned: float
    max_abs_err_aligned: float
    direction: str
    max_shift: int
    count: int

    @property
    def ok(self):
        """ False when the shift is implausibly large (a quarter of the compared points or more). """
        return self.lag_samples < self.count / 4

    def to_element(self):
        element = etree.Element("metrics")
        for name in ("rmse_raw", "lag_samples", "rmse_aligned", "max_abs_err_aligned", "direction", "max_shift", "count", "ok"):
            child = etree.SubElement(element, name)
            value = getattr(self, name)
            child.text = repr(float(value)) if isinstance(value, float) else str(value).lower() if isinstance(value, bool) else str(value)
        return element
