

import csv
import math
import os
from typing import Optional, Union

import numpy as np

from fracdiff import utils
from fracdiff.config.logging import log
from fracdiff.estimators.estimate_series import EstimateSeries
from fracdiff.fraccalc.reference_curve import ReferenceCurve
from fracdiff.harness import errors
from fracdiff.signals.sampled_signal import SampledSignal

HEADER = ["t", "value"]
# Relative tolerance of the uniform-grid check on a read time column, in steps
_GRID_TOLERANCE = 1e-6


def _columns(series: Union[SampledSignal, EstimateSeries, ReferenceCurve]):
    if isinstance(series, SampledSignal):
        return series.times, series.values
    if isinstance(series, EstimateSeries):
        return series.t0s, series.values
    if isinstance(series, ReferenceCurve):
        return series.times, series.values
    raise TypeError(series)


def csv_write(path: str, series: Union[SampledSignal, EstimateSeries, ReferenceCurve]):
    """ Writes a two column CSV file: header "t,value", then one sample per line with LF line endings.

    Numbers are written with Python's repr, the shortest decimal string that reads back to the same double.

    Args:
        path (str): The output file path. Parent directories are created.
        series (Union[SampledSignal, EstimateSeries, ReferenceCurve]): The samples to write.

    Returns:
        path (str): The absolute path written.
    """
    times, values = _columns(series)
    path = os.path.abspath(path)
    os.makedirs(os.path.dirname(path), exist_ok=True)

    with open(path, "w", encoding="utf-8", newline="") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerow(HEADER)
        writer.writerows((repr(float(t)), repr(float(value))) for t, value in zip(times, values))

    log.debug(f"\n\tpath: {path}\n\trows: {len(values)}")

    return path


def csv_read(path: str, dt: Optional[float] = None):
    """ Reads a CSV file written by csv_write into a SampledSignal.

    The time column is kept as stored and must be strictly increasing. The step is its mean spacing; a column off
    that uniform grid still reads, into a signal whose uniform property is False. A single row signal has no
    inferable step, so dt is used (1.0 with a warning when not given).

    Args:
        path (str): The CSV file path.
        dt (float, optional): Default None. The step of a single row file.

    Returns:
        signal (SampledSignal): The samples.

    Raises:
        fracdiff.harness.errors.CsvFormatError: A row is malformed, reported with its row number.
        fracdiff.harness.errors.NonMonotoneTime: The time column is not strictly increasing.
        fracdiff.harness.errors.EmptySignal: The file holds no samples.
    """
    times = []
    values = []
    with open(path, "r", encoding="utf-8", newline="") as f:
        reader = csv.reader(f)
        for row_number, row in enumerate(reader, start=1):
            if row_number == 1:
                if [cell.strip() for cell in row] != HEADER:
                    raise errors.CsvFormatError(f"expected header {','.join(HEADER)}, got {','.join(row)}", row=row_number)
                continue
            if len(row) != 2:
                raise errors.CsvFormatError(f"expected 2 columns, got {len(row)}", row=row_number)
            try:
                t, value = float(row[0]), float(row[1])
            except ValueError as e:
                raise errors.CsvFormatError(f"not a number: {','.join(row)}", row=row_number) from e
            if not (math.isfinite(t) and math.isfinite(value)):
                raise errors.CsvFormatError(f"not finite: {','.join(row)}", row=row_number)
            if times and t <= times[-1]:
                raise errors.NonMonotoneTime(f"time {t} does not exceed the previous time {times[-1]}", row=row_number)
            times.append(t)
            values.append(value)

    if not times:
        raise errors.EmptySignal(f"{path} holds no samples")

    t_array = utils.as_float_array(times, "t")
    if t_array.size == 1:
        if dt is None:
            log.warning(f"\n\tpath: {path}\n\tsingle sample, step defaults to 1.0")
            dt = 1.0
    else:
        dt = (t_array[-1] - t_array[0]) / (t_array.size - 1)
        deviation = np.abs(t_array - (t_array[0] + np.arange(t_array.size) * dt)) / dt
        worst = int(np.argmax(deviation))
        if deviation[worst] > _GRID_TOLERANCE:
            log.debug(f"\n\tpath: {path}\n\tnon-uniform time column\n\tworst row: {worst + 2}\n\tdeviation: {deviation[worst]} steps")

    return SampledSignal(t_start=t_array[0], dt=dt, values=values, sample_times=t_array)
