

from typing import Optional

from fracdiff.estimators.errors import NearIntegerOrder
from fracdiff.fraccalc.errors import NonConvergence
from fracdiff.harness.classes import HarnessError
from fracdiff.specfun.errors import GammaOverflowError, PoleError


class ConfigError(HarnessError, ValueError):
    """ The experiment configuration is invalid. Carries the offending field and its source line when known. """

    def __init__(self, message: str, field: Optional[str] = None, line: Optional[int] = None):
        self.message = message
        self.field = field
        self.line = line
        super().__init__(str(self))

    def __str__(self):
        location = ""
        if self.field is not None:
            location += f"field '{self.field}'"
        if self.line is not None:
            location += f"{' ' if location else ''}(line {self.line})"
        return f"{location}: {self.message}" if location else self.message


class ParameterNotFound(ConfigError):
    """ The configuration parameter could not be found. """
    pass


class SectionNotFound(ConfigError):
    """ The configuration section could not be found. """
    pass


class RestrictedValue(ConfigError):
    """ The configuration parameter has an unexpected value. """
    pass


class CsvFormatError(HarnessError, ValueError):
    """ A CSV row is malformed. Carries the 1-based row number, the header being row 1. """

    def __init__(self, message: str, row: Optional[int] = None):
        self.row = row
        super().__init__(f"row {row}: {message}" if row is not None else message)


class EmptySignal(HarnessError, ValueError):
    pass


class NonMonotoneTime(CsvFormatError):
    pass


class SpanMismatch(HarnessError, ValueError):
    """ The reference does not cover the estimate's time span at the same step. """
    pass


class FailedRun(HarnessError):
    """ One or more experiment runs failed. """
    pass


# Exceptions reported with exit code 2; every other package error exits with 1
NUMERICAL_FAILURES = (NonConvergence, NearIntegerOrder, PoleError, GammaOverflowError, FailedRun)


def exit_code(exception: Optional[BaseException]):
    """ Maps an exception to a CLI exit code: 0 for None, 2 for numerical failures, 1 otherwise. """
    if exception is None:
        return 0
    if isinstance(exception, NUMERICAL_FAILURES):
        return 2
    return 1
