

from fracdiff.estimators.classes import EstimatorError


class InvalidParameters(EstimatorError, ValueError):
    pass


class NearIntegerOrder(EstimatorError, ValueError):
    """ alpha - n is below the affine guard, where the affine coefficient diverges. """
    pass


class WindowOutOfRange(EstimatorError, ValueError):
    pass


class GridMisalignment(EstimatorError, ValueError):
    """ A window anchor or length does not fall on the signal's sampling grid. """
    pass


class SignalTooShort(EstimatorError, ValueError):
    pass


class LengthMismatch(EstimatorError, ValueError):
    pass
