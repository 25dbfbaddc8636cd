

from fracdiff.signals.classes import SignalError


class InvalidSignal(SignalError, ValueError):
    pass


class InvalidNoiseSpec(SignalError, ValueError):
    pass


class UnknownExpression(SignalError, KeyError):
    """ No test signal is registered under the requested name. """
    pass


class DegenerateSignal(SignalError, ValueError):
    """ The clean signal has zero energy, so no noise level reaches a target SNR. """
    pass


class LengthMismatch(SignalError, ValueError):
    pass


class ZeroNoiseEnergy(SignalError, ValueError):
    pass
