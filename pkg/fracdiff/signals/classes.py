

class SignalError(Exception):
    """ Base class for all signal sampling and noise errors. """
    pass
