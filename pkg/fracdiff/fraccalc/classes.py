

class FraccalcError(Exception):
    """ Base class for all fractional calculus errors. """
    pass
