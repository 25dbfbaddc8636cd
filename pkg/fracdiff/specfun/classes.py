

class SpecfunError(Exception):
    """ Base class for all special function errors. """
    pass
