

class HarnessError(Exception):
    """ Base class for all experiment harness errors. """
    pass
