

class EstimatorError(Exception):
    """ Base class for all estimator errors. """
    pass
