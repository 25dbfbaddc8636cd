

from fracdiff.specfun.classes import SpecfunError


class DomainError(SpecfunError, ValueError):
    """ An argument lies outside the domain of the function. """
    pass


class PoleError(DomainError):
    """ The function has a pole at the argument (zero or a negative integer for Gamma). """
    pass


class GammaOverflowError(SpecfunError, OverflowError):
    """ Gamma(x) is not representable as a finite float. """
    pass


class SingularEndpointError(DomainError):
    """ A Jacobi weight was evaluated at an endpoint where its exponent is negative. """
    pass
