

from fracdiff.fraccalc.classes import FraccalcError


class InvalidOrder(FraccalcError, ValueError):
    """ The derivative order alpha and its integer part n are inconsistent (n < alpha <= n + 1 is required). """
    pass


class DomainError(FraccalcError, ValueError):
    """ An argument lies outside the domain of the operation. """
    pass


class NonConvergence(FraccalcError):
    """ The Grunwald-Letnikov oracle did not agree with itself between steps h and h / 2. """
    pass
