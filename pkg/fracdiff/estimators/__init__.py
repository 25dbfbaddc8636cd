

from fracdiff.estimators import classes, errors
from fracdiff.estimators.estimate_series import EstimateSeries, EstimatorKind
from fracdiff.estimators.estimator_params import EstimatorParams
from fracdiff.estimators.kernel_table import KernelTable
from fracdiff.estimators.estimators import (
    affine_fractional_estimate,
    affine_lambda,
    minimal_fractional_estimate,
    minimal_fractional_kernel,
    minimal_integer_estimate,
    minimal_integer_kernel,
    monomial_response,
    quadrature_apply,
    sliding_estimate,
)
