

from fracdiff.specfun import classes, errors
from fracdiff.specfun.jacobi_params import JacobiParams
from fracdiff.specfun.specfun import beta, gamma, gen_binomial, gen_binomial_array, jacobi_eval, jacobi_weight, ln_gamma
