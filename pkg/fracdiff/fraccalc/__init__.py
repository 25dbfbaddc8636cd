

from fracdiff.fraccalc import classes, errors
from fracdiff.fraccalc.frac_order import FracOrder
from fracdiff.fraccalc.frac_taylor_signal import FracTaylorSignal
from fracdiff.fraccalc.reference_curve import ReferenceCurve
from fracdiff.fraccalc.fraccalc import frac_taylor_eval, gl_fractional_difference, jumarie_from_rl, jumarie_reference, rl_monomial
