"""Generalized Stieltjes transforms of measures on [0, inf].

Evaluation in the mu- and rho-representations, fractional integrals of
measures with their inversions, exact-order estimation and membership
criteria.  ``stieltjes._backend.BACKEND`` tells which kernels are in use.
"""

from ._backend import BACKEND
from .builtins import BUILTINS, get_builtin
from .criteria import (CriterionReport, PoleSum, krein_test, power_map_root, power_map_stretch,
                       product_membership_check, sector_test, sokal_test)
from .fractional import (DistributionFunction, FractionalOrder, frac_value,
                         function_transition_down, function_transition_up, kober_right,
                         kober_right_invert, lah_expand, lah_number, mu_infinity_limit,
                         order_raise_mu, order_raise_rho, rl_left, rl_left_invert,
                         rl_left_invert_closed)
from .measure import (INF, DensityPiece, Measure, PowerTerm, constant_piece, distribution,
                      generic_piece, involution, measures_equal, membership_integral, moments,
                      power_piece)
from .order import (OrderInterval, OrderReport, compact_support_shortcut, estimate_exact_order,
                    monotonicity_test, order_report, phi, ratio_limit_test)
from .quadrature import quad
from .specfun import beta_fn, gamma_fn, gauss_2f1, gen_inc_beta, inc_beta
from .transform import (MU, RHO, MeasureDerivatives, StieltjesFunction, eval_transform,
                        laplace_factorization_eval, modulus_bound, series_coefficients)

__version__ = "0.1.0"
