"""latlap: fractional, zero-order and logarithmic powers of the discrete
Laplacian on the integer lattice Z^N.

The library provides

* closed-form Gamma-function kernels on Z (both signs of the order),
* quadrature kernels on Z^N through the semidiscrete heat kernel,
* the operators themselves acting on finitely supported grid functions,
* Fourier-multiplier application on the torus as an independent oracle,
* and a verification harness for the identities, bounds and convergence
  claims that tie all of the above together: the derivative of the
  fractional power at order zero is the (exotic) discrete Riesz potential,
  up to an explicit constant multiple of the identity.
"""

from .grid import (GridFunction, add, delta, grid_from_json, grid_to_json,
                   l1_norm, linf_norm, load_grid, save_grid, scale, subtract,
                   weighted_norm)
from .heat import conservation_defect, heat_kernel, heat_semigroup_apply
from .kernel1d import (diagonal_weight_1d, kernel_1d, kernel_sum_1d,
                       normalization_c, riesz_zero_kernel, tail_sum_closed_form)
from .kernelnd import (DEFAULT_QUAD, KernelTable, QuadratureConfig,
                       QuadratureError, build_kernel_table, corrector_rho,
                       diagonal_weight_nd, kernel_nd, kernel_sum_nd,
                       zero_order_kernel)
from .operators import (OperatorSpec, WindowError, apply_operator,
                        difference_quotient, discrete_laplacian,
                        exotic_riesz_potential, fractional_laplacian,
                        log_laplacian, riesz_potential)
from .special import (EULER_GAMMA, bessel_sum_radius, digamma, euler_gamma,
                      gamma_ratio, log_gamma, scaled_bessel_i)
from .spectral import (ResolutionError, SymbolSpec, doubling_estimate,
                       multiplier_apply, multiplier_apply_function,
                       symbol_eval, torus_transform)
from .verify import (ConvergenceReport, SuiteReport, run_derivative_check,
                     run_identity_suite, run_spectral_check)

__version__ = "0.1.0"
