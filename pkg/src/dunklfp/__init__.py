"""Fokker-Planck equations with reflection-augmented (Dunkl-type) derivatives.

Layers:

* :mod:`dunklfp.core` -- parameters, superpotentials, parity, grids
* :mod:`dunklfp.opalg` -- exact operator calculus on Laurent polynomials
* :mod:`dunklfp.specfun` -- Bessel/Laguerre/gamma and weighted quadrature
* :mod:`dunklfp.analytic` -- closed-form eigensystems, tables, figure data
* :mod:`dunklfp.numeric` -- sector discretization, spectra, time evolution
* :mod:`dunklfp.verification` -- the property suites behind ``dunkl-fp verify``
"""

from .core import (DunklFPError, RangeError, KindError, DomainError, PoleError,
                   FamilyError, ParityMismatch, AlphaError, NonConvergence,
                   ConvergenceError, SpectrumError, SolveError, SignalError,
                   SigmaBoundWarning,
                   Kind, Parity, Family, DunklParams, Superpotential,
                   SuperpotentialValues, HalfLineGrid, ParityFunction,
                   make_params, superpotential_eval)
from .opalg import (LaurentPolynomial, Report, apply_reflection, apply_derivative,
                    apply_square_closed_form, apply_tp_rewrite, apply_fp_operator,
                    verify_anticommutation, verify_square_closed_form,
                    verify_tp_rewrite, verify_specialization, laurent_max_diff)
from .specfun import (gamma_fn, bessel_j, bessel_j_signed, laguerre,
                      laguerre_coefficients, QuadratureRule, half_line_rule,
                      interval_rule, weighted_inner_product)
from .analytic import (BesselDescriptor, LaguerreDescriptor, centrifugal_solution,
                       centrifugal_admissible_mu, centrifugal_admissible_sigma,
                       oscillator_solution, oscillator_gamma_for_parity,
                       eval_descriptor, normalized, describe, format_number,
                       generate_table1, generate_table2, figure_descriptors,
                       bessel_series_laurent, descriptor_series,
                       Table1Row, Table2Row, SymbolicLaguerreCoefficient)
from .numeric import (Scheme, SectorOperator, Trajectory, build_sector_operator,
                      sector_coefficients, residual_norm, weighted_rms,
                      grid_inner_product, lowest_eigenpairs, evolve, decay_rate)

__version__ = "0.1.0"
