"""
cascadelab
==========

Transfer-operator analysis of finite wavelet low-pass filters.

Submodules
----------
filters
    Filter taps, the 4-tap ``theta`` family, QMF validation.
laurent
    Laurent (trigonometric) polynomials.
transfer
    The Ruelle transfer operator, its matrix on ``P[-N, N]`` and its spectrum.
cascade
    Exact cascade iteration on dyadic step functions, relative polynomials.
jumps
    One-sided limits at dyadic points and the local 2x2 iteration.
cli
    The ``cascadelab`` command line.
"""

from .filters import WaveletFilter, haar, m0_eval, qmf_identity_residual, theta_family, validate_qmf
from .laurent import LaurentPolynomial
from .transfer import (
    RuelleMatrix,
    SpectralReport,
    SpectrumError,
    adjoint_apply,
    pn_function,
    rho2_estimate,
    ruelle_apply,
    ruelle_matrix,
    spectrum,
    theta_eigenvalues_closed_form,
)
from .cascade import (
    DyadicStepFunction,
    cascade_run,
    cascade_step,
    convolve_poly,
    haar_initial,
    l2_inner,
    relative_polynomial,
)
from .jumps import OneSidedTrace, local_limit, local_matrix, peak_table, trace_init, trace_step

__version__ = "0.1.0"
