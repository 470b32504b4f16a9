"""
Transfer operator spectrum across the family
============================================

The transfer operator restricted to Laurent polynomials with exponents in
[-N, N] is a 7x7 matrix for four taps. Its spectrum decides whether the
cascade converges in L^2.
"""

import math

import numpy as np

from cascadelab import filters, transfer

###############################################################################
# The matrix has the slant-Toeplitz pattern: each column is the power
# spectrum of the filter shifted by two.
R = transfer.ruelle_matrix(filters.theta_family(math.pi / 4))
np.set_printoptions(precision=4, suppress=True)
print(R.entries)

###############################################################################
# Numerical eigenvalues agree with the closed form
# {1, b, b, 1/2, -2b, (1 +- sqrt(1 + 16 b)) / 4}.
for theta in np.linspace(-math.pi / 2, math.pi / 2, 9):
    rep = transfer.spectrum(transfer.ruelle_matrix(filters.theta_family(theta)))
    err = transfer.match_eigenvalues(rep.eigenvalues, transfer.theta_eigenvalues_closed_form(theta))
    print(f"theta/pi = {theta / math.pi:+.3f}  condition E = {rep.condition_e!s:5}  gap = {rep.gap:.4f}  err = {err:.1e}")

###############################################################################
# At theta = pi/2 the eigenvalue 1 is double and -1 joins it on the circle.
rep = transfer.spectrum(transfer.ruelle_matrix(filters.theta_family(math.pi / 2)))
for c in rep.clusters:
    print(f"  {c.value.real:+.4f}  x{c.multiplicity}")
