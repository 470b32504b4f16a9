"""
Limit values at x = 1, 3/2 and 2
================================

Values just left of x = 1 evolve by a fixed 2x2 matrix A, so their limit
comes from the eigenvector of A for the eigenvalue 1.
"""

import math

import numpy as np

from cascadelab import cascade, filters, jumps

###############################################################################
# Compare powers of A with the closed-form limit.
f = filters.theta_family(0.7)
A = jumps.local_matrix(f)
print(np.linalg.matrix_power(A, 200) @ [0.0, 1.0], jumps.local_limit(f, (0.0, 1.0)))

###############################################################################
# The same numbers sit in the cascade itself, on the two cells left of x = 1.
psi = cascade.cascade_from_haar(f, 14)[-1]
print(psi(1 - 1.5 * psi.h), psi(1 - 0.5 * psi.h))

###############################################################################
# The full table for theta = k pi / 20.
print(jumps.peak_table_csv(jumps.peak_table()))
print(jumps.peak_row(math.pi / 2))
